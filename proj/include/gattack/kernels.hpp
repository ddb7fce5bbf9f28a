#pragma once

#include "gattack/graph.hpp"
#include "gattack/matrix.hpp"

// Hot inner loops, each with an OpenMP-parallel default and a serial
// reference twin (_serial). Every output element is produced by exactly one
// thread with a fixed summation order, so the parallel results are bitwise
// identical to the serial ones for any thread count.
namespace gattack::kernels {

// C = A * B. A is n x k, B is k x m, C is n x m. C must not alias A or B.
void matmul(const double* A, const double* B, double* C, int n, int k, int m);
void matmul_serial(const double* A, const double* B, double* C, int n, int k, int m);

// C = A^T * B. A is n x k, B is n x m, C is k x m.
void matmul_tn(const double* A, const double* B, double* C, int n, int k, int m);

// C = A * B^T. A is n x k, B is m x k, C is n x m.
void matmul_nt(const double* A, const double* B, double* C, int n, int k, int m);

// One random-walk step out[j] = sum_{i in N_j} in[i] / d_i where N_j is the
// self-inclusive neighborhood. Equals the row-vector product (in * M) for the
// self-loop transition matrix M of g. inv_deg[i] must be 1.0 / d_i.
void walk_step(const Graph& g, const std::vector<double>& inv_deg, const double* in, double* out);
void walk_step_serial(const Graph& g, const std::vector<double>& inv_deg, const double* in,
                      double* out);

enum class Normalization { mean, symmetric };

// out = A_hat * in for dense node features (in, out are n x d row-major).
// A_hat is the self-inclusive normalized adjacency: mean uses 1/d_i, symmetric
// uses 1/sqrt(d_i d_j). transpose applies A_hat^T instead (differs only for
// mean normalization). out must not alias in.
void aggregate(const Graph& g, Normalization norm, bool transpose, const Matrix& in, Matrix& out);
void aggregate_serial(const Graph& g, Normalization norm, bool transpose, const Matrix& in,
                      Matrix& out);

}  // namespace gattack::kernels
