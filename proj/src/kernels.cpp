#include "gattack/kernels.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace gattack::kernels {

namespace {

inline void matmul_row(const double* A, const double* B, double* C, int k, int m, int i) {
  double* ci = C + static_cast<std::size_t>(i) * m;
  std::memset(ci, 0, sizeof(double) * static_cast<std::size_t>(m));
  const double* ai = A + static_cast<std::size_t>(i) * k;
  for (int p = 0; p < k; ++p) {
    const double a = ai[p];
    if (a == 0.0) continue;
    const double* bp = B + static_cast<std::size_t>(p) * m;
    for (int j = 0; j < m; ++j) ci[j] += a * bp[j];
  }
}

}  // namespace

void matmul(const double* A, const double* B, double* C, int n, int k, int m) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) matmul_row(A, B, C, k, m, i);
}

void matmul_serial(const double* A, const double* B, double* C, int n, int k, int m) {
  for (int i = 0; i < n; ++i) matmul_row(A, B, C, k, m, i);
}

void matmul_tn(const double* A, const double* B, double* C, int n, int k, int m) {
#pragma omp parallel for schedule(static)
  for (int p = 0; p < k; ++p) {
    double* cp = C + static_cast<std::size_t>(p) * m;
    std::memset(cp, 0, sizeof(double) * static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
      const double a = A[static_cast<std::size_t>(i) * k + p];
      if (a == 0.0) continue;
      const double* bi = B + static_cast<std::size_t>(i) * m;
      for (int j = 0; j < m; ++j) cp[j] += a * bi[j];
    }
  }
}

void matmul_nt(const double* A, const double* B, double* C, int n, int k, int m) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double* ai = A + static_cast<std::size_t>(i) * k;
    double* ci = C + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) {
      const double* bj = B + static_cast<std::size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] = acc;
    }
  }
}

namespace {

// Accumulates over the self-inclusive neighborhood in ascending node order,
// matching the term order of a dense product over column index.
inline double walk_gather(const Graph& g, const std::vector<double>& inv_deg, const double* in,
                          int j) {
  double acc = 0.0;
  bool self_done = false;
  for (int i : g.adj[j]) {
    if (!self_done && i > j) {
      acc += in[j] * inv_deg[j];
      self_done = true;
    }
    acc += in[i] * inv_deg[i];
  }
  if (!self_done) acc += in[j] * inv_deg[j];
  return acc;
}

}  // namespace

void walk_step(const Graph& g, const std::vector<double>& inv_deg, const double* in, double* out) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.n; ++j) out[j] = walk_gather(g, inv_deg, in, j);
}

void walk_step_serial(const Graph& g, const std::vector<double>& inv_deg, const double* in,
                      double* out) {
  for (int j = 0; j < g.n; ++j) out[j] = walk_gather(g, inv_deg, in, j);
}

namespace {

inline void aggregate_row(const Graph& g, Normalization norm, bool transpose,
                          const std::vector<double>& inv_deg,
                          const std::vector<double>& inv_sqrt_deg, const Matrix& in, Matrix& out,
                          int i) {
  const int d = in.cols;
  double* oi = out.row(i);
  std::memset(oi, 0, sizeof(double) * static_cast<std::size_t>(d));
  auto add = [&](int j, double w) {
    const double* xj = in.row(j);
    for (int c = 0; c < d; ++c) oi[c] += w * xj[c];
  };
  auto weight = [&](int j) {
    if (norm == Normalization::symmetric) return inv_sqrt_deg[i] * inv_sqrt_deg[j];
    return transpose ? inv_deg[j] : inv_deg[i];
  };
  // Self weight is 1/d_i under every mode: 1/d_i for mean (either side) and
  // 1/sqrt(d_i d_i) for symmetric.
  bool self_done = false;
  for (int j : g.adj[i]) {
    if (!self_done && j > i) {
      add(i, inv_deg[i]);
      self_done = true;
    }
    add(j, weight(j));
  }
  if (!self_done) add(i, inv_deg[i]);
}

}  // namespace

void aggregate(const Graph& g, Normalization norm, bool transpose, const Matrix& in, Matrix& out) {
  if (in.rows != g.n || out.rows != g.n || out.cols != in.cols)
    throw std::invalid_argument("aggregate: shape mismatch");
  std::vector<double> inv_deg(g.n), inv_sqrt_deg(g.n);
  for (int i = 0; i < g.n; ++i) {
    inv_deg[i] = 1.0 / g.degree(i);
    inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(i)));
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.n; ++i)
    aggregate_row(g, norm, transpose, inv_deg, inv_sqrt_deg, in, out, i);
}

void aggregate_serial(const Graph& g, Normalization norm, bool transpose, const Matrix& in,
                      Matrix& out) {
  if (in.rows != g.n || out.rows != g.n || out.cols != in.cols)
    throw std::invalid_argument("aggregate: shape mismatch");
  std::vector<double> inv_deg(g.n), inv_sqrt_deg(g.n);
  for (int i = 0; i < g.n; ++i) {
    inv_deg[i] = 1.0 / g.degree(i);
    inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(i)));
  }
  for (int i = 0; i < g.n; ++i)
    aggregate_row(g, norm, transpose, inv_deg, inv_sqrt_deg, in, out, i);
}

}  // namespace gattack::kernels
