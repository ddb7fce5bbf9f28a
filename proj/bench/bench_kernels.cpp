// Times the OpenMP kernels against their serial reference twins on
// representative shapes and prints observed speedups.

#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "gattack/centrality.hpp"
#include "gattack/gcn.hpp"
#include "gattack/kernels.hpp"
#include "gattack/rng.hpp"
#include "gattack/synth.hpp"
#include "gattack/walk.hpp"

using namespace gattack;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e18;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    fn();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3f ms | parallel %8.3f ms | speedup %.2fx\n", name,
              1e3 * serial, 1e3 * parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  {  // dense matmul, gcn-sized
    const int n = 640;
    Matrix a(n, n), b(n, n), c(n, n);
    Rng rng(1);
    std::normal_distribution<double> gauss;
    for (double& v : a.a) v = gauss(rng);
    for (double& v : b.a) v = gauss(rng);
    const double ts = time_best_of(3, [&] {
      kernels::matmul_serial(a.a.data(), b.a.data(), c.a.data(), n, n, n);
    });
    const double tp =
        time_best_of(3, [&] { kernels::matmul(a.a.data(), b.a.data(), c.a.data(), n, n, n); });
    report("matmul 640x640x640", ts, tp);
  }

  SynthSpec big;
  big.n = 200000;
  big.attach = 3;
  big.seed = 7;
  Graph g = barabasi_albert(big);
  std::vector<double> inv_deg(g.n);
  for (int i = 0; i < g.n; ++i) inv_deg[i] = 1.0 / g.degree(i);

  {  // one walk step on a 200k-node graph
    std::vector<double> v(g.n, 1.0), out(g.n);
    const double ts =
        time_best_of(5, [&] { kernels::walk_step_serial(g, inv_deg, v.data(), out.data()); });
    const double tp =
        time_best_of(5, [&] { kernels::walk_step(g, inv_deg, v.data(), out.data()); });
    report("walk step n=200k", ts, tp);
  }

  {  // feature aggregation, 64 channels
    const int d = 64;
    Matrix x(g.n, d, 0.5), out(g.n, d);
    const double ts = time_best_of(3, [&] {
      kernels::aggregate_serial(g, Normalization::symmetric, false, x, out);
    });
    const double tp =
        time_best_of(3, [&] { kernels::aggregate(g, Normalization::symmetric, false, x, out); });
    report("aggregate n=200k d=64", ts, tp);
  }

  {  // betweenness on a mid-sized graph (block-parallel Brandes inside)
    SynthSpec mid;
    mid.n = 4000;
    mid.attach = 2;
    mid.seed = 9;
    Graph h = barabasi_albert(mid);
    const double tp = time_best_of(2, [&] { betweenness_scores(h); });
    int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double ts = time_best_of(2, [&] { betweenness_scores(h); });
    omp_set_num_threads(threads);
    report("brandes n=4000", ts, tp);
  }

  {  // binary walk matrix build (streamed rows)
    SynthSpec mid;
    mid.n = 20000;
    mid.attach = 2;
    mid.seed = 11;
    Graph h = barabasi_albert(mid);
    const double tp = time_best_of(2, [&] { binary_walk_matrix(h, 4, 30); });
    int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double ts = time_best_of(2, [&] { binary_walk_matrix(h, 4, 30); });
    omp_set_num_threads(threads);
    report("binary walk matrix n=20k", ts, tp);
  }

  return 0;
}
