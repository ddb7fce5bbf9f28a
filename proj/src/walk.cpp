#include "gattack/walk.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gattack/kernels.hpp"

namespace gattack {

namespace {

std::vector<double> inverse_degrees(const Graph& g) {
  std::vector<double> inv(g.n);
  for (int i = 0; i < g.n; ++i) inv[i] = 1.0 / g.degree(i);
  return inv;
}

// Top-l strictly positive entries of one row; cutoff ties go to the lower
// column index.
std::vector<int> topl_columns(const std::vector<std::pair<double, int>>& entries, int l) {
  std::vector<std::pair<double, int>> pos;
  pos.reserve(entries.size());
  for (const auto& e : entries)
    if (e.first > 0.0) pos.push_back(e);
  const int take = std::min<int>(l, static_cast<int>(pos.size()));
  std::partial_sort(pos.begin(), pos.begin() + take, pos.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  std::vector<int> cols(take);
  for (int t = 0; t < take; ++t) cols[t] = pos[t].second;
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

WalkMatrix transition_matrix(const Graph& g) {
  WalkMatrix m;
  m.n = g.n;
  m.row_ptr.assign(g.n + 1, 0);
  std::size_t nnz = 0;
  for (int i = 0; i < g.n; ++i) nnz += static_cast<std::size_t>(g.degree(i));
  m.col.reserve(nnz);
  m.val.reserve(nnz);
  for (int i = 0; i < g.n; ++i) {
    const double w = 1.0 / g.degree(i);
    bool self_done = false;
    for (int j : g.adj[i]) {
      if (!self_done && j > i) {
        m.col.push_back(i);
        m.val.push_back(w);
        self_done = true;
      }
      m.col.push_back(j);
      m.val.push_back(w);
    }
    if (!self_done) {
      m.col.push_back(i);
      m.val.push_back(w);
    }
    m.row_ptr[i + 1] = m.col.size();
  }
  return m;
}

Matrix walk_power_dense(const Graph& g, int steps, int cap) {
  if (steps < 1) throw std::invalid_argument("walk_power_dense needs steps >= 1");
  if (g.n > cap)
    throw std::runtime_error("walk_power_dense: n=" + std::to_string(g.n) + " exceeds dense cap " +
                             std::to_string(cap) +
                             "; use rwcs_scores/binary_walk_matrix (sparse) or raise the cap");

  const auto inv_deg = inverse_degrees(g);
  Matrix p(g.n, g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double w = inv_deg[i];
    p(i, i) = w;
    for (int j : g.adj[i]) p(i, j) = w;
  }
  Matrix next(g.n, g.n, 0.0);
  for (int t = 1; t < steps; ++t) {
    // next = p * M, one sparse gather per row; rows are independent.
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.n; ++i)
      kernels::walk_step_serial(g, inv_deg, p.row(i), next.row(i));
    std::swap(p, next);
  }
  return p;
}

std::vector<double> rwcs_scores(const Graph& g, int steps) {
  if (steps < 1) throw std::invalid_argument("rwcs_scores needs steps >= 1");
  const auto inv_deg = inverse_degrees(g);
  std::vector<double> s(g.n, 1.0), tmp(g.n);
  for (int t = 0; t < steps; ++t) {
    kernels::walk_step(g, inv_deg, s.data(), tmp.data());
    std::swap(s, tmp);
  }
  return s;
}

BinaryWalkMatrix binarize_topl(const Matrix& power, int l) {
  if (l < 1) throw std::invalid_argument("binarize_topl needs l >= 1");
  if (power.rows != power.cols) throw std::invalid_argument("binarize_topl needs a square matrix");
  BinaryWalkMatrix mb;
  mb.n = power.rows;
  mb.topl = l;
  mb.rows.resize(mb.n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < mb.n; ++i) {
    std::vector<std::pair<double, int>> entries;
    const double* row = power.row(i);
    for (int j = 0; j < mb.n; ++j)
      if (row[j] > 0.0) entries.emplace_back(row[j], j);
    mb.rows[i] = topl_columns(entries, l);
  }
  return mb;
}

BinaryWalkMatrix binary_walk_matrix(const Graph& g, int steps, int l) {
  if (steps < 1) throw std::invalid_argument("binary_walk_matrix needs steps >= 1");
  if (l < 1) throw std::invalid_argument("binary_walk_matrix needs l >= 1");
  const auto inv_deg = inverse_degrees(g);
  BinaryWalkMatrix mb;
  mb.n = g.n;
  mb.steps = steps;
  mb.topl = l;
  mb.rows.resize(g.n);

#pragma omp parallel
  {
    std::vector<double> cur(g.n, 0.0), next(g.n, 0.0);
    std::vector<int> touched, next_touched;
#pragma omp for schedule(static)
    for (int i = 0; i < g.n; ++i) {
      cur[i] = 1.0;
      touched.assign(1, i);
      for (int t = 0; t < steps; ++t) {
        next_touched.clear();
        // Scatter in ascending source order; matches the gather term order.
        for (int k : touched) {
          const double w = cur[k] * inv_deg[k];
          if (next[k] == 0.0) next_touched.push_back(k);
          next[k] += w;
          for (int j : g.adj[k]) {
            if (next[j] == 0.0) next_touched.push_back(j);
            next[j] += w;
          }
        }
        for (int k : touched) cur[k] = 0.0;
        std::sort(next_touched.begin(), next_touched.end());
        std::swap(cur, next);
        std::swap(touched, next_touched);
      }
      std::vector<std::pair<double, int>> entries;
      entries.reserve(touched.size());
      for (int j : touched) {
        if (cur[j] > 0.0) entries.emplace_back(cur[j], j);
        cur[j] = 0.0;
      }
      mb.rows[i] = topl_columns(entries, l);
    }
  }
  return mb;
}

}  // namespace gattack
