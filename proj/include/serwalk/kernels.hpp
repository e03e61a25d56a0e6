/** @file kernels.hpp
 *  @brief O(n^2) distance kernels, each with a serial reference and an OpenMP version.
 *
 *  The parallel versions must return exactly what the serial ones return; the
 *  unit tests and bench_kernels compare them.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace serwalk::kernels {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

/// Relabels union-find roots as 0,1,2,... in order of first appearance.
inline std::vector<std::size_t> component_labels(UnionFind& uf, std::size_t n) {
  std::vector<std::size_t> label(n), root_label(n, std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = uf.find(i);
    if (root_label[r] == std::numeric_limits<std::size_t>::max()) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

namespace serial {

/// max over a in A of min over b in B of dist(a, b).
template <class Dist>
double directed_hausdorff(std::size_t na, std::size_t nb, Dist dist) {
  double worst = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nb && best > worst; ++j) best = std::min(best, dist(i, j));
    worst = std::max(worst, best);
  }
  return worst;
}

template <class Dist>
std::vector<std::size_t> gap_labels(std::size_t n, double gap, Dist dist) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist(i, j) <= gap) uf.unite(i, j);
  return component_labels(uf, n);
}

/// Largest pairwise distance and the first (i < j) pair attaining it.
template <class Dist>
double diameter(std::size_t n, Dist dist, std::size_t* bi, std::size_t* bj) {
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = dist(i, j);
      if (d > best) {
        best = d;
        *bi = i;
        *bj = j;
      }
    }
  return best;
}

}  // namespace serial

namespace parallel {

template <class Dist>
double directed_hausdorff(std::size_t na, std::size_t nb, Dist dist) {
  double worst = 0.0;
  const auto n = static_cast<long long>(na);
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (long long i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    // worst is the thread-private reduction copy, so the early exit stays exact
    for (std::size_t j = 0; j < nb && best > worst; ++j) best = std::min(best, dist(static_cast<std::size_t>(i), j));
    worst = std::max(worst, best);
  }
  return worst;
}

template <class Dist>
std::vector<std::size_t> gap_labels(std::size_t n, double gap, Dist dist) {
  std::vector<std::vector<std::size_t>> adj(n);
  const auto nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < nn; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
      if (dist(static_cast<std::size_t>(i), j) <= gap) adj[i].push_back(j);
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : adj[i]) uf.unite(i, j);
  return component_labels(uf, n);
}

template <class Dist>
double diameter(std::size_t n, Dist dist, std::size_t* bi, std::size_t* bj) {
  // per-row maxima in parallel, then the lexicographically first attaining pair
  std::vector<double> row_best(n, -1.0);
  std::vector<std::size_t> row_arg(n, 0);
  const auto nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < nn; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      double d = dist(static_cast<std::size_t>(i), j);
      if (d > row_best[i]) {
        row_best[i] = d;
        row_arg[i] = j;
      }
    }
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (row_best[i] > best) {
      best = row_best[i];
      *bi = i;
      *bj = row_arg[i];
    }
  return best;
}

}  // namespace parallel

}  // namespace serwalk::kernels
