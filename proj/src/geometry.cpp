#include "serwalk/geometry.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "serwalk/kernels.hpp"

#ifdef SERWALK_HAVE_OPENMP
namespace kimpl = serwalk::kernels::parallel;
#else
namespace kimpl = serwalk::kernels::serial;
#endif

namespace serwalk {

namespace detail {

Flat flatten(const PointSample& s) {
  Flat f;
  if (s.empty() || s.is_sparse()) return f;
  f.dim = s.point(0).dim();
  f.xs.reserve(s.size() * f.dim);
  for (const auto& e : s.points) {
    const auto& p = std::get<Point>(e);
    if (p.dim() != f.dim) throw InvalidArgument("dimension mismatch");
    for (const auto& c : p.coords()) f.xs.push_back(c.to_double());
  }
  return f;
}

}  // namespace detail

namespace {

double flat_dist(const double* a, const double* b, std::size_t dim, NormKind kind) {
  double acc = 0.0;
  if (kind == NormKind::sup) {
    for (std::size_t k = 0; k < dim; ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
    return acc;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Calls f(dist) with dist(i, j) measuring a[i] against b[j].
template <class F>
auto with_cross_distance(const PointSample& a, const PointSample& b, NormKind kind, F f) {
  if (a.is_sparse() != b.is_sparse()) throw InvalidArgument("cannot compare a point with a sparse vector");
  if (!a.is_sparse()) {
    auto fa = detail::flatten(a);
    auto fb = detail::flatten(b);
    if (fa.dim != fb.dim) throw InvalidArgument("dimension mismatch");
    return f([&](std::size_t i, std::size_t j) { return flat_dist(fa.row(i), fb.row(j), fa.dim, kind); });
  }
  return f([&](std::size_t i, std::size_t j) {
    return distance(std::get<SparseVec>(a.points[i]), std::get<SparseVec>(b.points[j]), kind);
  });
}

}  // namespace

double hausdorff_distance(const PointSample& a, const PointSample& b, NormKind kind) {
  if (a.empty() || b.empty()) throw InvalidArgument("empty sample");
  double ab = with_cross_distance(a, b, kind, [&](auto d) { return kimpl::directed_hausdorff(a.size(), b.size(), d); });
  double ba = with_cross_distance(b, a, kind, [&](auto d) { return kimpl::directed_hausdorff(b.size(), a.size(), d); });
  return std::max(ab, ba);
}

std::optional<std::size_t> find_in_sample(const PointSample& s, const Element& p, NormKind kind, double tol) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.points[i].index() == p.index() && distance(s.points[i], p, kind) <= tol) return i;
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> gap_chain_indices(const PointSample& s, double gap, std::size_t from,
                                                          std::size_t to, NormKind kind) {
  const std::size_t n = s.size();
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> prev(n, kUnseen);
  std::deque<std::size_t> queue{from};
  prev[from] = from;
  with_cross_distance(s, s, kind, [&](auto dist) {
    while (!queue.empty() && prev[to] == kUnseen) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (prev[v] == kUnseen && dist(u, v) <= gap) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    return 0;
  });
  if (prev[to] == kUnseen) return std::nullopt;
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  return std::vector<std::size_t>(path.rbegin(), path.rend());
}

std::optional<std::vector<Element>> gap_chainable(const PointSample& s, double gap, const Element& a,
                                                  const Element& b, NormKind kind, double tol) {
  auto ia = find_in_sample(s, a, kind, tol);
  auto ib = find_in_sample(s, b, kind, tol);
  if (!ia || !ib) throw InvalidArgument("endpoint not in sample");
  auto idx = gap_chain_indices(s, gap, *ia, *ib, kind);
  if (!idx) return std::nullopt;
  std::vector<Element> chain;
  chain.reserve(idx->size());
  for (std::size_t i : *idx) chain.push_back(s.points[i]);
  return chain;
}

std::vector<std::vector<std::size_t>> gap_components(const PointSample& s, double gap, NormKind kind) {
  if (s.empty()) throw InvalidArgument("empty sample");
  auto labels = with_cross_distance(s, s, kind, [&](auto d) { return kimpl::gap_labels(s.size(), gap, d); });
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= blocks.size()) blocks.resize(labels[i] + 1);
    blocks[labels[i]].push_back(i);
  }
  return blocks;
}

double connectivity_gap(const PointSample& s, NormKind kind) {
  if (s.empty()) throw InvalidArgument("empty sample");
  const std::size_t n = s.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  double longest = 0.0;
  with_cross_distance(s, s, kind, [&](auto dist) {
    best[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
      in_tree[u] = true;
      longest = std::max(longest, best[u]);
      for (std::size_t v = 0; v < n; ++v)
        if (!in_tree[v]) best[v] = std::min(best[v], dist(u, v));
    }
    return 0;
  });
  return longest;
}

Diameter sample_diameter(const PointSample& s, NormKind kind) {
  Diameter d;
  if (s.size() < 2) return d;
  d.value = with_cross_distance(s, s, kind, [&](auto dist) { return kimpl::diameter(s.size(), dist, &d.i, &d.j); });
  return d;
}

}  // namespace serwalk
