#include "serwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "serwalk/geometry.hpp"
#include "serwalk/kernels.hpp"

namespace serwalk {

namespace {

struct KeyHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& k) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    for (const auto& x : k) {
      if constexpr (std::is_integral_v<T>) {
        mix(static_cast<std::uint64_t>(x));
      } else {
        mix(x.first);
        mix(static_cast<std::uint64_t>(x.second));
      }
    }
    return h;
  }
};

struct Cell {
  std::size_t visits = 0;
  std::size_t phases = 0;
  std::size_t last_phase = std::numeric_limits<std::size_t>::max();
  std::vector<double> sum;               // dense
  std::map<std::uint64_t, double> ssum;  // sparse
};

std::int64_t cell_of(double v, double res) { return static_cast<std::int64_t>(std::floor(v / res)); }

void visit(Cell& c, std::size_t phase) {
  ++c.visits;
  if (phase != c.last_phase) {
    ++c.phases;
    c.last_phase = phase;
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> estimate_window(const Walk& w, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) throw InvalidArgument("window fraction must be in (0, 1]");
  const std::size_t n = w.size();
  const auto len = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * window_fraction));
  std::size_t start = n - std::min(n, len);
  const std::size_t phases = w.phase_count();
  if (phases >= 2) {
    const std::size_t p = w.phase_of(start);
    if (p < phases) start = w.phase_begin(p);
    start = std::min(start, w.phase_begin(phases - 2));
  }
  if (n - start < 2) throw Error("window shorter than 2 points");
  return {start, n};
}

LimitEstimate estimate_limit_set(const Walk& w, double window_fraction, double resolution, std::size_t min_hits,
                                 NormKind kind) {
  if (!(resolution > 0.0)) throw InvalidArgument("resolution must be positive");
  const auto [lo, hi] = estimate_window(w, window_fraction);
  LimitEstimate est;
  est.window_start = lo;
  est.window_end = hi;
  est.resolution = resolution;
  est.kind = kind;
  est.phase_hits = w.phase_count() >= 2;

  // cells in first-visit order, keys kept for tie-breaking
  std::vector<Cell> cells;
  std::vector<std::vector<std::int64_t>> dense_keys;
  std::vector<std::vector<std::pair<std::uint64_t, std::int64_t>>> sparse_keys;

  if (w.is_sparse()) {
    std::unordered_map<std::vector<std::pair<std::uint64_t, std::int64_t>>, std::size_t, KeyHash> index;
    std::vector<std::pair<std::uint64_t, std::int64_t>> key;
    for (std::size_t i = lo; i < hi; ++i) {
      const SparseVec& v = w.sparse_at(i);
      key.clear();
      for (const auto& [j, x] : v.entries()) {
        const auto c = cell_of(x.to_double(), resolution);
        if (c != 0) key.emplace_back(j, c);
      }
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, cells.size()).first;
        cells.emplace_back();
        sparse_keys.push_back(key);
      }
      Cell& c = cells[it->second];
      visit(c, w.phase_of(i));
      for (const auto& [j, x] : v.entries()) c.ssum[j] += x.to_double();
    }
  } else {
    const std::size_t dim = w.dim();
    std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> index;
    std::vector<std::int64_t> key(dim);
    std::vector<double> row(dim);
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t c = 0; c < dim; ++c) {
        row[c] = w.coord(i, c);
        key[c] = cell_of(row[c], resolution);
      }
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, cells.size()).first;
        cells.emplace_back();
        cells.back().sum.assign(dim, 0.0);
        dense_keys.push_back(key);
      }
      Cell& c = cells[it->second];
      visit(c, w.phase_of(i));
      for (std::size_t k = 0; k < dim; ++k) c.sum[k] += row[k];
    }
  }

  auto hits = [&](std::size_t i) { return est.phase_hits ? cells[i].phases : cells[i].visits; };
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (hits(i) >= min_hits) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (hits(a) != hits(b)) return hits(a) > hits(b);
    return w.is_sparse() ? sparse_keys[a] < sparse_keys[b] : dense_keys[a] < dense_keys[b];
  });

  auto centroid = [&](std::size_t i) -> Element {
    const Cell& c = cells[i];
    const double inv = 1.0 / static_cast<double>(c.visits);
    if (w.is_sparse()) {
      SparseVec v;
      for (const auto& [j, x] : c.ssum)
        if (x != 0.0) v.set(j, Scalar(x * inv));
      return v;
    }
    std::vector<double> p(c.sum);
    for (double& x : p) x *= inv;
    return Point::real(std::move(p));
  };

  for (std::size_t i : order) {
    Element rep = centroid(i);
    bool near = false;
    for (const auto& kept : est.points.points)
      if (distance(rep, kept, kind) < resolution / 2.0) {
        near = true;
        break;
      }
    if (near) continue;
    est.points.points.push_back(std::move(rep));
    est.hit_counts.push_back(hits(i));
  }
  return est;
}

// ---------------------------------------------------------------------------

std::string to_string(DichotomyVerdict v) {
  switch (v) {
    case DichotomyVerdict::compact_connected: return "compact-connected";
    case DichotomyVerdict::all_components_escape: return "all-components-escape";
    case DichotomyVerdict::violation: return "violation";
  }
  return "violation";
}

DichotomyReport verify_dichotomy(const LimitEstimate& est, double gap, double bound) {
  if (est.points.empty()) throw InvalidArgument("empty estimate");
  DichotomyReport r;
  r.gap = gap;
  r.bound = bound;
  r.components = gap_components(est.points, gap, est.kind);
  std::size_t escaping = 0;
  for (const auto& comp : r.components) {
    double reach = 0.0;
    for (std::size_t i : comp) reach = std::max(reach, norm(est.points.points[i], est.kind));
    r.reach.push_back(reach);
    if (reach >= bound - gap) ++escaping;
  }
  if (r.components.size() == 1 && escaping == 0)
    r.verdict = DichotomyVerdict::compact_connected;
  else if (escaping == r.components.size())
    r.verdict = DichotomyVerdict::all_components_escape;
  else
    r.verdict = DichotomyVerdict::violation;
  return r;
}

double observed_bound(const Walk& w, const LimitEstimate& est) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t phases = w.phase_count();
  if (phases < 2 || est.window_end <= est.window_start) return inf;
  const std::size_t p0 = w.phase_of(est.window_start);
  const std::size_t p1 = std::min(w.phase_of(est.window_end - 1), phases - 1);
  if (p0 >= p1) return inf;
  std::vector<double> radius;
  for (std::size_t p = p0; p <= p1; ++p) {
    double r = 0.0;
    for (std::size_t i = w.phase_begin(p); i < w.phase_end(p); ++i) r = std::max(r, w.norm_at(i, est.kind));
    radius.push_back(r);
  }
  for (std::size_t k = 1; k < radius.size(); ++k)
    if (!(radius[k] > radius[k - 1] + 1e-9 * (1.0 + radius[k - 1]))) return inf;
  return radius.front();
}

// ---------------------------------------------------------------------------

std::string to_string(SingletonVerdictKind v) {
  switch (v) {
    case SingletonVerdictKind::converges_to: return "converges-to";
    case SingletonVerdictKind::diverges_with_singleton: return "diverges-with-singleton";
    case SingletonVerdictKind::not_singleton: return "not-singleton";
  }
  return "not-singleton";
}

SingletonVerdict singleton_convergence_check(const Walk& w, double tol, NormKind kind, double window_fraction) {
  if (w.size() < 100) throw InvalidArgument("singleton check needs at least 100 sums");
  SingletonVerdict out;
  const LimitEstimate est = estimate_limit_set(w, window_fraction, tol, 2, kind);
  if (est.points.empty()) return out;
  const Element& p = est.points.points.front();
  for (const auto& q : est.points.points)
    if (distance(p, q, kind) > tol) return out;
  out.point = p;
  for (std::size_t i = w.size() - w.size() / 4; i < w.size(); ++i)
    out.tail_max_distance = std::max(out.tail_max_distance, distance(w.at(i), p, kind));
  out.kind = out.tail_max_distance <= tol ? SingletonVerdictKind::converges_to
                                          : SingletonVerdictKind::diverges_with_singleton;
  return out;
}

bool dense_approx_check(const std::vector<Point>& dense, const std::vector<Point>& approximants,
                        const std::vector<double>& epsilons, const PointSample& target, double resolution,
                        NormKind kind) {
  if (dense.size() != approximants.size() || dense.size() != epsilons.size())
    throw InvalidArgument("dense, approximants and epsilons differ in length");
  if (dense.empty()) throw InvalidArgument("empty sequence");
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!(distance(approximants[i], dense[i], kind) < epsilons[i]))
      throw InvalidArgument("approximant " + std::to_string(i + 1) + " is not within its epsilon of the dense point");

  Walk w = Walk::dense(approximants.front().dim(), Mode::floating);
  for (const auto& p : approximants) w.push_back(Point::real(p.to_doubles()));
  const LimitEstimate est = estimate_limit_set(w, 0.3, resolution, 2, kind);
  if (est.points.empty()) return false;
  double late_eps = 0.0;
  for (std::size_t i = est.window_start; i < est.window_end; ++i) late_eps = std::max(late_eps, epsilons[i]);
  return hausdorff_distance(est.points, target, kind) <= 2.0 * late_eps + resolution;
}

CauchyReport cauchy_diagnostic(const Walk& w, double tail_fraction, NormKind kind) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw InvalidArgument("tail fraction must be in (0, 1]");
  const std::size_t n = w.size();
  const auto len = std::min(n, static_cast<std::size_t>(std::ceil(static_cast<double>(n) * tail_fraction)));
  if (len < 2) throw InvalidArgument("tail has fewer than 2 sums");
  const std::size_t lo = n - len;

  std::vector<Element> tail;
  tail.reserve(len);
  for (std::size_t i = lo; i < n; ++i) tail.push_back(w.at(i));
  auto dist = [&](std::size_t a, std::size_t b) { return distance(tail[a], tail[b], kind); };

  CauchyReport r;
  std::size_t bi = 0, bj = 0;
#ifdef SERWALK_HAVE_OPENMP
  r.max_gap = kernels::parallel::diameter(len, dist, &bi, &bj);
#else
  r.max_gap = kernels::serial::diameter(len, dist, &bi, &bj);
#endif
  for (std::size_t a = 0; a < len && r.gap_pairs.size() < 64; ++a)
    for (std::size_t b = a + 1; b < len && r.gap_pairs.size() < 64; ++b)
      if (dist(a, b) == r.max_gap) r.gap_pairs.emplace_back(lo + a + 1, lo + b + 1);
  return r;
}

}  // namespace serwalk
