// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "serwalk/analysis.hpp"
#include "serwalk/generators.hpp"
#include "serwalk/geometry.hpp"
#include "serwalk/rearrange.hpp"
#include "serwalk/seqspace.hpp"

using namespace serwalk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Point xy(Dyadic x, Dyadic y) { return Point::exact({x, y}); }
SparseVec e(std::uint64_t i, Dyadic v = Dyadic(1)) { return SparseVec::basis(i, Scalar(v)); }

const PointSample& circle_target() {
  static const PointSample s(circle_by_pitch(1.0, 0.05));
  return s;
}

// shared by criteria 10 and 11
const RearrangeResult& circle_run() {
  static const RearrangeResult r = [] {
    const FullRangeSeries s(2, FullRangeSeries::Profile::dyadic_blocks, UINT64_MAX, 4);
    return rearrange_to_limit_set(s, circle_target(), 5);
  }();
  return r;
}

// pitch 1/8 keeps every chain of step 2^-k (k <= 3) on the sample grid
std::vector<PointSample> vertical_components(double height) {
  return {PointSample(segment_points(Point::real({0, 0}), Point::real({0, height}), 0.125)),
          PointSample(segment_points(Point::real({1, 0}), Point::real({1, height}), 0.125))};
}

Outcome c1() {
  const Walk w = gen_two_lines(1);
  const Dyadic h(1, -1);
  const bool prefix = w.size() >= 4 && w.point(0) == xy(h, 0) && w.point(1) == xy(1, 0) && w.point(2) == xy(h, 0) &&
                      w.point(3) == xy(0, 0);
  const Walk w3 = gen_two_lines(3);
  Dyadic top;
  for (std::size_t i = w3.phase_begin(2); i < w3.phase_end(2); ++i) top = std::max(top, w3.point(i)[1].dyadic());
  return {prefix && top == Dyadic(2), "s_1..s_4 " + std::string(prefix ? "exact" : "differ") +
                                          ", phase-3 height " + top.to_decimal()};
}

Outcome c2() {
  const LimitEstimate est = estimate_limit_set(gen_two_lines(6), 0.3, 0.1);
  const auto a = gap_components(est.points, 0.9).size();
  const auto b = gap_components(est.points, 1.1).size();
  return {a == 2 && b == 1, std::to_string(a) + " components at gap 0.9, " + std::to_string(b) + " at 1.1"};
}

Outcome c3() {
  const Walk w = gen_c0_two_point(5);
  const std::vector<SparseVec> want{e(2), e(2) + e(1), e(1), e(2) + e(1), e(2), SparseVec()};
  bool prefix = w.size() >= 6;
  for (std::size_t i = 0; prefix && i < 6; ++i) prefix = w.sparse_at(i) == want[i];
  const LimitEstimate est = estimate_limit_set(w, 0.3, 0.2, 2, NormKind::sup);
  const PointSample two(std::vector<SparseVec>{SparseVec(), e(1)});
  const double d = est.points.empty() ? INFINITY : hausdorff_distance(est.points, two, NormKind::sup);
  return {prefix && est.points.size() == 2 && d < 0.2,
          std::to_string(est.points.size()) + " estimate points, sup-Hausdorff to {theta, e_1} " + fmt(d) +
              ", first six sums " + (prefix ? "exact" : "differ")};
}

Outcome c4() {
  const int phases = 6;
  const Walk w = gen_c0_singleton_divergent(phases);
  bool exact = true;
  for (int k = 1; k <= phases; ++k) {
    const std::size_t theta = (std::size_t{1} << (k + 1)) - 2;
    exact = exact && theta <= w.size() && w.sparse_at(theta - 1).empty();
    if (k >= 2) {
      const std::size_t peak = (std::size_t{1} << k) + (std::size_t{1} << (k - 1)) - 2;
      exact = exact && w.sparse_at(peak - 1) == e(k);
    }
  }
  const LimitEstimate est = estimate_limit_set(w, 0.5, 0.2, 2, NormKind::sup);
  // the representative is a cell centroid: it must lie in theta's cell
  const double off = est.points.empty() ? INFINITY : norm(est.points.points[0], NormKind::sup);
  const bool singleton = est.points.size() == 1 && off < est.resolution;
  // the last two blocks
  const double tail = static_cast<double>(w.size() - ((std::size_t{1} << (phases - 1)) - 2)) / w.size();
  const double gap = cauchy_diagnostic(w, tail, NormKind::sup).max_gap;
  return {exact && singleton && gap >= 1.0, std::string("estimate ") + (singleton ? "{theta}" : "not {theta}") + " (representative at sup distance " + fmt(off) + ")" +
                                                ", Cauchy gap " + fmt(gap) + ", indices " +
                                                (exact ? "exact" : "differ")};
}

Outcome c5() {
  bool ok = true;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    const FamilyReport r = check_vector_family(gen_vector_family(k));
    ok = ok && r.unit_norms && r.sums_to_zero && r.prefix_bound;
    detail += (k > 1 ? ", " : "") + std::string("k=") + std::to_string(k) + ": " + std::to_string(r.permutations) +
              " orders, min prefix " + fmt(r.min_prefix_norm);
  }
  return {ok, detail};
}

Outcome c6() {
  const auto y = no_rp_block(1);
  BalanceOptions o;
  o.kind = NormKind::sup;
  const auto found = find_balanced_permutation(densify(y, 1, 6), 1.0, BalanceStrategy::exhaustive, o);
  const NoRpSeries s = gen_no_rp_series(1);
  std::map<std::uint64_t, Dyadic> total;
  for (const auto& t : s.series.terms)
    for (const auto& [j, v] : std::get<SparseVec>(t).entries()) total[j] += v.dyadic();
  const bool zero = std::all_of(total.begin(), total.end(), [](const auto& kv) { return kv.second.is_zero(); });
  return {!found && zero && total.size() == 6,
          std::string(found ? "balanced order exists" : "no balanced order among 24") +
              ", coordinate totals " + (zero ? "zero" : "nonzero")};
}

Outcome c7() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> step(-16, 16);
  std::uniform_int_distribution<int> phases(1, 5), len(1, 12), dims(1, 3);
  std::size_t good = 0;
  const std::size_t runs = 500;
  for (std::size_t t = 0; t < runs; ++t) {
    const int dim = dims(rng);
    std::vector<Scalar> anchor(dim);
    for (auto& a : anchor) a = Scalar(Dyadic(step(rng), -3));
    std::vector<std::vector<Point>> sched;
    const int np = phases(rng);
    for (int p = 0; p < np; ++p) {
      std::vector<Point> chain{Point(anchor)};
      std::vector<Scalar> cur = anchor;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) {
        for (auto& c : cur) c = c + Scalar(Dyadic(step(rng), -(p + 4)));
        chain.emplace_back(cur);
      }
      sched.push_back(chain);
    }
    const Walk w = build_xwalk(sched);
    const SeriesOfWalk s = walk_to_series(w);
    bool ok = apply_permutation(s.series, s.sigma).is_alternating();
    const auto sums = reaccumulate(w.anchor(), s.series.terms);
    ok = ok && sums.size() + 1 == w.size();
    for (std::size_t i = 0; ok && i < sums.size(); ++i) ok = sums[i] == w.at(i + 1);
    if (ok) ++good;
  }
  return {good == runs, std::to_string(good) + "/" + std::to_string(runs) + " schedules exact"};
}

Outcome c8() {
  const auto circle = circle_by_pitch(1.0, 0.02);
  const Walk w = build_chainable_walk(golden_order(circle), 5);
  const LimitEstimate est = estimate_limit_set(w, 0.3, 0.05);
  const double d = hausdorff_distance(est.points, PointSample(circle));
  return {d <= 0.15, std::to_string(circle.size()) + "-point circle, Hausdorff " + fmt(d)};
}

Outcome c9() {
  const std::vector<double> radii{2, 3, 4};
  const auto comps = vertical_components(4.5);
  const Walk w = build_unbounded_components_walk(comps, radii, 3);
  const LimitEstimate est = estimate_limit_set(w, 0.3, 0.1);

  // each component truncated at the height climbed on it by at least two phases of the window
  std::vector<Point> both;
  double tops[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    std::vector<double> climb;
    for (std::size_t p = w.phase_of(est.window_start); p < w.phase_count(); ++p) {
      double h = 0.0;
      for (std::size_t i = w.phase_begin(p); i < w.phase_end(p); ++i)
        if (std::abs(w.coord(i, 0) - c) < 1e-9) h = std::max(h, w.coord(i, 1));
      climb.push_back(h);
    }
    std::sort(climb.rbegin(), climb.rend());
    tops[c] = climb.size() >= 2 ? climb[1] : climb.front();
    const auto seg = segment_points(Point::real({double(c), 0}), Point::real({double(c), tops[c]}), 0.125);
    both.insert(both.end(), seg.begin(), seg.end());
  }
  const PointSample target(both);
  const double d = hausdorff_distance(est.points, target);

  std::size_t on_shell = 0;
  for (const auto& p : est.points.points) {
    double off = INFINITY;
    for (const auto& q : target.points) off = std::min(off, distance(p, q, NormKind::euclidean));
    if (off <= est.resolution) continue;
    const double r = norm(p, NormKind::euclidean);
    for (double R : radii)
      if (std::abs(r - R) <= est.resolution) ++on_shell;
  }
  return {d <= 0.2 && on_shell == 0, "Hausdorff " + fmt(d) + " to components truncated at heights " + fmt(tops[0]) + " and " + fmt(tops[1]) +
                                         ", " + std::to_string(on_shell) + " estimate points on sphere shells"};
}

Outcome c10() {
  const RearrangeResult& r = circle_run();
  const LimitEstimate est = estimate_limit_set(r.walk, 0.3, 0.05);
  const double d = hausdorff_distance(est.points, circle_target());
  const bool v_ok = std::all_of(r.records.begin(), r.records.end(), [](const StepRecord& x) { return x.invariants_ok; });

  const int stages = 8;
  const FullRangeSeries s(2, FullRangeSeries::Profile::dyadic_blocks, UINT64_MAX, 2);
  const Point a = Point::real({0.5, -0.25});
  const RearrangeResult p = rearrange_to_limit_set(s, PointSample(std::vector<Point>{a}), stages);
  const double eps = stage_epsilon(stages);
  double tail = 0.0;
  for (std::size_t i = p.walk.size() - p.walk.size() / 4; i < p.walk.size(); ++i)
    tail = std::max(tail, distance(p.walk.at(i), Element(a), NormKind::euclidean));
  return {r.invariants_ok && v_ok && d <= 0.15 && p.invariants_ok && tail <= eps,
          "circle: invariants " + std::string(r.invariants_ok ? "hold" : "fail") + ", Hausdorff " + fmt(d) + ", " +
              std::to_string(r.tau.size()) + " terms; point: invariants " + (p.invariants_ok ? "hold" : "fail") +
              ", last-quarter distance " + fmt(tail) + " vs eps_8 " + fmt(eps)};
}

Outcome c11() {
  struct Case {
    std::string name;
    Walk walk;
    double resolution;
    double gap;
    NormKind kind;
    bool expect_violation;
  };
  std::vector<Case> cases;
  cases.push_back({"two-lines", gen_two_lines(6), 0.1, 0.5, NormKind::euclidean, false});
  cases.push_back({"halflines", gen_halflines(cantor_left_endpoints(6), 5), 0.1, 0.2, NormKind::euclidean, false});
  cases.push_back({"chainable", build_chainable_walk(golden_order(circle_by_pitch(1.0, 0.02)), 5), 0.05, 0.2,
                   NormKind::euclidean, false});
  cases.push_back({"unbounded", build_unbounded_components_walk(vertical_components(4.5), {2, 3, 4}, 3), 0.1, 0.3,
                   NormKind::euclidean, false});
  cases.push_back({"rearranged circle", circle_run().walk, 0.05, 0.2, NormKind::euclidean, false});
  cases.push_back({"c0-two-point", gen_c0_two_point(5), 0.2, 0.5, NormKind::sup, true});

  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const LimitEstimate est = estimate_limit_set(c.walk, 0.3, c.resolution, 2, c.kind);
    const DichotomyReport r = verify_dichotomy(est, c.gap, observed_bound(c.walk, est));
    const bool violation = r.verdict == DichotomyVerdict::violation;
    ok = ok && violation == c.expect_violation;
    detail += (detail.empty() ? "" : ", ") + c.name + " " + to_string(r.verdict);
  }
  return {ok, detail};
}

Outcome c12() {
  const FullRangeSeries h1(1, FullRangeSeries::Profile::harmonic);
  const FullRangeSeries r2(2, FullRangeSeries::Profile::dyadic_blocks, UINT64_MAX, 4);
  bool ok = true;
  std::string detail;
  for (const auto* s : {static_cast<const Series*>(&h1), static_cast<const Series*>(&r2)}) {
    std::vector<RPWitness> fam;
    for (double eps : {1.0, 0.5, 0.25}) fam.push_back(certify_rp(*s, eps, 500, 7));
    const bool mono = witness_family_monotone(fam);
    ok = ok && mono;
    std::size_t n = 0;
    double worst = 0.0;
    for (const auto& w : fam) {
      n += w.evidence.instances;
      worst = std::max(worst, w.evidence.max_prefix_norm / w.epsilon);
    }
    detail += (detail.empty() ? "" : "; ") + std::string(s == &h1 ? "harmonic" : "planar") + " " +
              std::to_string(n) + " instances, worst prefix/eps " + fmt(worst) + (mono ? ", monotone" : ", not monotone");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{{1, 1, c1},   {2, 5, c2},   {3, 5, c3},   {4, 5, c4},
                                   {5, 10, c5},  {6, 1, c6},   {7, 10, c7},  {8, 30, c8},
                                   {9, 30, c9},  {10, 60, c10}, {11, 30, c11}, {12, 60, c12}};
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("error: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s (%.2fs of %.0fs)\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
