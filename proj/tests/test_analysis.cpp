#include <cmath>
#include <random>

#include "doctest.h"
#include "serwalk/analysis.hpp"
#include "serwalk/generators.hpp"
#include "serwalk/geometry.hpp"
#include "serwalk/seqspace.hpp"

using namespace serwalk;

namespace {

Walk harmonic_walk(std::size_t n) {
  Walk w = Walk::dense(1, Mode::floating);
  double s = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    s += (j % 2 ? 1.0 : -1.0) / static_cast<double>(j);
    w.push_back(Point::real({s}));
  }
  return w;
}

// 2^-1 + 2^1 - 2^1 + 2^-2 + 2^2 - 2^2 + ...
Walk shrinking_loops_walk(int blocks) {
  Walk w = Walk::dense(1, Mode::floating);
  double s = 0.0;
  for (int k = 1; k <= blocks; ++k) {
    s += std::ldexp(1.0, -k);
    w.push_back(Point::real({s}));
    w.push_back(Point::real({s + std::ldexp(1.0, k)}));
    w.push_back(Point::real({s}));
  }
  return w;
}

}  // namespace

TEST_CASE("estimate of a constant walk") {
  Walk w = Walk::dense(2, Mode::floating);
  const Point p = Point::real({0.3, -1.2});
  for (int i = 0; i < 50; ++i) w.push_back(p);
  const LimitEstimate est = estimate_limit_set(w);
  REQUIRE(est.points.size() == 1);
  CHECK(distance(est.points.points[0], Element(p), NormKind::euclidean) < 1e-12);
  CHECK(est.hit_counts[0] >= 2);
}

TEST_CASE("estimate errors") {
  Walk w = Walk::dense(1, Mode::floating);
  w.push_back(Point::real({0.0}));
  CHECK_THROWS_WITH(estimate_limit_set(w), "window shorter than 2 points");
  w.push_back(Point::real({0.0}));
  CHECK_THROWS_AS(estimate_limit_set(w, 0.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_limit_set(w, 0.5, -1.0), InvalidArgument);
}

TEST_CASE("estimate of the divergent c0 walk is the origin") {
  const Walk w = gen_c0_singleton_divergent(5);
  const LimitEstimate est = estimate_limit_set(w, 0.5, 0.2, 2, NormKind::sup);
  REQUIRE(est.points.size() == 1);
  CHECK(norm(est.points.points[0], NormKind::sup) < 0.2);
}

TEST_CASE("estimate points are spread and hit often enough") {
  for (const Walk& w : {gen_two_lines(5), build_chainable_walk(golden_order(circle_points(1.0, 120)), 4)}) {
    const LimitEstimate est = estimate_limit_set(w, 0.3, 0.1, 2);
    for (std::size_t i = 0; i < est.points.size(); ++i) {
      CHECK(est.hit_counts[i] >= 2);
      for (std::size_t j = 0; j < i; ++j)
        CHECK(distance(est.points.points[i], est.points.points[j], NormKind::euclidean) >= 0.05);
    }
  }
}

TEST_CASE("raising min_hits never adds points") {
  const Walk w = gen_two_lines(6);
  std::size_t prev = SIZE_MAX;
  for (std::size_t h = 1; h <= 5; ++h) {
    const auto est = estimate_limit_set(w, 0.3, 0.1, h);
    CHECK(est.points.size() <= prev);
    prev = est.points.size();
  }
}

TEST_CASE("a recurring anchor is always estimated") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const Point anchor = Point::real({u(rng), u(rng)});
    std::vector<std::vector<Point>> sched;
    for (int p = 0; p < 5; ++p) {
      std::vector<Point> chain{anchor};
      auto c = anchor.to_doubles();
      for (int i = 0; i < 6; ++i) {
        c[0] += u(rng) * 0.3;
        c[1] += u(rng) * 0.3;
        chain.push_back(Point::real(c));
      }
      sched.push_back(chain);
    }
    const Walk w = build_xwalk(sched);
    const LimitEstimate est = estimate_limit_set(w, 0.3, 0.05);
    REQUIRE(w.phase_of(est.window_start) + 2 <= w.phase_count());
    CHECK(find_in_sample(est.points, Element(anchor), NormKind::euclidean, 0.05).has_value());
  }
}

TEST_CASE("dichotomy verdicts") {
  const Walk lines = gen_two_lines(6);
  const LimitEstimate le = estimate_limit_set(lines, 0.3, 0.1);
  const double bound = observed_bound(lines, le);
  CHECK(std::isfinite(bound));
  const DichotomyReport lr = verify_dichotomy(le, 0.5, bound);
  CHECK(lr.verdict == DichotomyVerdict::all_components_escape);
  CHECK(lr.components.size() == 2);

  const Walk circle = build_chainable_walk(golden_order(circle_points(1.0, 200)), 5);
  const LimitEstimate ce = estimate_limit_set(circle, 0.3, 0.05);
  CHECK(std::isinf(observed_bound(circle, ce)));
  CHECK(verify_dichotomy(ce, 0.2, observed_bound(circle, ce)).verdict == DichotomyVerdict::compact_connected);

  // lines of the estimate are sampled every 1/8 from the fifth phase on
  const Walk hl = gen_halflines(cantor_left_endpoints(6), 5);
  const LimitEstimate he = estimate_limit_set(hl, 0.3, 0.1);
  CHECK(verify_dichotomy(he, 0.2, observed_bound(hl, he)).verdict == DichotomyVerdict::all_components_escape);

  const Walk c0 = gen_c0_two_point(5);
  const LimitEstimate ze = estimate_limit_set(c0, 0.3, 0.2, 2, NormKind::sup);
  CHECK(verify_dichotomy(ze, 0.5, observed_bound(c0, ze)).verdict == DichotomyVerdict::violation);

  CHECK(to_string(DichotomyVerdict::all_components_escape) == "all-components-escape");
}

TEST_CASE("singleton checks") {
  const auto conv = singleton_convergence_check(harmonic_walk(4000), 0.01);
  CHECK(conv.kind == SingletonVerdictKind::converges_to);
  REQUIRE(conv.point);
  CHECK(std::get<Point>(*conv.point)[0].to_double() == doctest::Approx(std::log(2.0)).epsilon(0.01));

  const auto div = singleton_convergence_check(gen_c0_singleton_divergent(6), 0.5, NormKind::sup);
  CHECK(div.kind == SingletonVerdictKind::diverges_with_singleton);
  CHECK(div.tail_max_distance > 0.5);

  const auto rem = singleton_convergence_check(shrinking_loops_walk(40), 0.05);
  CHECK(rem.kind == SingletonVerdictKind::diverges_with_singleton);
  REQUIRE(rem.point);
  CHECK(std::get<Point>(*rem.point)[0].to_double() == doctest::Approx(1.0).epsilon(0.05));

  const auto two = singleton_convergence_check(gen_two_lines(5), 0.1);
  CHECK(two.kind == SingletonVerdictKind::not_singleton);

  Walk tiny = Walk::dense(1, Mode::floating);
  tiny.push_back(Point::real({0.0}));
  CHECK_THROWS(singleton_convergence_check(tiny, 0.1));
}

TEST_CASE("finite-dimensional walks with vanishing steps never diverge with a singleton") {
  const std::vector<Walk> walks{gen_two_lines(5), gen_halflines({0.0, 0.5, 1.0, 0.25, 0.75}, 4),
                                build_chainable_walk(golden_order(circle_points(1.0, 100)), 4), harmonic_walk(3000)};
  for (const auto& w : walks)
    for (double tol : {0.05, 0.2})
      CHECK(singleton_convergence_check(w, tol).kind != SingletonVerdictKind::diverges_with_singleton);
}

TEST_CASE("dense approximation") {
  const auto circle = circle_points(1.0, 40);
  std::vector<Point> dense, approx;
  std::vector<double> eps;
  for (int cycle = 0; cycle < 50; ++cycle)
    for (const auto& p : circle) dense.push_back(p);
  CHECK(dense_approx_check(dense, dense, std::vector<double>(dense.size(), 0.3), PointSample(circle)));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const double e = 1.0 / static_cast<double>(i + 1);
    auto c = dense[i].to_doubles();
    c[0] += 0.5 * e * u(rng);
    c[1] += 0.5 * e * u(rng);
    approx.push_back(Point::real(c));
    eps.push_back(e);
  }
  CHECK(dense_approx_check(dense, approx, eps, PointSample(circle)));

  std::vector<Point> drift;
  for (const auto& p : dense) drift.push_back(Point::real({p[0].to_double() + 1.0, p[1].to_double()}));
  CHECK_THROWS_WITH_AS(dense_approx_check(dense, drift, eps, PointSample(circle)),
                       doctest::Contains("approximant 1"), InvalidArgument);
}

TEST_CASE("cauchy diagnostic") {
  const Walk h = harmonic_walk(2000);
  const double limit = std::log(2.0);
  double dist = 0.0;
  for (std::size_t i = 1000; i < 2000; ++i) dist = std::max(dist, std::abs(h.coord(i, 0) - limit));
  const CauchyReport hc = cauchy_diagnostic(h, 0.5);
  CHECK(hc.max_gap <= 2 * dist);
  REQUIRE(!hc.gap_pairs.empty());
  CHECK(hc.gap_pairs.front().first >= 1001);

  CHECK(cauchy_diagnostic(gen_c0_singleton_divergent(6), 0.6, NormKind::sup).max_gap >= 1.0);

  const Walk lines = gen_two_lines(4);
  const double frac = 0.9 * static_cast<double>(lines.phase_end(3) - lines.phase_begin(3)) / lines.size();
  CHECK(cauchy_diagnostic(lines, frac).max_gap >= 1.0);
}
