#include "serwalk/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "serwalk/geometry.hpp"

namespace serwalk {

namespace {

void require_phases(int phases) {
  if (phases < 1) throw InvalidArgument("phases must be ≥ 1");
}

Point make2(const Dyadic& x, const Dyadic& y) { return Point::exact({x, y}); }
Point make2(double x, double y) { return Point::real({x, y}); }

template <class T>
T abs_of(const T& v) {
  if constexpr (std::is_same_v<T, Dyadic>) return v.abs();
  else return std::abs(v);
}

// Appends the axis-parallel move from the chain's last point to (x, y), using
// steps of exactly `bound` and a shorter final step.
template <class T>
void move_to(std::vector<Point>& chain, T& cx, T& cy, const T& x, const T& y, const T& bound) {
  auto advance = [&](T& c, const T& target, bool horizontal) {
    while (!(c == target)) {
      T gap = target - c;
      if (abs_of(gap) <= bound) {
        c = target;
      } else {
        c = gap < T{} ? c - bound : c + bound;
      }
      chain.push_back(horizontal ? make2(c, cy) : make2(cx, c));
    }
  };
  advance(cx, x, true);
  advance(cy, y, false);
}

template <class T>
Walk halflines_impl(const std::vector<T>& a, int phases, auto pow2) {
  std::vector<std::vector<Point>> schedule;
  for (int k = 1; k <= phases; ++k) {
    T bound = pow2(1 - k);
    T height = pow2(0) * T(k - 1);
    T cx = a[0], cy = T{};
    std::vector<Point> chain{make2(cx, cy)};
    move_to(chain, cx, cy, cx, height, bound);
    for (int i = 1; i <= k; ++i) {
      move_to(chain, cx, cy, a[i], height, bound);
      move_to(chain, cx, cy, a[i], T{}, bound);
      if (i < k) move_to(chain, cx, cy, a[i], height, bound);
    }
    schedule.push_back(std::move(chain));
  }
  return build_xwalk(schedule);
}

}  // namespace

Walk gen_two_lines(int phases) {
  require_phases(phases);
  const Dyadic zero, one(1);
  std::vector<std::vector<Point>> schedule;
  schedule.push_back({make2(zero, zero), make2(Dyadic(1, -1), zero), make2(one, zero)});
  for (int k = 1; k < phases; ++k) {
    const Dyadic h = Dyadic::pow2(-(k + 1));
    const std::int64_t run = std::int64_t{1} << (k + 1);
    std::vector<Point> chain{make2(zero, zero)};
    Dyadic x, y;
    for (std::int64_t i = 0; i < k * run; ++i) chain.push_back(make2(x, y += h));
    for (std::int64_t i = 0; i < run; ++i) chain.push_back(make2(x += h, y));
    for (std::int64_t i = 0; i < k * run; ++i) chain.push_back(make2(x, y -= h));
    schedule.push_back(std::move(chain));
  }
  return drop_anchor(build_xwalk(schedule));
}

Walk gen_halflines(const std::vector<double>& abscissae, int phases) {
  require_phases(phases);
  if (abscissae.size() < static_cast<std::size_t>(phases) + 1)
    throw InvalidArgument("need at least phases+1 abscissae");
  std::set<double> seen(abscissae.begin(), abscissae.end());
  if (seen.size() != abscissae.size()) throw InvalidArgument("duplicate abscissae");
  std::vector<Dyadic> exact;
  for (double x : abscissae) {
    auto d = Dyadic::from_double(x, 20);
    if (!d) break;
    exact.push_back(*d);
  }
  if (exact.size() == abscissae.size())
    return halflines_impl<Dyadic>(exact, phases, [](int e) { return Dyadic::pow2(e); });
  return halflines_impl<double>(abscissae, phases, [](int e) { return std::ldexp(1.0, e); });
}

std::vector<double> cantor_left_endpoints(std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  out.push_back(0.0);
  for (int level = 1; out.size() < n && level < 30; ++level) {
    // ternary strings of length `level` over {0,2} ending in 2, in increasing order
    const std::uint64_t count = std::uint64_t{1} << (level - 1);
    for (std::uint64_t bits = 0; bits < count && out.size() < n; ++bits) {
      double v = 0.0, scale = 1.0;
      for (int d = 0; d < level; ++d) {
        scale /= 3.0;
        bool two = d == level - 1 || ((bits >> (level - 2 - d)) & 1);
        if (two) v += 2.0 * scale;
      }
      out.push_back(v);
    }
  }
  return out;
}

Walk build_chainable_walk(const std::vector<Point>& dense, int phases) {
  require_phases(phases);
  if (dense.size() < static_cast<std::size_t>(phases) + 1)
    throw InvalidArgument("need at least phases+1 dense points");
  PointSample sample(dense);
  std::vector<std::vector<Point>> schedule;
  for (int i = 1; i <= phases; ++i) {
    const double gap = std::ldexp(1.0, 1 - i);
    std::vector<Point> chain{dense[0]};
    for (int j = 0; j < i; ++j) {
      auto path = gap_chain_indices(sample, gap, static_cast<std::size_t>(j), static_cast<std::size_t>(j) + 1);
      if (!path)
        throw Error("sample too sparse for gap " + format_double(gap) + " at phase " + std::to_string(i));
      for (std::size_t t = 1; t < path->size(); ++t) chain.push_back(dense[(*path)[t]]);
    }
    if (chain.size() == 1) chain.push_back(chain.front());
    schedule.push_back(std::move(chain));
  }
  return build_xwalk(schedule);
}

Walk build_unbounded_components_walk(const std::vector<PointSample>& components,
                                     const std::vector<double>& radii, int phases) {
  require_phases(phases);
  if (components.empty()) throw InvalidArgument("no components");
  for (const auto& c : components)
    if (c.empty() || c.is_sparse()) throw InvalidArgument("components must be nonempty dense samples");
  const std::size_t m = components.front().point(0).dim();
  if (m < 2) throw InvalidArgument("requires dimension ≥ 2");
  if (radii.size() < static_cast<std::size_t>(phases)) throw InvalidArgument("need one radius per phase");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw InvalidArgument("radii must be strictly increasing");
  for (const auto& c : components) {
    double reach = 0.0;
    for (const auto& e : c.points) reach = std::max(reach, norm(e, NormKind::euclidean));
    if (reach < radii[phases - 1])
      throw InvalidArgument("component " + c.label + " does not reach radius " + format_double(radii[phases - 1]));
  }

  const std::size_t nc = components.size();
  auto dense_at = [&](std::size_t j) {  // 0-based d_{j+1}, round-robin over components
    const auto& c = components[j % nc];
    return std::pair{j % nc, (j / nc) % c.size()};
  };
  // outermost sample point inside the sphere, so no sum leaves the ball of the largest radius
  auto nearest_to_sphere = [](const PointSample& s, double r) {
    std::size_t best = s.size();
    double bn = -1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double n = norm(s.points[i], NormKind::euclidean);
      if (n <= r && n > bn) {
        bn = n;
        best = i;
      }
    }
    return best < s.size() ? best : std::size_t{0};
  };
  auto nearest_in = [](const PointSample& s, const Element& p) {
    std::size_t best = 0;
    double bd = distance(s.points[0], p, NormKind::euclidean);
    for (std::size_t i = 1; i < s.size(); ++i) {
      double d = distance(s.points[i], p, NormKind::euclidean);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    return best;
  };

  std::vector<std::vector<Point>> schedule;
  for (int k = 1; k <= phases; ++k) {
    const double gap = std::ldexp(1.0, -k);
    const double radius = radii[k - 1];
    auto fail = [&]() {
      return Error("sample too sparse for gap " + format_double(gap) + " at phase " + std::to_string(k));
    };
    std::vector<Point> sphere_pts;
    for (auto& p : circle_by_pitch(radius, gap)) {
      std::vector<double> xs = p.to_doubles();
      xs.resize(m, 0.0);
      sphere_pts.push_back(Point::real(xs));
    }
    PointSample sphere(sphere_pts, "sphere");

    auto append = [](std::vector<Point>& chain, const PointSample& s, const std::vector<std::size_t>& path) {
      for (std::size_t t = 1; t < path.size(); ++t) chain.push_back(s.point(path[t]));
    };
    auto [c0, i0] = dense_at(0);
    std::vector<Point> chain{components[c0].point(i0)};
    for (int j = 0; j < k; ++j) {
      auto [cs, is] = dense_at(j);
      auto [ct, it] = dense_at(j + 1);
      const auto& from = components[cs];
      const auto& to = components[ct];
      std::size_t as = nearest_to_sphere(from, radius);
      std::size_t at = nearest_to_sphere(to, radius);
      std::size_t ss = nearest_in(sphere, from.points[as]);
      std::size_t st = nearest_in(sphere, to.points[at]);
      if (distance(from.points[as], sphere.points[ss], NormKind::euclidean) > gap ||
          distance(to.points[at], sphere.points[st], NormKind::euclidean) > gap)
        throw fail();
      auto up = gap_chain_indices(from, gap, is, as);
      auto across = gap_chain_indices(sphere, gap, ss, st);
      auto down = gap_chain_indices(to, gap, at, it);
      if (!up || !across || !down) throw fail();
      append(chain, from, *up);
      chain.push_back(sphere.point(ss));
      append(chain, sphere, *across);
      chain.push_back(to.point(at));
      append(chain, to, *down);
    }
    schedule.push_back(std::move(chain));
  }
  return build_xwalk(schedule);
}

std::vector<Point> circle_points(double radius, std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    out.push_back(Point::real({radius * std::cos(t), radius * std::sin(t)}));
  }
  return out;
}

std::vector<Point> circle_by_pitch(double radius, double pitch) {
  auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * radius / pitch));
  return circle_points(radius, std::max<std::size_t>(n, 3));
}

std::vector<Point> segment_points(const Point& a, const Point& b, double pitch) {
  double len = distance(a, b, NormKind::euclidean);
  auto n = static_cast<std::size_t>(std::ceil(len / pitch));
  if (n == 0) return {Point::real(a.to_doubles())};
  auto xa = a.to_doubles();
  auto xb = b.to_doubles();
  std::vector<Point> out;
  for (std::size_t i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(n);
    std::vector<double> x(xa.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = xa[k] + t * (xb[k] - xa[k]);
    out.push_back(Point::real(x));
  }
  return out;
}

std::vector<Point> two_lines_sample(double height, double pitch) {
  auto left = segment_points(Point::real({0, 0}), Point::real({0, height}), pitch);
  auto right = segment_points(Point::real({1, 0}), Point::real({1, height}), pitch);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

std::vector<Point> golden_order(const std::vector<Point>& circle) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<bool> used(circle.size(), false);
  std::vector<Point> out;
  out.reserve(circle.size());
  for (std::size_t n = 0; n < circle.size(); ++n) {
    double t = std::fmod(golden * static_cast<double>(n), 2.0 * std::numbers::pi);
    std::size_t best = circle.size();
    double bd = 0.0;
    for (std::size_t i = 0; i < circle.size(); ++i) {
      if (used[i]) continue;
      auto x = circle[i].to_doubles();
      double d = std::abs(std::remainder(std::atan2(x[1], x[0]) - t, 2.0 * std::numbers::pi));
      if (best == circle.size() || d < bd) {
        best = i;
        bd = d;
      }
    }
    used[best] = true;
    out.push_back(circle[best]);
  }
  return out;
}

}  // namespace serwalk
