/** @file generators.hpp
 *  @brief The R^m walk constructions and the samples used as target sets.
 */
#pragma once

#include <vector>

#include "serwalk/walk.hpp"

namespace serwalk {

/// Two vertical lines {0,1} x [0, inf): phase k+1 climbs to height k with steps 2^-(k+1).
Walk gen_two_lines(int phases);

/// Vertical half-lines {a_n} x [0, inf): phase k visits a_1..a_{k+1} along y = k-1
/// with steps at most 2^(1-k). Exact mode when every abscissa is a short dyadic.
Walk gen_halflines(const std::vector<double>& abscissae, int phases);

/// Left endpoints of the Cantor construction: 0, 2/3, 2/9, 8/9, 2/27, ...
std::vector<double> cantor_left_endpoints(std::size_t n);

/// Phase i is a 2^(1-i)-chain inside the sample from d_1 through d_2, ..., d_{i+1},
/// walked out and back from d_1.
Walk build_chainable_walk(const std::vector<Point>& dense, int phases);

/// Phase k joins d_1, ..., d_{k+1} (taken round-robin from the components) by
/// 2^-k-chains that pass through the sphere S(0, R_k), then returns.
Walk build_unbounded_components_walk(const std::vector<PointSample>& components,
                                     const std::vector<double>& radii, int phases);

// ---- samples ----

/// n points of the circle of radius r about the origin, counter-clockwise from angle 0.
std::vector<Point> circle_points(double radius, std::size_t n);
/// Circle points with chord spacing at most pitch.
std::vector<Point> circle_by_pitch(double radius, double pitch);
/// Points from a to b with spacing at most pitch, endpoints included.
std::vector<Point> segment_points(const Point& a, const Point& b, double pitch);
/// {0,1} x [0,h] at the given pitch.
std::vector<Point> two_lines_sample(double height, double pitch);
/// Reorders circle points so consecutive ones are a golden angle apart.
std::vector<Point> golden_order(const std::vector<Point>& circle);

}  // namespace serwalk
