/** @file analysis.hpp
 *  @brief Finite-prefix estimates of limit sets and the structural checks run on them.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "serwalk/walk.hpp"

namespace serwalk {

struct LimitEstimate {
  PointSample points;
  std::size_t window_start = 0;  // 0-based, inclusive
  std::size_t window_end = 0;    // exclusive
  double resolution = 0.0;
  NormKind kind = NormKind::euclidean;
  std::vector<std::size_t> hit_counts;
  /// True when hits count distinct phases rather than visits.
  bool phase_hits = false;
};

/// Window [start, size) used by estimate_limit_set. For walks with two or more
/// phases the start is moved back to a phase start so that at least the last
/// two phases are covered.
std::pair<std::size_t, std::size_t> estimate_window(const Walk& w, double window_fraction);

/// Grid cells of pitch `resolution` visited in the window. A cell's hit count is
/// the number of distinct phases visiting it (visits, for walks with fewer than
/// two phases). Cells with at least min_hits are kept in order of decreasing
/// hits; a cell within resolution/2 of an already kept cell is dropped. Each
/// point is the centroid of the visits of its cell.
/// Sparse walks use cells over (coordinate, floor(value/resolution)) pairs.
LimitEstimate estimate_limit_set(const Walk& w, double window_fraction = 0.3, double resolution = 0.1,
                                 std::size_t min_hits = 2, NormKind kind = NormKind::euclidean);

enum class DichotomyVerdict { compact_connected, all_components_escape, violation };
std::string to_string(DichotomyVerdict v);

struct DichotomyReport {
  DichotomyVerdict verdict = DichotomyVerdict::violation;
  std::vector<std::vector<std::size_t>> components;  // estimate point indices
  std::vector<double> reach;                         // largest norm in each component
  double bound = 0.0;
  double gap = 0.0;
};

/// Components at `gap`; a component escapes when its largest norm is >= bound - gap.
/// One non-escaping component is compact-connected; all escaping is
/// all-components-escape; anything else is a violation.
DichotomyReport verify_dichotomy(const LimitEstimate& est, double gap, double bound);

/// Shell radius for verify_dichotomy: when the per-phase largest norms grow
/// strictly across the phases of the window, the largest norm of the earliest
/// such phase; otherwise +infinity (the walk shows no sign of escaping).
double observed_bound(const Walk& w, const LimitEstimate& est);

enum class SingletonVerdictKind { converges_to, diverges_with_singleton, not_singleton };
std::string to_string(SingletonVerdictKind v);

struct SingletonVerdict {
  SingletonVerdictKind kind = SingletonVerdictKind::not_singleton;
  std::optional<Element> point;
  double tail_max_distance = 0.0;  // largest distance of a last-quarter sum from the point
};

/// Estimates at resolution tol. The estimate counts as a singleton when every
/// point lies within tol of the most-hit one.
SingletonVerdict singleton_convergence_check(const Walk& w, double tol, NormKind kind = NormKind::euclidean,
                                             double window_fraction = 0.3);

/// Checks ||approximants_i - dense_i|| < epsilons_i, then compares the estimate of
/// the approximant sequence with the target within 2 * (largest epsilon in the
/// window) + resolution. Throws InvalidArgument naming the first bad index.
bool dense_approx_check(const std::vector<Point>& dense, const std::vector<Point>& approximants,
                        const std::vector<double>& epsilons, const PointSample& target,
                        double resolution = 0.05, NormKind kind = NormKind::euclidean);

struct CauchyReport {
  double max_gap = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> gap_pairs;  // 1-based sum indices, at most 64
};

/// Largest distance between two sums of the last tail_fraction of the walk.
CauchyReport cauchy_diagnostic(const Walk& w, double tail_fraction, NormKind kind = NormKind::euclidean);

}  // namespace serwalk
