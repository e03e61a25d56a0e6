/** @file geometry.hpp
 *  @brief Set distances and gap-graph connectivity on finite samples.
 */
#pragma once

#include <optional>
#include <vector>

#include "serwalk/core.hpp"

namespace serwalk {

/// Symmetric Hausdorff distance. Throws InvalidArgument("empty sample").
double hausdorff_distance(const PointSample& a, const PointSample& b,
                          NormKind kind = NormKind::euclidean);

/// Breadth-first chain a = p_0, ..., p_k = b inside the sample with every step <= gap.
/// Ties go to the lowest sample index. nullopt when a and b lie in different components.
std::optional<std::vector<Element>> gap_chainable(const PointSample& a_set, double gap,
                                                  const Element& a, const Element& b,
                                                  NormKind kind = NormKind::euclidean,
                                                  double tol = kMembershipTol);

/// Same search on sample indices.
std::optional<std::vector<std::size_t>> gap_chain_indices(const PointSample& a_set, double gap,
                                                          std::size_t from, std::size_t to,
                                                          NormKind kind = NormKind::euclidean);

/// Blocks of the gap-graph (edges at distance <= gap), as lists of sample indices.
/// Blocks are ordered by their smallest member.
std::vector<std::vector<std::size_t>> gap_components(const PointSample& a_set, double gap,
                                                     NormKind kind = NormKind::euclidean);

/// Index of a sample point within tol of p, if any.
std::optional<std::size_t> find_in_sample(const PointSample& s, const Element& p, NormKind kind,
                                          double tol = kMembershipTol);

/// Smallest gap at which the whole sample is one block (longest minimum-spanning-tree edge).
double connectivity_gap(const PointSample& s, NormKind kind = NormKind::euclidean);

/// Largest pairwise distance with the first attaining index pair.
struct Diameter {
  double value = 0.0;
  std::size_t i = 0, j = 0;
};
Diameter sample_diameter(const PointSample& s, NormKind kind = NormKind::euclidean);

namespace detail {
/// Row-major doubles for a dense sample; empty for sparse samples.
struct Flat {
  std::size_t dim = 0;
  std::vector<double> xs;
  const double* row(std::size_t i) const { return xs.data() + i * dim; }
};
Flat flatten(const PointSample& s);
}  // namespace detail

}  // namespace serwalk
