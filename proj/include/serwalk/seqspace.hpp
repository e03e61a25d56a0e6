/** @file seqspace.hpp
 *  @brief Constructions in c0: two-point and singleton limit sets, sign-pattern
 *  vector families and the series without the Rearrangement Property.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "serwalk/walk.hpp"

namespace serwalk {

struct VectorFamily {
  int k = 0;
  std::size_t dim = 0;             // binomial(2k, k)
  std::vector<SparseVec> vectors;  // 2k vectors, coordinates 1..dim
};

/// x_i(j) = t_j(i) over all sign patterns t with k entries +1 and k entries -1,
/// enumerated lexicographically with +1 < -1. Throws for k > 5.
VectorFamily gen_vector_family(int k);

struct FamilyReport {
  bool unit_norms = false;        // every vector has sup norm 1
  bool sums_to_zero = false;
  bool prefix_bound = false;      // every permutation: first-k sum has sup norm >= k
  double min_prefix_norm = 0.0;
  std::uint64_t permutations = 0;
};

/// Exhaustive check over all (2k)! orderings.
FamilyReport check_vector_family(const VectorFamily& fam);

/// Sums e_2, e_2+e_1, e_1, e_2+e_1, e_2, theta, then the phase-k+1 detours through e_{k+2}.
Walk gen_c0_two_point(int phases);

/// Block k climbs to e_k in 2^(k-1) steps of 2^-(k-1) and returns to theta.
Walk gen_c0_singleton_divergent(int phases);

struct NoRpSeries {
  SignedSeries series;                 // z_1, z_2, ... through block kmax
  PartialPermutation witness;          // each block's y's before its -y's
  std::vector<std::uint64_t> offsets;  // n_0 = 0, n_1, ..., n_kmax
  std::vector<std::size_t> block_begin;  // 1-based index of each block's first z
};

/// Throws for kmax > 3.
NoRpSeries gen_no_rp_series(int kmax);

/// The 2^(k+1) scaled vectors y_i^(k) of block k, sparse over coordinates n_{k-1}+1..n_k.
std::vector<SparseVec> no_rp_block(int k);

/// Dense copies of sparse vectors over coordinates first..last (1-based, inclusive).
std::vector<Point> densify(const std::vector<SparseVec>& vs, std::uint64_t first, std::uint64_t last);

std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace serwalk
