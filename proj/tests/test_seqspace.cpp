#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "serwalk/analysis.hpp"
#include "serwalk/geometry.hpp"
#include "serwalk/seqspace.hpp"

using namespace serwalk;

namespace {

SparseVec e(std::uint64_t i, Dyadic v = Dyadic(1)) { return SparseVec::basis(i, Scalar(v)); }

// sign patterns with k plus and k minus signs, +1 before -1
std::vector<std::vector<int>> patterns(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(2 * k);
  auto rec = [&](auto&& self, int pos, int plus) -> void {
    const int minus = pos - plus;
    if (pos == 2 * k) {
      out.push_back(t);
      return;
    }
    if (plus < k) {
      t[pos] = 1;
      self(self, pos + 1, plus + 1);
    }
    if (minus < k) {
      t[pos] = -1;
      self(self, pos + 1, plus);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("vector family k = 1") {
  const VectorFamily f = gen_vector_family(1);
  CHECK(f.dim == 2);
  REQUIRE(f.vectors.size() == 2);
  CHECK(f.vectors[0] == e(1) + e(2, Dyadic(-1)));
  CHECK(f.vectors[1] == e(1, Dyadic(-1)) + e(2));
}

TEST_CASE("vector families match the sign-pattern oracle") {
  for (int k = 1; k <= 4; ++k) {
    const VectorFamily f = gen_vector_family(k);
    const auto ts = patterns(k);
    REQUIRE(f.dim == ts.size());
    CHECK(f.dim == binomial(2 * k, k));
    for (int i = 0; i < 2 * k; ++i)
      for (std::size_t j = 0; j < ts.size(); ++j)
        CHECK(f.vectors[i].get(j + 1).to_double() == ts[j][i]);
  }
  CHECK_THROWS_WITH(gen_vector_family(6), "dimension budget exceeded");
}

TEST_CASE("vector family properties, exhaustively") {
  for (int k = 1; k <= 3; ++k) {
    const FamilyReport r = check_vector_family(gen_vector_family(k));
    CHECK(r.unit_norms);
    CHECK(r.sums_to_zero);
    CHECK(r.prefix_bound);
    CHECK(r.min_prefix_norm >= k);
    std::uint64_t fact = 1;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    CHECK(r.permutations == fact);
  }
  // independent brute force for k = 2
  const VectorFamily f = gen_vector_family(2);
  std::vector<int> perm{0, 1, 2, 3};
  do {
    const SparseVec s = f.vectors[perm[0]] + f.vectors[perm[1]];
    CHECK(norm(s, NormKind::sup) >= 2.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("c0 two-point walk") {
  const Walk w = gen_c0_two_point(1);
  REQUIRE(w.size() == 6);
  CHECK(w.sparse_at(0) == e(2));
  CHECK(w.sparse_at(1) == e(2) + e(1));
  CHECK(w.sparse_at(2) == e(1));
  CHECK(w.sparse_at(3) == e(2) + e(1));
  CHECK(w.sparse_at(4) == e(2));
  CHECK(w.sparse_at(5).empty());

  const Walk w2 = gen_c0_two_point(2);
  REQUIRE(w2.size() > 10);
  CHECK(w2.sparse_at(6) == e(3, Dyadic(1, -1)));
  CHECK(w2.sparse_at(7) == e(3));
  CHECK(w2.sparse_at(8) == e(3) + e(1, Dyadic(1, -1)));
  CHECK(w2.sparse_at(9) == e(3) + e(1));
  CHECK(w2.sparse_at(w2.size() - 1).empty());
  CHECK_THROWS(gen_c0_two_point(0));
}

TEST_CASE("c0 two-point properties") {
  const Walk w = gen_c0_two_point(5);
  for (std::size_t p = 0; p < w.phase_count(); ++p) {
    CHECK(w.sparse_at(w.phase_end(p) - 1).empty());
    std::size_t e1 = 0;
    for (std::size_t i = w.phase_begin(p); i < w.phase_end(p); ++i) {
      const SparseVec& s = w.sparse_at(i);
      if (s == e(1)) ++e1;
      const double x1 = s.get(1).to_double();
      CHECK((x1 >= 0.0 && x1 <= 1.0));
      if (x1 > 0.0 && x1 < 1.0) {
        bool has_one = false;
        for (const auto& [j, v] : s.entries())
          if (j >= 2 && v.to_double() == 1.0) has_one = true;
        CHECK(has_one);
      }
      // coordinate j >= 2 is used by phase j - 1 only
      for (const auto& [j, v] : s.entries())
        if (j >= 2) CHECK(j == p + 2);
    }
    CHECK(e1 == 1);
  }
  const LimitEstimate est = estimate_limit_set(w, 0.3, 0.2, 2, NormKind::sup);
  REQUIRE(est.points.size() == 2);
  const PointSample two(std::vector<SparseVec>{SparseVec(), e(1)});
  CHECK(hausdorff_distance(est.points, two, NormKind::sup) < 0.2);
}

TEST_CASE("c0 singleton divergent") {
  const Walk w = gen_c0_singleton_divergent(2);
  REQUIRE(w.size() >= 6);
  CHECK(w.sparse_at(0) == e(1));
  CHECK(w.sparse_at(1).empty());
  CHECK(w.sparse_at(2) == e(2, Dyadic(1, -1)));
  CHECK(w.sparse_at(3) == e(2));
  CHECK(w.sparse_at(4) == e(2, Dyadic(1, -1)));
  CHECK(w.sparse_at(5).empty());

  const int phases = 6;
  const Walk big = gen_c0_singleton_divergent(phases);
  for (int k = 1; k <= phases; ++k) {
    const std::size_t theta = (std::size_t{1} << (k + 1)) - 2;
    REQUIRE(theta <= big.size());
    CHECK(big.sparse_at(theta - 1).empty());
    if (k >= 2) {
      const std::size_t peak = (std::size_t{1} << k) + (std::size_t{1} << (k - 1)) - 2;
      CHECK(big.sparse_at(peak - 1) == e(k));
      CHECK(distance(big.sparse_at(peak - 1), big.sparse_at(theta - 1), NormKind::sup) == 1.0);
    }
  }
  CHECK_THROWS(gen_c0_singleton_divergent(0));
}

TEST_CASE("c0 singleton: one limit point, not Cauchy") {
  const Walk w = gen_c0_singleton_divergent(6);
  const LimitEstimate est = estimate_limit_set(w, 0.5, 0.2, 2, NormKind::sup);
  REQUIRE(est.points.size() == 1);
  CHECK(norm(est.points.points[0], NormKind::sup) < 0.2);
  CHECK(cauchy_diagnostic(w, 0.5, NormKind::sup).max_gap >= 1.0);
}

TEST_CASE("no-RP series") {
  const NoRpSeries s = gen_no_rp_series(1);
  CHECK(s.series.is_alternating());
  REQUIRE(s.series.terms.size() == 8);
  const auto y = no_rp_block(1);
  REQUIRE(y.size() == 4);
  const VectorFamily f = gen_vector_family(2);
  for (int i = 0; i < 4; ++i) {
    CHECK(y[i] == f.vectors[i].scaled(-1));
    CHECK(s.series.terms[2 * i] == Element(y[i]));
    CHECK(s.series.terms[2 * i + 1] == Element(-y[i]));
    for (const auto& [j, v] : y[i].entries()) CHECK((j >= 1 && j <= 6));
  }
  CHECK_THROWS(gen_no_rp_series(4));
}

TEST_CASE("no-RP series: coordinates, offsets and witness order") {
  const NoRpSeries s = gen_no_rp_series(3);
  CHECK(s.offsets == std::vector<std::uint64_t>{0, 6, 6 + 70, 6 + 70 + 12870});
  CHECK(s.series.is_alternating());
  std::map<std::uint64_t, std::pair<int, Dyadic>> per_coord;
  for (const auto& t : s.series.terms)
    for (const auto& [j, v] : std::get<SparseVec>(t).entries()) {
      ++per_coord[j].first;
      per_coord[j].second += v.dyadic();
    }
  for (const auto& [j, c] : per_coord) {
    CHECK(c.second.is_zero());
    CHECK(c.first > 0);
  }
  // partial sums at block ends are exactly zero
  const auto sums = s.series.partial_sums();
  for (std::size_t b = 1; b < s.block_begin.size(); ++b) CHECK(std::get<SparseVec>(sums[s.block_begin[b] - 2]).empty());
  CHECK(std::get<SparseVec>(sums.back()).empty());

  // witness order puts the first 2^k scaled vectors first: sup norm of that prefix is 1
  CHECK(s.witness.is_permutation());
  const auto reordered = apply_permutation(s.series, s.witness);
  for (int k = 1; k <= 3; ++k) {
    const std::size_t first = s.block_begin[k - 1] - 1, half = std::size_t{1} << k;
    SparseVec acc;
    for (std::size_t i = 0; i < half; ++i) acc = acc + std::get<SparseVec>(reordered.terms[first + i]);
    CHECK(norm(acc, NormKind::sup) == 1.0);
  }
}

TEST_CASE("no-RP blocks: every order has a prefix of sup norm 1") {
  for (int k = 1; k <= 2; ++k) {
    const auto y = no_rp_block(k);
    REQUIRE(y.size() == (std::size_t{1} << (k + 1)));
    std::vector<int> idx(y.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::uint64_t count = 0, bad = 0;
    do {
      ++count;
      SparseVec acc;
      for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) acc = acc + y[idx[i]];
      if (norm(acc, NormKind::sup) < 1.0) ++bad;
    } while (std::next_permutation(idx.begin(), idx.end()));
    CHECK(count == (k == 1 ? 24u : 40320u));
    CHECK(bad == 0);
  }
}
