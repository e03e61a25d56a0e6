#include "serwalk/seqspace.hpp"

#include <algorithm>
#include <numeric>

namespace serwalk {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void require_phases(int phases) {
  if (phases < 1) throw InvalidArgument("phases must be ≥ 1");
}

// Family for half-size h (2h vectors) without the dimension budget.
VectorFamily family_unchecked(int h) {
  VectorFamily fam;
  fam.k = h;
  fam.dim = binomial(2 * h, h);
  fam.vectors.assign(2 * h, SparseVec());
  // 0 stands for +1 and 1 for -1, so sorted order is lexicographic with +1 < -1
  std::vector<int> t(2 * h, 0);
  std::fill(t.begin() + h, t.end(), 1);
  std::uint64_t j = 0;
  do {
    ++j;
    for (int i = 0; i < 2 * h; ++i) fam.vectors[i].set(j, Scalar(Dyadic(t[i] ? -1 : 1)));
  } while (std::next_permutation(t.begin(), t.end()));
  return fam;
}

}  // namespace

VectorFamily gen_vector_family(int k) {
  if (k < 1) throw InvalidArgument("k must be ≥ 1");
  if (k > 5) throw InvalidArgument("dimension budget exceeded");
  return family_unchecked(k);
}

FamilyReport check_vector_family(const VectorFamily& fam) {
  FamilyReport r;
  const int n = 2 * fam.k;
  r.unit_norms = std::all_of(fam.vectors.begin(), fam.vectors.end(),
                             [](const SparseVec& v) { return norm(v, NormKind::sup) == 1.0; });
  SparseVec total;
  for (const auto& v : fam.vectors) total = total + v;
  r.sums_to_zero = total.empty();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  r.min_prefix_norm = static_cast<double>(fam.dim) * n;
  do {
    ++r.permutations;
    SparseVec s;
    for (int i = 0; i < fam.k; ++i) s = s + fam.vectors[order[i]];
    r.min_prefix_norm = std::min(r.min_prefix_norm, norm(s, NormKind::sup));
  } while (std::next_permutation(order.begin(), order.end()));
  r.prefix_bound = r.min_prefix_norm >= fam.k;
  return r;
}

Walk gen_c0_two_point(int phases) {
  require_phases(phases);
  const SparseVec theta;
  const SparseVec e1 = SparseVec::basis(1);
  std::vector<std::vector<Element>> schedule;
  schedule.push_back({theta, SparseVec::basis(2), SparseVec::basis(2) + e1, e1});
  for (int k = 1; k < phases; ++k) {
    const std::uint64_t run = std::uint64_t{1} << k;
    const SparseVec up = SparseVec::basis(k + 2, Scalar(Dyadic::pow2(-k)));
    const SparseVec right = SparseVec::basis(1, Scalar(Dyadic::pow2(-k)));
    std::vector<Element> chain{theta};
    SparseVec s;
    for (std::uint64_t i = 0; i < run; ++i) chain.emplace_back(s = s + up);
    for (std::uint64_t i = 0; i < run; ++i) chain.emplace_back(s = s + right);
    for (std::uint64_t i = 0; i < run; ++i) chain.emplace_back(s = s - up);
    schedule.push_back(std::move(chain));
  }
  return drop_anchor(build_xwalk_elements(schedule));
}

Walk gen_c0_singleton_divergent(int phases) {
  require_phases(phases);
  std::vector<std::vector<Element>> schedule;
  for (int k = 1; k <= phases; ++k) {
    const std::uint64_t run = std::uint64_t{1} << (k - 1);
    const SparseVec step = SparseVec::basis(k, Scalar(Dyadic::pow2(1 - k)));
    std::vector<Element> chain{SparseVec()};
    SparseVec s;
    for (std::uint64_t i = 0; i < run; ++i) chain.emplace_back(s = s + step);
    schedule.push_back(std::move(chain));
  }
  return drop_anchor(build_xwalk_elements(schedule));
}

std::vector<SparseVec> no_rp_block(int k) {
  if (k < 1 || k > 3) throw InvalidArgument("kmax must be between 1 and 3");
  std::uint64_t offset = 0;
  for (int i = 1; i < k; ++i) offset += binomial(1u << (i + 1), 1u << i);
  VectorFamily fam = family_unchecked(1 << k);
  std::vector<SparseVec> ys;
  ys.reserve(fam.vectors.size());
  for (const auto& x : fam.vectors) {
    SparseVec y;
    for (const auto& [j, v] : x.entries()) y.set(offset + j, v.scaled(-k));
    ys.push_back(std::move(y));
  }
  return ys;
}

NoRpSeries gen_no_rp_series(int kmax) {
  if (kmax < 1) throw InvalidArgument("kmax must be ≥ 1");
  if (kmax > 3) throw InvalidArgument("kmax must be ≤ 3");
  NoRpSeries out;
  out.offsets.push_back(0);
  for (int k = 1; k <= kmax; ++k) {
    out.offsets.push_back(out.offsets.back() + binomial(1u << (k + 1), 1u << k));
    const std::size_t begin = out.series.terms.size() + 1;
    out.block_begin.push_back(begin);
    auto ys = no_rp_block(k);
    for (const auto& y : ys) {
      out.series.terms.emplace_back(y);
      out.series.terms.emplace_back(-y);
    }
    for (std::size_t i = 0; i < ys.size(); ++i) out.witness.push_back(begin + 2 * i);
    for (std::size_t i = 0; i < ys.size(); ++i) out.witness.push_back(begin + 2 * i + 1);
  }
  out.series.alternating = true;
  return out;
}

std::vector<Point> densify(const std::vector<SparseVec>& vs, std::uint64_t first, std::uint64_t last) {
  std::vector<Point> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    std::vector<Scalar> c(last - first + 1, Scalar(Dyadic()));
    for (const auto& [i, x] : v.entries()) {
      if (i < first || i > last) throw InvalidArgument("support outside the requested coordinates");
      c[i - first] = x;
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace serwalk
