/** @file walk.hpp
 *  @brief Walks (prefixes of partial sums), signed series and partial permutations.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "serwalk/core.hpp"

namespace serwalk {

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element neg(const Element& a);
Element zero_like(const Element& a);

/// Injective map from positions 1..k to positive integers.
class PartialPermutation {
 public:
  PartialPermutation() = default;
  static PartialPermutation identity(std::size_t n);
  static PartialPermutation from_images(const std::vector<std::uint64_t>& images);

  void push_back(std::uint64_t image);
  std::size_t size() const { return images_.size(); }
  /// Image of position pos (1-based).
  std::uint64_t operator()(std::size_t pos) const { return images_.at(pos - 1); }
  const std::vector<std::uint64_t>& images() const { return images_; }
  bool contains(std::uint64_t v) const { return v < used_.size() && used_[v]; }
  std::uint64_t max_image() const { return max_; }
  /// Largest M with [1, M] inside the range.
  std::uint64_t covered_prefix() const { return covered_; }
  bool covers(std::uint64_t m) const { return covered_ >= m; }
  /// True when the range is exactly [1, size].
  bool is_permutation() const { return covered_ == images_.size(); }
  PartialPermutation inverse() const;
  void reserve(std::size_t n) { images_.reserve(n); }

 private:
  std::vector<std::uint64_t> images_;
  std::vector<bool> used_;  // indexed by image value
  std::uint64_t max_ = 0;
  std::uint64_t covered_ = 0;
};

struct SignedSeries {
  std::vector<Element> terms;
  bool alternating = false;

  /// Checks terms[2n+1] == -terms[2n] exactly for every stored pair.
  bool is_alternating() const;
  /// Partial sums starting from start (or from zero when start is empty).
  std::vector<Element> partial_sums() const;
};

/// Finite prefix s_1..s_P of a walk plus its phase structure.
///
/// The walk starts from an origin s_0 that is not stored as a sum (the empty
/// partial sum). For walks produced from series the origin is the anchor of
/// every out-and-back phase; build_xwalk instead stores the anchor as s_1.
class Walk {
 public:
  static Walk dense(std::size_t dim, Mode mode);
  static Walk sparse();

  bool is_sparse() const { return sparse_; }
  std::size_t dim() const { return dim_; }
  Mode mode() const { return mode_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  void reserve(std::size_t n);

  void push_back(const Element& e);
  void push_back(const Point& p);
  void push_back(const SparseVec& v);
  /// Floating dense walks only.
  void push_back_real(const double* row);

  Element at(std::size_t i) const;  // 0-based
  Point point(std::size_t i) const;
  const SparseVec& sparse_at(std::size_t i) const { return sparse_rows_.at(i); }
  double coord(std::size_t i, std::size_t c) const;
  /// Floating dense walks only.
  const double* real_row(std::size_t i) const { return real_.data() + i * dim_; }
  std::vector<double> row_doubles(std::size_t i) const;
  double norm_at(std::size_t i, NormKind kind) const;
  double distance_between(std::size_t i, std::size_t j, NormKind kind) const;

  const Element& origin() const { return origin_; }
  bool origin_is_anchor() const { return origin_is_anchor_; }
  void set_origin(Element o, bool is_anchor);

  /// Closes the current phase at the current size.
  void end_phase(double step_bound);
  /// Closes the current phase at an earlier position, for readers that load all sums first.
  void end_phase_at(std::size_t end, double step_bound);
  std::size_t phase_count() const { return phase_ends_.size(); }
  std::size_t phase_begin(std::size_t p) const { return p == 0 ? 0 : phase_ends_[p - 1]; }
  std::size_t phase_end(std::size_t p) const { return phase_ends_[p]; }
  std::size_t phase_of(std::size_t i) const;
  const std::vector<std::size_t>& phase_ends() const { return phase_ends_; }
  const std::vector<double>& phase_step_bounds() const { return step_bounds_; }

  /// Out-and-back walks: the n_k of the X-walk definition. Otherwise the phase sizes.
  std::vector<std::size_t> phase_lengths() const;
  bool is_xwalk() const { return xwalk_; }
  void set_xwalk(bool v) { xwalk_ = v; }

  /// Anchor followed by the non-anchor sums, as used by the palindrome condition.
  Element anchor() const;
  std::size_t trajectory_offset() const { return origin_is_anchor_ ? 0 : 1; }

 private:
  bool sparse_ = false;
  std::size_t dim_ = 0;
  Mode mode_ = Mode::exact;
  std::vector<Dyadic> exact_;
  std::vector<double> real_;
  std::vector<SparseVec> sparse_rows_;
  Element origin_;
  bool origin_is_anchor_ = true;
  bool xwalk_ = false;
  std::vector<std::size_t> phase_ends_;
  std::vector<double> step_bounds_;
};

/// Out-and-back walk: every chain is traversed forward and then backward.
/// The anchor (first point of the first chain) is stored as s_1.
Walk build_xwalk(const std::vector<std::vector<Point>>& schedule);
Walk build_xwalk_elements(const std::vector<std::vector<Element>>& schedule);

/// Same walk with the anchor moved out of the stored sums into the origin.
Walk drop_anchor(const Walk& w);

/// Checks the palindrome condition of every phase.
bool satisfies_palindrome(const Walk& w, double tol = 0.0);

struct SeriesOfWalk {
  SignedSeries series;         // y_n in walk order
  PartialPermutation sigma;    // alternating order: x_n = y_{sigma(n)}
};

/// Steps of an out-and-back walk and the pairing that makes them alternating.
/// Throws Error("not an X-walk") when a phase is not palindromic.
SeriesOfWalk walk_to_series(const Walk& w);

/// Reorders by sigma: out[n] = terms[sigma(n)].
SignedSeries apply_permutation(const SignedSeries& s, const PartialPermutation& sigma);

/// Anchor plus running sums of the terms; reproduces the non-anchor sums of w.
std::vector<Element> reaccumulate(const Element& anchor, const std::vector<Element>& terms);

}  // namespace serwalk
