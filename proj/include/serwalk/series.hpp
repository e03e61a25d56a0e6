/** @file series.hpp
 *  @brief Read-only views of series terms (1-based) used by the rearrangement code.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "serwalk/core.hpp"

namespace serwalk {

class Series {
 public:
  virtual ~Series() = default;
  virtual std::size_t dim() const = 0;
  /// Number of terms available.
  virtual std::uint64_t length() const = 0;
  /// Writes term n (1-based) into out[0..dim).
  virtual void term(std::uint64_t n, double* out) const = 0;
  virtual double term_norm(std::uint64_t n, NormKind kind) const;
  Point term_point(std::uint64_t n) const;
  /// First index whose term norm is <= t, or length()+1 if there is none.
  virtual std::uint64_t first_index_with_norm_at_most(double t, NormKind kind) const;
};

/// A finite list of terms.
class PrefixSeries : public Series {
 public:
  explicit PrefixSeries(const std::vector<Point>& terms);
  PrefixSeries(std::size_t dim, std::vector<double> flat);
  std::size_t dim() const override { return dim_; }
  std::uint64_t length() const override { return flat_.size() / dim_; }
  void term(std::uint64_t n, double* out) const override;

 private:
  std::size_t dim_ = 1;
  std::vector<double> flat_;
};

/// Coordinates of R^m interleaved round-robin: term n lives on axis (n-1) mod m
/// and is the j-th term of that axis, j = (n-1)/m + 1. Each axis is conditionally
/// convergent with divergent positive and negative parts, so the sum range is R^m.
///
/// harmonic:      the j-th axis term is (-1)^(j+1) / j.
/// dyadic_blocks: block b of each axis holds 48 * g^b terms +2^-b, -2^-b, ...
///                with g = block_growth (2 or more). Small targets then cost a
///                number of terms proportional to the distance travelled instead
///                of exponential in it.
class FullRangeSeries : public Series {
 public:
  enum class Profile { harmonic, dyadic_blocks };

  explicit FullRangeSeries(std::size_t dim, Profile profile = Profile::harmonic,
                           std::uint64_t length = UINT64_MAX, std::uint64_t block_growth = 4);
  std::size_t dim() const override { return dim_; }
  std::uint64_t length() const override { return length_; }
  Profile profile() const { return profile_; }
  std::uint64_t block_growth() const { return growth_; }
  void term(std::uint64_t n, double* out) const override;
  double term_norm(std::uint64_t n, NormKind kind) const override;
  std::uint64_t first_index_with_norm_at_most(double t, NormKind kind) const override;

  std::size_t axis(std::uint64_t n) const { return static_cast<std::size_t>((n - 1) % dim_); }
  /// Signed value of term n on its axis.
  double value(std::uint64_t n) const;

  static constexpr std::uint64_t kBlockBase = 48;

 private:
  double axis_value(std::uint64_t j) const;
  std::size_t dim_;
  Profile profile_;
  std::uint64_t length_;
  std::uint64_t growth_;
};

}  // namespace serwalk
