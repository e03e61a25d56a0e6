/** @file dyadic.hpp
 *  @brief Exact dyadic rationals m * 2^e with a 64-bit mantissa.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace serwalk {

/// Exact value m * 2^e. Normalized: the mantissa is odd, or zero with e == 0.
/// Every operation is exact; results that do not fit throw std::overflow_error.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t mantissa, int exponent = 0);

  static Dyadic pow2(int exponent) { return Dyadic(1, exponent); }
  /// Exact conversion of a finite double. Returns nullopt for inf/nan or when
  /// the binary expansion is longer than max_fraction_bits after the point.
  static std::optional<Dyadic> from_double(double x, int max_fraction_bits = 1074);

  std::int64_t mantissa() const { return m_; }
  int exponent() const { return e_; }
  bool is_zero() const { return m_ == 0; }
  int sign() const { return (m_ > 0) - (m_ < 0); }

  double to_double() const;
  /// Exact decimal rendering without exponent notation ("0.125", "-3", "0").
  std::string to_decimal() const;

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic scaled(int k) const;  // * 2^k
  Dyadic abs() const { return m_ < 0 ? -*this : *this; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  static Dyadic from_wide(__int128 m, int e);
  std::int64_t m_ = 0;
  int e_ = 0;
};

}  // namespace serwalk
