#include "serwalk/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace serwalk {

namespace {

constexpr int kExpLimit = 1 << 20;

[[noreturn]] void overflow() { throw std::overflow_error("dyadic overflow"); }

int bit_length(unsigned __int128 v) {
  int n = 0;
  while (v) {
    v >>= 1;
    ++n;
  }
  return n;
}

}  // namespace

Dyadic::Dyadic(std::int64_t mantissa, int exponent) {
  *this = from_wide(mantissa, exponent);
}

Dyadic Dyadic::from_wide(__int128 m, int e) {
  Dyadic r;
  if (m == 0) return r;
  while ((m & 1) == 0) {
    m >>= 1;
    ++e;
  }
  if (m > INT64_MAX || m < -static_cast<__int128>(INT64_MAX)) overflow();
  if (e > kExpLimit || e < -kExpLimit) overflow();
  r.m_ = static_cast<std::int64_t>(m);
  r.e_ = e;
  return r;
}

std::optional<Dyadic> Dyadic::from_double(double x, int max_fraction_bits) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Dyadic();
  int e = 0;
  double frac = std::frexp(x, &e);  // x = frac * 2^e, 0.5 <= |frac| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  Dyadic d = from_wide(m, e - 53);
  if (d.e_ < -max_fraction_bits) return std::nullopt;
  return d;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(m_), e_); }

std::string Dyadic::to_decimal() const {
  if (m_ == 0) return "0";
  unsigned __int128 mag = m_ < 0 ? -static_cast<__int128>(m_) : m_;
  // little-endian base-10 digits of |m|
  std::vector<int> digits;
  while (mag) {
    digits.push_back(static_cast<int>(mag % 10));
    mag /= 10;
  }
  auto mul_small = [&digits](int f) {
    int carry = 0;
    for (int& d : digits) {
      int v = d * f + carry;
      d = v % 10;
      carry = v / 10;
    }
    while (carry) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  };
  int point = 0;  // digits after the decimal point
  if (e_ >= 0) {
    for (int i = 0; i < e_; ++i) mul_small(2);
  } else {
    // m / 2^k == m * 5^k / 10^k
    for (int i = 0; i < -e_; ++i) mul_small(5);
    point = -e_;
  }
  while (static_cast<int>(digits.size()) <= point) digits.push_back(0);
  std::string out = m_ < 0 ? "-" : "";
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    out.push_back(static_cast<char>('0' + digits[i]));
    if (i == point && point > 0) out.push_back('.');
  }
  if (point > 0) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.m_ = -m_;
  return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  if (m_ == 0) return o;
  if (o.m_ == 0) return *this;
  const Dyadic& lo = e_ <= o.e_ ? *this : o;
  const Dyadic& hi = e_ <= o.e_ ? o : *this;
  int shift = hi.e_ - lo.e_;
  if (shift > 62) overflow();
  __int128 h = static_cast<__int128>(hi.m_) << shift;
  return from_wide(h + lo.m_, lo.e_);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  if (m_ == 0 || o.m_ == 0) return Dyadic();
  return from_wide(static_cast<__int128>(m_) * o.m_, e_ + o.e_);
}

Dyadic Dyadic::scaled(int k) const {
  if (m_ == 0) return *this;
  return from_wide(m_, e_ + k);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.sign() == 0) return std::strong_ordering::equal;
  unsigned __int128 ma = a.m_ < 0 ? -static_cast<__int128>(a.m_) : a.m_;
  unsigned __int128 mb = b.m_ < 0 ? -static_cast<__int128>(b.m_) : b.m_;
  // compare magnitudes, then flip for negatives
  std::strong_ordering mag = std::strong_ordering::equal;
  int la = bit_length(ma) + a.e_;
  int lb = bit_length(mb) + b.e_;
  if (la != lb) {
    mag = la <=> lb;
  } else {
    int emin = std::min(a.e_, b.e_);
    mag = (ma << (a.e_ - emin)) <=> (mb << (b.e_ - emin));
  }
  if (a.sign() > 0) return mag;
  return 0 <=> mag;
}

}  // namespace serwalk
