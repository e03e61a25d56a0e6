#include "serwalk/series.hpp"

#include <cmath>

namespace serwalk {

double Series::term_norm(std::uint64_t n, NormKind kind) const {
  std::vector<double> x(dim());
  term(n, x.data());
  double acc = 0.0;
  for (double v : x) acc = kind == NormKind::sup ? std::max(acc, std::abs(v)) : acc + v * v;
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

Point Series::term_point(std::uint64_t n) const {
  std::vector<double> x(dim());
  term(n, x.data());
  return Point::real(x);
}

std::uint64_t Series::first_index_with_norm_at_most(double t, NormKind kind) const {
  for (std::uint64_t n = 1; n <= length(); ++n)
    if (term_norm(n, kind) <= t) return n;
  return length() + 1;
}

PrefixSeries::PrefixSeries(const std::vector<Point>& terms) {
  if (terms.empty()) throw InvalidArgument("empty series prefix");
  dim_ = terms.front().dim();
  flat_.reserve(terms.size() * dim_);
  for (const auto& p : terms) {
    if (p.dim() != dim_) throw InvalidArgument("dimension mismatch");
    for (const auto& c : p.coords()) flat_.push_back(c.to_double());
  }
}

PrefixSeries::PrefixSeries(std::size_t dim, std::vector<double> flat) : dim_(dim), flat_(std::move(flat)) {
  if (dim_ == 0 || flat_.size() % dim_ != 0) throw InvalidArgument("bad flat series layout");
}

void PrefixSeries::term(std::uint64_t n, double* out) const {
  const double* row = flat_.data() + (n - 1) * dim_;
  std::copy(row, row + dim_, out);
}

FullRangeSeries::FullRangeSeries(std::size_t dim, Profile profile, std::uint64_t length, std::uint64_t block_growth)
    : dim_(dim), profile_(profile), length_(length), growth_(block_growth) {
  if (dim_ == 0) throw InvalidArgument("dimension must be at least 1");
  if (growth_ < 2) throw InvalidArgument("block growth must be at least 2");
}

double FullRangeSeries::axis_value(std::uint64_t j) const {
  if (profile_ == Profile::harmonic) return (j % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(j);
  std::uint64_t r = j - 1;
  std::uint64_t len = kBlockBase;
  int b = 0;
  while (r >= len) {
    r -= len;
    len *= growth_;
    ++b;
  }
  return std::ldexp(r % 2 == 0 ? 1.0 : -1.0, -b);
}

double FullRangeSeries::value(std::uint64_t n) const { return axis_value((n - 1) / dim_ + 1); }

void FullRangeSeries::term(std::uint64_t n, double* out) const {
  std::fill(out, out + dim_, 0.0);
  out[axis(n)] = value(n);
}

double FullRangeSeries::term_norm(std::uint64_t n, NormKind) const { return std::abs(value(n)); }

std::uint64_t FullRangeSeries::first_index_with_norm_at_most(double t, NormKind) const {
  if (!(t > 0.0)) return length_ == UINT64_MAX ? length_ : length_ + 1;
  std::uint64_t j = 1;  // first axis position with |value| <= t
  if (profile_ == Profile::harmonic) {
    j = static_cast<std::uint64_t>(std::ceil(1.0 / t));
    while (j > 1 && 1.0 / static_cast<double>(j - 1) <= t) --j;
    while (1.0 / static_cast<double>(j) > t) ++j;
  } else {
    std::uint64_t len = kBlockBase;
    for (int b = 0; std::ldexp(1.0, -b) > t; ++b) {
      j += len;
      len *= growth_;
    }
  }
  // axis position j is reached first on axis 0
  std::uint64_t n = (j - 1) * dim_ + 1;
  return n <= length_ ? n : length_ + 1;
}

}  // namespace serwalk
