#include "serwalk/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace serwalk {

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw InvalidArgument("mode mismatch");
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch");
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

const Dyadic& Scalar::dyadic() const {
  if (!is_exact()) throw InvalidArgument("scalar is not exact");
  return std::get<Dyadic>(v_);
}

double Scalar::to_double() const {
  return is_exact() ? std::get<Dyadic>(v_).to_double() : std::get<double>(v_);
}

bool Scalar::is_zero() const {
  return is_exact() ? std::get<Dyadic>(v_).is_zero() : std::get<double>(v_) == 0.0;
}

std::string Scalar::to_string() const {
  return is_exact() ? std::get<Dyadic>(v_).to_decimal() : format_double(std::get<double>(v_));
}

Scalar Scalar::operator-() const {
  return is_exact() ? Scalar(-std::get<Dyadic>(v_)) : Scalar(-std::get<double>(v_));
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return Scalar(std::get<Dyadic>(v_) + std::get<Dyadic>(o.v_));
  return Scalar(std::get<double>(v_) + std::get<double>(o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::scaled(int k) const {
  if (is_exact()) return Scalar(std::get<Dyadic>(v_).scaled(k));
  return Scalar(std::ldexp(std::get<double>(v_), k));
}

Point Point::exact(std::initializer_list<Dyadic> xs) {
  std::vector<Scalar> c(xs.begin(), xs.end());
  return Point(std::move(c));
}

Point Point::real(std::vector<double> xs) {
  std::vector<Scalar> c;
  c.reserve(xs.size());
  for (double x : xs) c.emplace_back(x);
  return Point(std::move(c));
}

Point Point::zeros(std::size_t dim, Mode mode) {
  return Point(std::vector<Scalar>(dim, mode == Mode::exact ? Scalar(Dyadic()) : Scalar(0.0)));
}

Mode Point::mode() const {
  if (c_.empty()) throw InvalidArgument("point has no coordinates");
  return c_.front().mode();
}

std::vector<double> Point::to_doubles() const {
  std::vector<double> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].to_double();
  return out;
}

Point Point::operator+(const Point& o) const {
  require_same_dim(*this, o);
  std::vector<Scalar> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return Point(std::move(r));
}

Point Point::operator-(const Point& o) const {
  require_same_dim(*this, o);
  std::vector<Scalar> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return Point(std::move(r));
}

Point Point::operator-() const {
  std::vector<Scalar> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return Point(std::move(r));
}

Point Point::scaled(int k) const {
  std::vector<Scalar> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].scaled(k);
  return Point(std::move(r));
}

SparseVec SparseVec::basis(std::uint64_t i, Scalar v) {
  SparseVec s;
  s.set(i, v);
  return s;
}

Scalar SparseVec::get(std::uint64_t i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const Entry& e, std::uint64_t k) { return e.first < k; });
  if (it != e_.end() && it->first == i) return it->second;
  return Scalar(Dyadic());
}

void SparseVec::set(std::uint64_t i, const Scalar& v) {
  if (i == 0) throw InvalidArgument("sparse index must be positive");
  auto it = std::lower_bound(e_.begin(), e_.end(), i,
                             [](const Entry& e, std::uint64_t k) { return e.first < k; });
  bool present = it != e_.end() && it->first == i;
  if (v.is_zero()) {
    if (present) e_.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    e_.insert(it, {i, v});
  }
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
  SparseVec r;
  r.e_.reserve(e_.size() + o.e_.size());
  auto a = e_.begin();
  auto b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      r.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      r.e_.push_back(*b++);
    } else {
      Scalar s = a->second + b->second;
      if (!s.is_zero()) r.e_.emplace_back(a->first, s);
      ++a;
      ++b;
    }
  }
  return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const { return *this + (-o); }

SparseVec SparseVec::operator-() const {
  SparseVec r = *this;
  for (auto& e : r.e_) e.second = -e.second;
  return r;
}

SparseVec SparseVec::scaled(int k) const {
  SparseVec r = *this;
  for (auto& e : r.e_) e.second = e.second.scaled(k);
  return r;
}

PointSample::PointSample(std::vector<Point> pts, std::string lbl) : label(std::move(lbl)) {
  points.reserve(pts.size());
  for (auto& p : pts) points.emplace_back(std::move(p));
}

PointSample::PointSample(std::vector<SparseVec> pts, std::string lbl) : label(std::move(lbl)) {
  points.reserve(pts.size());
  for (auto& p : pts) points.emplace_back(std::move(p));
}

double norm(const Point& v, NormKind kind) {
  double acc = 0.0;
  for (const auto& c : v.coords()) {
    double x = std::abs(c.to_double());
    acc = kind == NormKind::sup ? std::max(acc, x) : acc + x * x;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double norm(const SparseVec& v, NormKind kind) {
  double acc = 0.0;
  for (const auto& [i, c] : v.entries()) {
    double x = std::abs(c.to_double());
    acc = kind == NormKind::sup ? std::max(acc, x) : acc + x * x;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double norm(const Element& v, NormKind kind) {
  return std::visit([kind](const auto& x) { return norm(x, kind); }, v);
}

double distance(std::span<const double> a, std::span<const double> b, NormKind kind) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    acc = kind == NormKind::sup ? std::max(acc, d) : acc + d * d;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double distance(const Point& a, const Point& b, NormKind kind) {
  require_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double d = std::abs(a[i].to_double() - b[i].to_double());
    acc = kind == NormKind::sup ? std::max(acc, d) : acc + d * d;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double distance(const SparseVec& a, const SparseVec& b, NormKind kind) {
  // walk the union of supports without materializing the difference
  double acc = 0.0;
  auto add = [&](double d) {
    d = std::abs(d);
    acc = kind == NormKind::sup ? std::max(acc, d) : acc + d * d;
  };
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() || y != b.entries().end()) {
    if (y == b.entries().end() || (x != a.entries().end() && x->first < y->first)) {
      add((x++)->second.to_double());
    } else if (x == a.entries().end() || y->first < x->first) {
      add((y++)->second.to_double());
    } else {
      add(x->second.to_double() - y->second.to_double());
      ++x;
      ++y;
    }
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double distance(const Element& a, const Element& b, NormKind kind) {
  if (a.index() != b.index()) throw InvalidArgument("cannot compare a point with a sparse vector");
  if (a.index() == 0) return distance(std::get<Point>(a), std::get<Point>(b), kind);
  return distance(std::get<SparseVec>(a), std::get<SparseVec>(b), kind);
}

}  // namespace serwalk
