/** @file core.hpp
 *  @brief Scalars, points of R^m, finite-support vectors of c0, samples and norms.
 */
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "serwalk/dyadic.hpp"

namespace serwalk {

/// Runtime failure of a construction or verification.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-side mistake: bad parameters or violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

enum class Mode { exact, floating };
enum class NormKind { euclidean, sup };

/// Default tolerance for set membership of floating points.
inline constexpr double kMembershipTol = 1e-12;

class Scalar {
 public:
  Scalar() : v_(Dyadic()) {}
  Scalar(Dyadic d) : v_(d) {}
  explicit Scalar(double x) : v_(x) {}

  Mode mode() const { return v_.index() == 0 ? Mode::exact : Mode::floating; }
  bool is_exact() const { return v_.index() == 0; }
  const Dyadic& dyadic() const;
  double to_double() const;
  bool is_zero() const;
  /// Exact decimal for dyadic values, shortest round-trip fixed notation for floats.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar scaled(int k) const;  // * 2^k
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

 private:
  std::variant<Dyadic, double> v_;
};

std::string format_double(double x);

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords) : c_(std::move(coords)) {}
  static Point exact(std::initializer_list<Dyadic> xs);
  static Point real(std::vector<double> xs);
  static Point zeros(std::size_t dim, Mode mode);

  std::size_t dim() const { return c_.size(); }
  Mode mode() const;
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }
  std::vector<double> to_doubles() const;

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator-() const;
  Point scaled(int k) const;
  friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }

 private:
  std::vector<Scalar> c_;
};

/// Finite-support element of c0; indices are 1-based and no zero is stored.
class SparseVec {
 public:
  using Entry = std::pair<std::uint64_t, Scalar>;

  SparseVec() = default;
  static SparseVec basis(std::uint64_t i, Scalar v = Scalar(Dyadic(1)));

  Scalar get(std::uint64_t i) const;
  void set(std::uint64_t i, const Scalar& v);
  const std::vector<Entry>& entries() const { return e_; }
  bool empty() const { return e_.empty(); }
  std::size_t support_size() const { return e_.size(); }
  std::uint64_t max_index() const { return e_.empty() ? 0 : e_.back().first; }

  SparseVec operator+(const SparseVec& o) const;
  SparseVec operator-(const SparseVec& o) const;
  SparseVec operator-() const;
  SparseVec scaled(int k) const;
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e_ == b.e_; }

 private:
  std::vector<Entry> e_;  // sorted by index
};

using Element = std::variant<Point, SparseVec>;

struct PointSample {
  std::vector<Element> points;
  std::string label;

  PointSample() = default;
  PointSample(std::vector<Point> pts, std::string lbl = {});
  PointSample(std::vector<SparseVec> pts, std::string lbl = {});
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool is_sparse() const { return !points.empty() && points.front().index() == 1; }
  const Point& point(std::size_t i) const { return std::get<Point>(points[i]); }
};

double norm(const Point& v, NormKind kind);
double norm(const SparseVec& v, NormKind kind);
double norm(const Element& v, NormKind kind);
double distance(const Point& a, const Point& b, NormKind kind);
double distance(const SparseVec& a, const SparseVec& b, NormKind kind);
double distance(const Element& a, const Element& b, NormKind kind);
double distance(std::span<const double> a, std::span<const double> b, NormKind kind);

}  // namespace serwalk
