#include "serwalk/walk.hpp"

#include <algorithm>
#include <cmath>

namespace serwalk {

Element add(const Element& a, const Element& b) {
  if (a.index() != b.index()) throw InvalidArgument("cannot add a point and a sparse vector");
  if (a.index() == 0) return std::get<Point>(a) + std::get<Point>(b);
  return std::get<SparseVec>(a) + std::get<SparseVec>(b);
}

Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

Element neg(const Element& a) {
  if (a.index() == 0) return -std::get<Point>(a);
  return -std::get<SparseVec>(a);
}

Element zero_like(const Element& a) {
  if (a.index() == 1) return SparseVec();
  const auto& p = std::get<Point>(a);
  return Point::zeros(p.dim(), p.mode());
}

// ---- PartialPermutation ----

PartialPermutation PartialPermutation::identity(std::size_t n) {
  PartialPermutation p;
  p.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) p.push_back(i);
  return p;
}

PartialPermutation PartialPermutation::from_images(const std::vector<std::uint64_t>& images) {
  PartialPermutation p;
  p.reserve(images.size());
  for (auto v : images) p.push_back(v);
  return p;
}

void PartialPermutation::push_back(std::uint64_t image) {
  if (image == 0) throw InvalidArgument("permutation images are positive");
  if (contains(image)) throw Error("partial permutation is not injective");
  if (image >= used_.size()) used_.resize(std::max<std::uint64_t>(image + 1, used_.size() * 2), false);
  used_[image] = true;
  images_.push_back(image);
  max_ = std::max(max_, image);
  while (covered_ + 1 < used_.size() && used_[covered_ + 1]) ++covered_;
}

PartialPermutation PartialPermutation::inverse() const {
  if (!is_permutation()) throw InvalidArgument("inverse needs a permutation of [1, n]");
  std::vector<std::uint64_t> inv(images_.size());
  for (std::size_t pos = 0; pos < images_.size(); ++pos) inv[images_[pos] - 1] = pos + 1;
  return from_images(inv);
}

// ---- SignedSeries ----

bool SignedSeries::is_alternating() const {
  for (std::size_t n = 0; n + 1 < terms.size(); n += 2)
    if (!(terms[n + 1] == neg(terms[n]))) return false;
  return true;
}

std::vector<Element> SignedSeries::partial_sums() const {
  if (terms.empty()) return {};
  return reaccumulate(zero_like(terms.front()), terms);
}

// ---- Walk ----

Walk Walk::dense(std::size_t dim, Mode mode) {
  if (dim == 0) throw InvalidArgument("dimension must be at least 1");
  Walk w;
  w.dim_ = dim;
  w.mode_ = mode;
  w.origin_ = Point::zeros(dim, mode);
  return w;
}

Walk Walk::sparse() {
  Walk w;
  w.sparse_ = true;
  w.mode_ = Mode::exact;
  w.origin_ = SparseVec();
  return w;
}

std::size_t Walk::size() const {
  if (sparse_) return sparse_rows_.size();
  return mode_ == Mode::exact ? exact_.size() / dim_ : real_.size() / dim_;
}

void Walk::reserve(std::size_t n) {
  if (sparse_) sparse_rows_.reserve(n);
  else if (mode_ == Mode::exact) exact_.reserve(n * dim_);
  else real_.reserve(n * dim_);
}

void Walk::push_back(const Element& e) {
  if (e.index() == 0) push_back(std::get<Point>(e));
  else push_back(std::get<SparseVec>(e));
}

void Walk::push_back(const Point& p) {
  if (sparse_) throw InvalidArgument("dense point pushed to a sparse walk");
  if (p.dim() != dim_) throw InvalidArgument("dimension mismatch");
  if (p.mode() != mode_) throw InvalidArgument("mode mismatch");
  for (const auto& c : p.coords()) {
    if (mode_ == Mode::exact) exact_.push_back(c.dyadic());
    else real_.push_back(c.to_double());
  }
}

void Walk::push_back(const SparseVec& v) {
  if (!sparse_) throw InvalidArgument("sparse vector pushed to a dense walk");
  sparse_rows_.push_back(v);
}

void Walk::push_back_real(const double* row) {
  if (sparse_ || mode_ != Mode::floating) throw InvalidArgument("push_back_real needs a floating dense walk");
  real_.insert(real_.end(), row, row + dim_);
}

Point Walk::point(std::size_t i) const {
  if (sparse_) throw InvalidArgument("sparse walk has no dense points");
  std::vector<Scalar> c(dim_);
  for (std::size_t k = 0; k < dim_; ++k)
    c[k] = mode_ == Mode::exact ? Scalar(exact_[i * dim_ + k]) : Scalar(real_[i * dim_ + k]);
  return Point(std::move(c));
}

Element Walk::at(std::size_t i) const {
  if (sparse_) return sparse_rows_.at(i);
  return point(i);
}

double Walk::coord(std::size_t i, std::size_t c) const {
  if (sparse_) return sparse_rows_[i].get(c + 1).to_double();
  return mode_ == Mode::exact ? exact_[i * dim_ + c].to_double() : real_[i * dim_ + c];
}

std::vector<double> Walk::row_doubles(std::size_t i) const {
  std::vector<double> r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = coord(i, k);
  return r;
}

double Walk::norm_at(std::size_t i, NormKind kind) const {
  if (sparse_) return norm(sparse_rows_[i], kind);
  double acc = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double x = std::abs(coord(i, k));
    acc = kind == NormKind::sup ? std::max(acc, x) : acc + x * x;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double Walk::distance_between(std::size_t i, std::size_t j, NormKind kind) const {
  if (sparse_) return distance(sparse_rows_[i], sparse_rows_[j], kind);
  double acc = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double d = std::abs(coord(i, k) - coord(j, k));
    acc = kind == NormKind::sup ? std::max(acc, d) : acc + d * d;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

void Walk::set_origin(Element o, bool is_anchor) {
  origin_ = std::move(o);
  origin_is_anchor_ = is_anchor;
}

void Walk::end_phase(double step_bound) { end_phase_at(size(), step_bound); }

void Walk::end_phase_at(std::size_t end, double step_bound) {
  if (end > size() || (!phase_ends_.empty() && end < phase_ends_.back()))
    throw InvalidArgument("phase end out of order");
  phase_ends_.push_back(end);
  step_bounds_.push_back(step_bound);
}

std::size_t Walk::phase_of(std::size_t i) const {
  auto it = std::upper_bound(phase_ends_.begin(), phase_ends_.end(), i);
  return static_cast<std::size_t>(it - phase_ends_.begin());
}

std::vector<std::size_t> Walk::phase_lengths() const {
  std::vector<std::size_t> n(phase_ends_.size());
  for (std::size_t p = 0; p < n.size(); ++p) {
    std::size_t sz = phase_end(p) - phase_begin(p);
    if (!xwalk_) n[p] = sz;
    else if (p == 0) n[p] = origin_is_anchor_ ? sz / 2 + 1 : (sz + 1) / 2;
    else n[p] = sz / 2;
  }
  return n;
}

Element Walk::anchor() const { return origin_is_anchor_ ? origin_ : at(0); }

// ---- construction ----

namespace {

bool same_point(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  if (a.index() == 0 && std::get<Point>(a).mode() == Mode::floating)
    return distance(a, b, NormKind::sup) <= kMembershipTol;
  return a == b;
}

}  // namespace

Walk build_xwalk_elements(const std::vector<std::vector<Element>>& schedule) {
  if (schedule.empty() || schedule.front().empty()) throw InvalidArgument("empty schedule");
  const Element& anchor = schedule.front().front();
  Walk w;
  if (anchor.index() == 1) {
    w = Walk::sparse();
  } else {
    const auto& p = std::get<Point>(anchor);
    w = Walk::dense(p.dim(), p.mode());
  }
  w.set_origin(zero_like(anchor), false);
  w.set_xwalk(true);
  for (std::size_t ph = 0; ph < schedule.size(); ++ph) {
    const auto& chain = schedule[ph];
    if (chain.empty() || !same_point(chain.front(), anchor)) throw InvalidArgument("phase not anchored");
    if (ph > 0 && chain.size() < 2) throw InvalidArgument("empty phase");
    double bound = 0.0;
    for (std::size_t i = 1; i < chain.size(); ++i)
      bound = std::max(bound, distance(chain[i], chain[i - 1], NormKind::euclidean));
    for (std::size_t i = ph == 0 ? 0 : 1; i < chain.size(); ++i) w.push_back(chain[i]);
    for (std::size_t i = chain.size() - 1; i-- > 0;) w.push_back(chain[i]);
    w.end_phase(bound);
  }
  return w;
}

Walk build_xwalk(const std::vector<std::vector<Point>>& schedule) {
  std::vector<std::vector<Element>> s;
  s.reserve(schedule.size());
  for (const auto& chain : schedule) s.emplace_back(chain.begin(), chain.end());
  return build_xwalk_elements(s);
}

Walk drop_anchor(const Walk& w) {
  if (w.origin_is_anchor()) return w;
  if (w.empty()) throw InvalidArgument("empty walk");
  Walk out = w.is_sparse() ? Walk::sparse() : Walk::dense(w.dim(), w.mode());
  out.set_origin(w.at(0), true);
  out.set_xwalk(w.is_xwalk());
  out.reserve(w.size() - 1);
  std::size_t p = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    out.push_back(w.at(i));
    while (p < w.phase_count() && w.phase_end(p) == i + 1) out.end_phase(w.phase_step_bounds()[p++]);
  }
  while (p < w.phase_count()) out.end_phase(w.phase_step_bounds()[p++]);
  return out;
}

namespace {

// Visits every phase as (q, L) in trajectory coordinates: T[q] is the anchor the
// phase starts from and T[q+1..q+2L] are its sums.
template <class F>
bool for_each_phase(const Walk& w, F f) {
  const std::size_t off = w.trajectory_offset();
  for (std::size_t p = 0; p < w.phase_count(); ++p) {
    std::size_t b = std::max(w.phase_begin(p), off);
    std::size_t e = w.phase_end(p);
    if (e < b || (e - b) % 2 != 0) return false;
    // sums[i] is trajectory index i + 1 - off
    if (!f(b + 1 - off - 1, (e - b) / 2)) return false;
  }
  return true;
}

}  // namespace

bool satisfies_palindrome(const Walk& w, double tol) {
  if (w.phase_count() == 0 || w.phase_end(w.phase_count() - 1) != w.size()) return false;
  const std::size_t off = w.trajectory_offset();
  const Element anchor = w.anchor();
  auto traj = [&](std::size_t t) -> Element { return t == 0 ? anchor : w.at(t - 1 + off); };
  auto eq = [&](const Element& a, const Element& b) {
    return tol > 0.0 ? distance(a, b, NormKind::sup) <= tol : a == b;
  };
  return for_each_phase(w, [&](std::size_t q, std::size_t L) {
    if (!eq(traj(q + 2 * L), anchor)) return false;
    for (std::size_t i = 1; i <= L; ++i)
      if (!eq(traj(q + L - i), traj(q + L + i))) return false;
    return true;
  });
}

SeriesOfWalk walk_to_series(const Walk& w) {
  double tol = (!w.is_sparse() && w.mode() == Mode::floating) ? kMembershipTol : 0.0;
  if (!satisfies_palindrome(w, tol)) throw Error("not an X-walk");
  const std::size_t off = w.trajectory_offset();
  const Element anchor = w.anchor();
  SeriesOfWalk out;
  Element prev = anchor;
  for (std::size_t i = off; i < w.size(); ++i) {
    Element cur = w.at(i);
    out.series.terms.push_back(sub(cur, prev));
    prev = std::move(cur);
  }
  out.sigma.reserve(out.series.terms.size());
  for_each_phase(w, [&](std::size_t q, std::size_t L) {
    for (std::size_t j = 1; j <= L; ++j) {
      out.sigma.push_back(q + j);
      out.sigma.push_back(q + 2 * L + 1 - j);
    }
    return true;
  });
  return out;
}

SignedSeries apply_permutation(const SignedSeries& s, const PartialPermutation& sigma) {
  SignedSeries out;
  out.terms.reserve(sigma.size());
  for (auto v : sigma.images()) out.terms.push_back(s.terms.at(v - 1));
  out.alternating = out.is_alternating();
  return out;
}

std::vector<Element> reaccumulate(const Element& anchor, const std::vector<Element>& terms) {
  std::vector<Element> sums;
  sums.reserve(terms.size());
  Element acc = anchor;
  for (const auto& t : terms) {
    acc = add(acc, t);
    sums.push_back(acc);
  }
  return sums;
}

}  // namespace serwalk
