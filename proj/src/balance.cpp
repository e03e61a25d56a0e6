#include "serwalk/balance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

#ifdef SERWALK_HAVE_OPENMP
#include <omp.h>
#endif

namespace serwalk {

namespace {

constexpr std::size_t kExhaustiveLimit = 10;

double vec_norm(const double* v, std::size_t dim, NormKind kind) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    acc = kind == NormKind::sup ? std::max(acc, std::abs(v[i])) : acc + v[i] * v[i];
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

double norm_of_sum(const double* a, const double* b, std::size_t dim, NormKind kind) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double v = a[i] + b[i];
    acc = kind == NormKind::sup ? std::max(acc, std::abs(v)) : acc + v * v;
  }
  return kind == NormKind::sup ? acc : std::sqrt(acc);
}

bool same_row(const Batch& t, std::size_t i, std::size_t j) {
  return std::equal(t.row(i), t.row(i) + t.dim, t.row(j));
}

struct Dfs {
  const Batch& t;
  double bound;
  NormKind kind;
  std::vector<char> used;
  std::vector<std::size_t> order;
  std::vector<double> sums;  // sums[d * dim ..] is the prefix sum after d terms

  Dfs(const Batch& terms, double b, NormKind k)
      : t(terms), bound(b), kind(k), used(terms.size(), 0), sums((terms.size() + 1) * terms.dim, 0.0) {}

  bool place(std::size_t i) {
    const std::size_t d = order.size();
    const double* prev = sums.data() + d * t.dim;
    if (norm_of_sum(prev, t.row(i), t.dim, kind) >= bound) return false;
    double* next = sums.data() + (d + 1) * t.dim;
    for (std::size_t c = 0; c < t.dim; ++c) next[c] = prev[c] + t.row(i)[c];
    used[i] = 1;
    order.push_back(i + 1);
    return true;
  }

  void unplace() {
    used[order.back() - 1] = 0;
    order.pop_back();
  }

  bool run() {
    if (order.size() == t.size()) return true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (used[i]) continue;
      // an identical unused row earlier in index order was already tried here
      bool dup = false;
      for (std::size_t j = 0; j < i && !dup; ++j) dup = !used[j] && same_row(t, i, j);
      if (dup) continue;
      if (!place(i)) continue;
      if (run()) return true;
      unplace();
    }
    return false;
  }
};

void check_batch(const Batch& t) {
  if (t.dim == 0 || t.rows.size() % t.dim != 0) throw InvalidArgument("bad batch layout");
}

}  // namespace

Batch Batch::from_points(const std::vector<Point>& pts) {
  Batch b;
  b.dim = pts.empty() ? 1 : pts.front().dim();
  b.rows.reserve(pts.size() * b.dim);
  for (const auto& p : pts) {
    if (p.dim() != b.dim) throw InvalidArgument("dimension mismatch");
    for (const auto& c : p.coords()) b.rows.push_back(c.to_double());
  }
  return b;
}

double max_prefix_norm(const Batch& terms, const std::vector<std::size_t>& order, NormKind kind) {
  std::vector<double> s(terms.dim, 0.0);
  double worst = 0.0;
  for (std::size_t k : order) {
    const double* r = terms.row(k - 1);
    for (std::size_t c = 0; c < terms.dim; ++c) s[c] += r[c];
    worst = std::max(worst, vec_norm(s.data(), terms.dim, kind));
  }
  return worst;
}

std::vector<std::size_t> greedy_order(const Batch& terms, NormKind kind, std::size_t first) {
  check_batch(terms);
  const std::size_t n = terms.size();
  const std::size_t dim = terms.dim;

  std::map<std::vector<double>, std::size_t> class_of;
  std::vector<std::deque<std::size_t>> queues;
  std::vector<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> key(terms.row(i), terms.row(i) + dim);
    auto [it, fresh] = class_of.try_emplace(std::move(key), queues.size());
    if (fresh) {
      queues.emplace_back();
      rep.push_back(i);
    }
    queues[it->second].push_back(i);
  }

  std::vector<double> s(dim, 0.0);
  std::vector<std::size_t> order;
  order.reserve(n);
  auto take = [&](std::size_t cls) {
    const std::size_t i = queues[cls].front();
    queues[cls].pop_front();
    for (std::size_t c = 0; c < dim; ++c) s[c] += terms.row(i)[c];
    order.push_back(i + 1);
  };

  if (first != 0) {
    if (first > n) throw InvalidArgument("first index out of range");
    const std::vector<double> key(terms.row(first - 1), terms.row(first - 1) + dim);
    const std::size_t cls = class_of.at(key);
    // move the forced index to the head of its class queue
    auto& q = queues[cls];
    q.erase(std::find(q.begin(), q.end(), first - 1));
    q.push_front(first - 1);
    take(cls);
    std::sort(q.begin(), q.end());
  }

  while (order.size() < n) {
    std::size_t best = queues.size();
    double best_norm = 0.0;
    for (std::size_t cls = 0; cls < queues.size(); ++cls) {
      if (queues[cls].empty()) continue;
      const double v = norm_of_sum(s.data(), terms.row(rep[cls]), dim, kind);
      if (best == queues.size() || v < best_norm ||
          (v == best_norm && queues[cls].front() < queues[best].front())) {
        best = cls;
        best_norm = v;
      }
    }
    take(best);
  }
  return order;
}

namespace serial {

std::vector<std::size_t> greedy_order_naive(const Batch& terms, NormKind kind, std::size_t first) {
  check_batch(terms);
  const std::size_t n = terms.size();
  std::vector<char> used(n, 0);
  std::vector<double> s(terms.dim, 0.0);
  std::vector<std::size_t> order;
  auto take = [&](std::size_t i) {
    used[i] = 1;
    for (std::size_t c = 0; c < terms.dim; ++c) s[c] += terms.row(i)[c];
    order.push_back(i + 1);
  };
  if (first != 0) {
    if (first > n) throw InvalidArgument("first index out of range");
    take(first - 1);
  }
  while (order.size() < n) {
    std::size_t best = n;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double v = norm_of_sum(s.data(), terms.row(i), terms.dim, kind);
      if (best == n || v < best_norm) {
        best = i;
        best_norm = v;
      }
    }
    take(best);
  }
  return order;
}

std::optional<std::vector<std::size_t>> exhaustive_search(const Batch& terms, double bound, NormKind kind) {
  check_batch(terms);
  Dfs dfs(terms, bound, kind);
  if (dfs.run()) return dfs.order;
  return std::nullopt;
}

}  // namespace serial

namespace parallel {

std::optional<std::vector<std::size_t>> exhaustive_search(const Batch& terms, double bound, NormKind kind) {
  check_batch(terms);
  const std::size_t n = terms.size();
  if (n == 0) return std::vector<std::size_t>{};
  std::vector<std::optional<std::vector<std::size_t>>> found(n);
  const auto branches = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < branches; ++b) {
    const auto i = static_cast<std::size_t>(b);
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) dup = same_row(terms, i, j);
    if (dup) continue;
    Dfs dfs(terms, bound, kind);
    if (dfs.place(i) && dfs.run()) found[i] = dfs.order;
  }
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace parallel

std::optional<std::vector<std::size_t>> find_balanced_permutation(const Batch& terms, double bound,
                                                                  BalanceStrategy strategy,
                                                                  const BalanceOptions& opts) {
  check_batch(terms);
  const std::size_t n = terms.size();
  auto exhaustive = [&]() {
#ifdef SERWALK_HAVE_OPENMP
    return parallel::exhaustive_search(terms, bound, opts.kind);
#else
    return serial::exhaustive_search(terms, bound, opts.kind);
#endif
  };
  auto accept = [&](std::vector<std::size_t> o) -> std::optional<std::vector<std::size_t>> {
    if (max_prefix_norm(terms, o, opts.kind) < bound) return o;
    return std::nullopt;
  };

  switch (strategy) {
    case BalanceStrategy::exhaustive:
      if (n > kExhaustiveLimit) throw InvalidArgument("exhaustive balancing is limited to 10 terms");
      return exhaustive();
    case BalanceStrategy::greedy:
      return accept(greedy_order(terms, opts.kind));
    case BalanceStrategy::ladder:
      break;
  }
  if (n <= kExhaustiveLimit) return exhaustive();
  if (auto o = accept(greedy_order(terms, opts.kind))) return o;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(1, n);
  for (int r = 0; r < opts.restarts; ++r)
    if (auto o = accept(greedy_order(terms, opts.kind, pick(rng)))) return o;
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> find_balanced_permutation(const std::vector<Point>& terms, double bound,
                                                                  BalanceStrategy strategy,
                                                                  const BalanceOptions& opts) {
  return find_balanced_permutation(Batch::from_points(terms), bound, strategy, opts);
}

}  // namespace serwalk
