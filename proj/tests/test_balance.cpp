#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "serwalk/balance.hpp"
#include "serwalk/seqspace.hpp"

using namespace serwalk;

namespace {

Batch random_batch(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_int_distribution<int> v(-4, 4);
  Batch b;
  b.dim = dim;
  for (std::size_t i = 0; i < n * dim; ++i) b.rows.push_back(v(rng) / 4.0);
  return b;
}

// tries every order
bool brute_force_exists(const Batch& b, double bound, NormKind kind) {
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), std::size_t{1});
  do {
    if (max_prefix_norm(b, order, kind) < bound) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool is_permutation_of(const std::vector<std::size_t>& p, std::size_t n) {
  std::vector<std::size_t> s = p;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < n; ++i)
    if (s.size() != n || s[i] != i + 1) return false;
  return true;
}

}  // namespace

TEST_CASE("two terms on the line") {
  const auto p = find_balanced_permutation({Point::real({1.0}), Point::real({-1.0})}, 1.5,
                                           BalanceStrategy::exhaustive);
  REQUIRE(p);
  CHECK(*p == std::vector<std::size_t>{1, 2});
}

TEST_CASE("the first no-RP block cannot be balanced below 1") {
  const auto y = no_rp_block(1);
  const auto dense = densify(y, 1, 6);
  BalanceOptions o;
  o.kind = NormKind::sup;
  CHECK(!find_balanced_permutation(dense, 1.0, BalanceStrategy::exhaustive, o));
  CHECK(!find_balanced_permutation(dense, 1.0, BalanceStrategy::ladder, o));
  CHECK(find_balanced_permutation(dense, 1.0 + 1e-9, BalanceStrategy::exhaustive, o));
}

TEST_CASE("exhaustive limit") {
  Batch b;
  b.dim = 1;
  b.rows.assign(11, 0.0);
  CHECK_THROWS(find_balanced_permutation(b, 1.0, BalanceStrategy::exhaustive));
}

TEST_CASE("exhaustive agrees with brute force") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + t % 7, dim = 1 + t % 2;
    const Batch b = random_batch(rng, n, dim);
    const double bound = 0.25 + 0.25 * (t % 5);
    for (auto kind : {NormKind::euclidean, NormKind::sup}) {
      BalanceOptions o;
      o.kind = kind;
      const auto p = find_balanced_permutation(b, bound, BalanceStrategy::exhaustive, o);
      CHECK(p.has_value() == brute_force_exists(b, bound, kind));
      if (p) {
        CHECK(is_permutation_of(*p, n));
        CHECK(max_prefix_norm(b, *p, kind) < bound);
      }
    }
  }
}

TEST_CASE("greedy sign balancing on the line") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double delta = 0.01 + 0.1 * std::abs(u(rng));
    std::vector<double> y(20);
    for (double& x : y) x = u(rng);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 20.0;
    const double shift = u(rng) / 40.0;
    for (double& x : y) x = x - mean + shift;
    double m = 0.0;
    for (double x : y) m = std::max(m, std::abs(x));
    std::vector<Point> pts;
    for (double x : y) pts.push_back(Point::real({x * delta / m}));
    double total = 0.0;
    for (const auto& p : pts) total += p[0].to_double();
    REQUIRE(std::abs(total) <= delta);

    const auto p = find_balanced_permutation(pts, 2.0 * delta, BalanceStrategy::greedy);
    REQUIRE(p);
    CHECK(is_permutation_of(*p, 20));
    CHECK(max_prefix_norm(Batch::from_points(pts), *p, NormKind::euclidean) <= 2.0 * delta);
  }
}

TEST_CASE("grouped greedy matches the naive greedy") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Batch b = random_batch(rng, 5 + t % 40, 1 + t % 3);
    for (auto kind : {NormKind::euclidean, NormKind::sup}) {
      CHECK(greedy_order(b, kind) == serial::greedy_order_naive(b, kind));
      const std::size_t first = 1 + t % b.size();
      const auto g = greedy_order(b, kind, first);
      CHECK(g.front() == first);
      CHECK(g == serial::greedy_order_naive(b, kind, first));
    }
  }
}

TEST_CASE("parallel exhaustive search returns the serial answer") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const Batch b = random_batch(rng, 3 + t % 7, 2);
    const double bound = 0.5 + 0.25 * (t % 4);
    CHECK(parallel::exhaustive_search(b, bound, NormKind::euclidean) ==
          serial::exhaustive_search(b, bound, NormKind::euclidean));
  }
}

TEST_CASE("ladder falls back to restarts on large batches") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Batch b;
  b.dim = 2;
  for (int i = 0; i < 60; ++i) {
    const double x = u(rng), y = u(rng);
    b.rows.insert(b.rows.end(), {x, y, -x, -y});
  }
  BalanceOptions o;
  o.seed = 99;
  const auto p = find_balanced_permutation(b, 0.25, BalanceStrategy::ladder, o);
  REQUIRE(p);
  CHECK(is_permutation_of(*p, 120));
  CHECK(max_prefix_norm(b, *p, NormKind::euclidean) < 0.25);
  CHECK(find_balanced_permutation(b, 0.25, BalanceStrategy::ladder, o) == p);
}
