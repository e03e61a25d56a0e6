/** @file balance.hpp
 *  @brief Orderings of a finite batch of vectors whose prefix sums stay small.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "serwalk/core.hpp"

namespace serwalk {

enum class BalanceStrategy {
  exhaustive,  // depth-first over all orders, n <= 10; absent means none exists
  greedy,      // one greedy pass
  ladder       // exhaustive for n <= 10, else greedy with random restarts
};

struct BalanceOptions {
  NormKind kind = NormKind::euclidean;
  std::uint64_t seed = 0;
  int restarts = 64;
};

/// Row-major batch of n vectors of dimension dim.
struct Batch {
  std::size_t dim = 1;
  std::vector<double> rows;
  std::size_t size() const { return rows.size() / dim; }
  const double* row(std::size_t i) const { return rows.data() + i * dim; }
  static Batch from_points(const std::vector<Point>& pts);
};

/// A 1-based permutation sigma with every prefix norm of terms[sigma(1..j)] < bound.
std::optional<std::vector<std::size_t>> find_balanced_permutation(const std::vector<Point>& terms, double bound,
                                                                  BalanceStrategy strategy,
                                                                  const BalanceOptions& opts = {});
std::optional<std::vector<std::size_t>> find_balanced_permutation(const Batch& terms, double bound,
                                                                  BalanceStrategy strategy,
                                                                  const BalanceOptions& opts = {});

/// Largest prefix norm along a 1-based order.
double max_prefix_norm(const Batch& terms, const std::vector<std::size_t>& order, NormKind kind);

/// Greedy order: each step takes the unused term giving the smallest prefix norm,
/// lowest index on ties. Identical vectors are grouped so the cost is
/// O(n * distinct vectors). `first` (1-based) forces the opening term.
std::vector<std::size_t> greedy_order(const Batch& terms, NormKind kind, std::size_t first = 0);

namespace serial {
/// Plain O(n^2) greedy, the reference for greedy_order.
std::vector<std::size_t> greedy_order_naive(const Batch& terms, NormKind kind, std::size_t first = 0);
/// Lexicographically first balanced order by depth-first search.
std::optional<std::vector<std::size_t>> exhaustive_search(const Batch& terms, double bound, NormKind kind);
}  // namespace serial

namespace parallel {
/// Same result as serial::exhaustive_search, branches on the first term split across threads.
std::optional<std::vector<std::size_t>> exhaustive_search(const Batch& terms, double bound, NormKind kind);
}  // namespace parallel

}  // namespace serwalk
