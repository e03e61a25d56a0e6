// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "serwalk/balance.hpp"
#include "serwalk/kernels.hpp"

using namespace serwalk;

namespace {

std::vector<double> cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(2 * n);
  for (double& x : xs) x = u(rng);
  return xs;
}

struct Dist {
  const std::vector<double>* a;
  const std::vector<double>* b;
  double operator()(std::size_t i, std::size_t j) const {
    const double dx = (*a)[2 * i] - (*b)[2 * j], dy = (*a)[2 * i + 1] - (*b)[2 * j + 1];
    return std::sqrt(dx * dx + dy * dy);
  }
};

template <bool Parallel>
void BM_hausdorff(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = cloud(n, 1), b = cloud(n, 2);
  const Dist d{&a, &b};
  for (auto _ : st) {
    double v = Parallel ? kernels::parallel::directed_hausdorff(n, n, d) : kernels::serial::directed_hausdorff(n, n, d);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_gap_labels(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = cloud(n, 3);
  const Dist d{&a, &a};
  for (auto _ : st) {
    auto v = Parallel ? kernels::parallel::gap_labels(n, 0.05, d) : kernels::serial::gap_labels(n, 0.05, d);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_diameter(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = cloud(n, 4);
  const Dist d{&a, &a};
  std::size_t i = 0, j = 0;
  for (auto _ : st) {
    double v = Parallel ? kernels::parallel::diameter(n, d, &i, &j) : kernels::serial::diameter(n, d, &i, &j);
    benchmark::DoNotOptimize(v);
  }
}

// a batch with no balanced order, so the search visits the whole tree
template <bool Parallel>
void BM_exhaustive(benchmark::State& st) {
  Batch b;
  b.dim = 2;
  const auto n = static_cast<std::size_t>(st.range(0));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    b.rows.push_back(std::cos(t));
    b.rows.push_back(std::sin(t));
  }
  for (auto _ : st) {
    auto v = Parallel ? parallel::exhaustive_search(b, 0.9, NormKind::euclidean)
                      : serial::exhaustive_search(b, 0.9, NormKind::euclidean);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_hausdorff<false>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hausdorff<true>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gap_labels<false>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gap_labels<true>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diameter<false>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diameter<true>)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exhaustive<false>)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_exhaustive<true>)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
