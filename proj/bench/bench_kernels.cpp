// OpenMP kernels against the serial reference loops.

#include <benchmark/benchmark.h>

#include <random>

#include "pairbell/kernels.hpp"

using namespace pairbell;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n, n);
  for (auto& v : m.data()) v = {u(rng), u(rng)};
  return m;
}

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

template <bool Parallel>
void BM_Multiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix a = random_matrix(rng, n), b = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::multiply(a, b) : reference::multiply(a, b));
  }
}

template <bool Parallel>
void BM_QuadraticForm(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix m = random_matrix(rng, n);
  const auto v = random_vector(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::quadratic_form(m, v) : reference::quadratic_form(m, v));
  }
}

// Correlator workload: side dimension d, product dimension d^2. The reference
// forms the full Kronecker product.
template <bool Parallel>
void BM_LocalProductExpectation(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto d = static_cast<std::size_t>(state.range(0));
  const CMatrix a = random_matrix(rng, d), b = random_matrix(rng, d);
  const auto psi = random_vector(rng, d * d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::local_product_expectation(a, b, psi)
                                      : reference::local_product_expectation(a, b, psi));
  }
}

}  // namespace

BENCHMARK(BM_Multiply<false>)->Name("multiply/reference")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Multiply<true>)->Name("multiply/openmp")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_QuadraticForm<false>)->Name("quadratic_form/reference")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_QuadraticForm<true>)->Name("quadratic_form/openmp")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_LocalProductExpectation<false>)->Name("local_product/reference")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_LocalProductExpectation<true>)->Name("local_product/openmp")->RangeMultiplier(2)->Range(8, 32);
BENCHMARK_MAIN();
