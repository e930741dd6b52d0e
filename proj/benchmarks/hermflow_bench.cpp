#include <benchmark/benchmark.h>

#include <random>

#include "hermflow/hermite_ops.hpp"
#include "hermflow/kernel_wkbj.hpp"
#include "hermflow/leray.hpp"
#include "hermflow/solenoidal.hpp"

using namespace hermflow;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_int_distribution<long> coef(-20, 20);
  Polynomial p(3);
  for (int k = 0; k <= degree; ++k)
    for (const auto& beta : multi_indices_of_order(k, 3)) p += Polynomial::monomial(beta, make_rational(coef(rng), 7));
  return p;
}

void BM_PolynomialMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int degree = static_cast<int>(state.range(0));
  const auto a = random_poly(rng, degree), b = random_poly(rng, degree);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetLabel("dense degree " + std::to_string(degree));
}
BENCHMARK(BM_PolynomialMultiply)->DenseRange(2, 8, 2);

void BM_Eigenfunction(benchmark::State& state) {
  const auto params = OperatorParams::make(static_cast<int>(state.range(0)), 3);
  const MultiIndex beta({2, 2, 2});
  for (auto _ : state) benchmark::DoNotOptimize(eigenfunction(beta, params));
}
BENCHMARK(BM_Eigenfunction)->DenseRange(1, 3);

void BM_ApplyBStar(benchmark::State& state) {
  const auto params = OperatorParams::make(2, 3);
  const auto psi = eigenfunction(MultiIndex({3, 1, 2}), params).psi_star;
  for (auto _ : state) benchmark::DoNotOptimize(apply_B_star(psi, params));
}
BENCHMARK(BM_ApplyBStar);

void BM_DivfreeKernel(benchmark::State& state) {
  const auto params = OperatorParams::make(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(divfree_kernel(static_cast<int>(state.range(0)), params));
}
BENCHMARK(BM_DivfreeKernel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& state) {
  const auto spec = GridSpec::make(8, static_cast<int>(state.range(0)));
  const auto y = [](int i) { return Polynomial::variable(3, i); };
  const auto u = sample(VectorPolyField({y(0) * y(1), y(2) - y(0), y(0) * y(0)}), spec, Weight::Kernel, 1);
  for (auto _ : state) benchmark::DoNotOptimize(project(u));
}
BENCHMARK(BM_Projection)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

void BM_KernelValue(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_value(r, m));
    r = r > 20 ? 0.1 : r + 0.37;
  }
}
BENCHMARK(BM_KernelValue)->DenseRange(1, 3);

void BM_InteractionTensor(benchmark::State& state) {
  const auto basis = standard_basis(1, static_cast<int>(state.range(0)));
  const auto spec = GridSpec::make(8, 32);
  for (auto _ : state)
    benchmark::DoNotOptimize(interaction_tensor(basis, spec, TensorOptions{false, false, 1e-6, 1}));
  state.SetLabel(std::to_string(basis.size()) + " modes, one worker");
}
BENCHMARK(BM_InteractionTensor)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
