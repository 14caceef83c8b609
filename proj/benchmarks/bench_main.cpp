#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "vqco/adam.hpp"
#include "vqco/ansatz.hpp"
#include "vqco/kernels.hpp"
#include "vqco/varit.hpp"

namespace {

vqco::Ansatz random_ansatz(const vqco::WeightedGraph& g) {
  vqco::Ansatz a = vqco::Ansatz::build(g);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (auto& t : a.theta()) t = u(gen);
  return a;
}

void BM_ZyRotate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const int q = static_cast<int>(state.range(2));
  std::vector<double> amps(std::size_t{1} << n, 1.0);
  for (auto _ : state) {
    vqco::kernels::zy_rotate(std::span<double>(amps), r, q, 0.8, 0.6);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(amps.size()) * 16);
}
BENCHMARK(BM_ZyRotate)->Args({16, 0, 1})->Args({16, 1, 0})->Args({16, 3, 12})->Args({16, 12, 3})->Args({20, 5, 17});

void BM_Prepare(benchmark::State& state) {
  const auto a = random_ansatz(vqco::gen_sk(static_cast<int>(state.range(0)), 1));
  std::vector<double> amps;
  for (auto _ : state) {
    vqco::prepare_real(a, amps);
    benchmark::DoNotOptimize(amps.data());
  }
}
BENCHMARK(BM_Prepare)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ComputeG(benchmark::State& state) {
  const auto g = vqco::gen_sk(static_cast<int>(state.range(0)), 2);
  const auto a = random_ansatz(g);
  const auto h = vqco::CostHamiltonian::build(vqco::ranked_graph(g, a), vqco::Convention::Physics);
  for (auto _ : state) benchmark::DoNotOptimize(vqco::varit::compute_G(a, h).data());
}
BENCHMARK(BM_ComputeG)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ComputeGShiftRule(benchmark::State& state) {
  const auto g = vqco::gen_sk(static_cast<int>(state.range(0)), 2);
  const auto a = random_ansatz(g);
  const auto h = vqco::CostHamiltonian::build(vqco::ranked_graph(g, a), vqco::Convention::Physics);
  for (auto _ : state) benchmark::DoNotOptimize(vqco::varit::compute_G_shift_rule(a, h).data());
}
BENCHMARK(BM_ComputeGShiftRule)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AdamGradient(benchmark::State& state) {
  const auto g = vqco::gen_three_regular(static_cast<int>(state.range(0)), 3);
  const auto a = random_ansatz(g);
  const auto h = vqco::CostHamiltonian::build(vqco::ranked_graph(g, a), vqco::Convention::ComputerScience);
  for (auto _ : state) benchmark::DoNotOptimize(vqco::adam::gradient(a, h).data());
}
BENCHMARK(BM_AdamGradient)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_WalshHadamard(benchmark::State& state) {
  std::vector<double> v(std::size_t{1} << state.range(0), 0.5);
  for (auto _ : state) {
    vqco::kernels::walsh_hadamard(v);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_WalshHadamard)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
