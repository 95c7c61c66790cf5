#include <benchmark/benchmark.h>

#include <random>

#include "ltcsim/generators.hpp"
#include "ltcsim/ltc.hpp"
#include "ltcsim/stock.hpp"
#include "ltcsim/training.hpp"

namespace {

using namespace ltcsim;

Eigen::MatrixXd random_inputs(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = u(rng);
  return m;
}

void BM_FusedStep(benchmark::State& state) {
  const auto net = LtcNetwork::init({3, static_cast<int>(state.range(0)), 2}, 7);
  LtcState s = LtcState::zero(net.layout());
  const Eigen::VectorXd in = Eigen::VectorXd::Constant(3, 0.25);
  for (auto _ : state) {
    s = fused_step(net, s, in, 1.0);
    benchmark::DoNotOptimize(s.x.data());
  }
}
BENCHMARK(BM_FusedStep)->Arg(8)->Arg(20)->Arg(64);

void BM_ForwardSeason(benchmark::State& state) {
  const auto net = LtcNetwork::init({3, 20, 1}, 7);
  const Eigen::MatrixXd in = random_inputs(kSeasonHours, 3, 11);
  for (auto _ : state) {
    auto out = forward(net, in, 1.0, LtcState::zero(net.layout()));
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ForwardSeason);

void BM_BpttSeason(benchmark::State& state) {
  const auto net = LtcNetwork::init({3, 20, 1}, 7);
  const Eigen::MatrixXd in = random_inputs(kSeasonHours, 3, 11);
  const Eigen::MatrixXd targets = random_inputs(kSeasonHours, 1, 13);
  for (auto _ : state) {
    const auto tr = forward_trace(net, in, 1.0, Eigen::VectorXd::Zero(20));
    Eigen::MatrixXd og;
    mse_with_grads(tr.outputs, targets, {}, og);
    auto bp = backprop_through_time(net, in, tr, og, 1.0, 0);
    benchmark::DoNotOptimize(bp.grads.w_raw.data());
  }
}
BENCHMARK(BM_BpttSeason);

void BM_StockOps(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (auto _ : state) {
    Stock stock(3);
    for (int year = 0; year < 50; ++year) {
      stock.deposit(year, u(rng));
      for (int w = 0; w < 52; ++w) benchmark::DoNotOptimize(stock.withdraw(u(rng) / 52.0));
      stock.expire(year);
    }
    benchmark::DoNotOptimize(stock.level());
  }
}
BENCHMARK(BM_StockOps);

void BM_GenClimateDecade(benchmark::State& state) {
  auto spec = climate_preset("rcp85like", 10, 5);
  for (auto _ : state) {
    auto cs = gen_climate(spec);
    benchmark::DoNotOptimize(cs.temperature_c.values.data());
  }
}
BENCHMARK(BM_GenClimateDecade);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
