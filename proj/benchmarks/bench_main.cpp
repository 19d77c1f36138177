#include <benchmark/benchmark.h>

#include <random>

#include "lcnet/constructive.hpp"
#include "lcnet/experiment.hpp"
#include "lcnet/least_squares.hpp"
#include "lcnet/operators.hpp"
#include "lcnet/presets.hpp"

namespace {

using namespace lcnet;

const GridMeta kGrid = GridMeta::uniform(0.0, 1.0, 101);

ShallowVectorNetwork make_network(std::size_t neurons) {
  std::vector<Neuron> list;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (std::size_t j = 0; j < neurons; ++j) {
    std::vector<double> v(kGrid.n);
    for (double& x : v) x = normal(rng);
    list.push_back({random_functional({InputShape::function(kGrid), 4.0, 7}, j), normal(rng),
                    TargetElement(std::move(v), kGrid)});
  }
  return {Activation::tanh(), InputShape::function(kGrid), TargetShape::on_grid(kGrid), std::move(list)};
}

void BM_EvaluateNetwork(benchmark::State& state) {
  const auto net = make_network(static_cast<std::size_t>(state.range(0)));
  const auto s = sample_ensemble({BandLimited{kGrid, {1.0, 0.5, 0.25}}, 1}, 3).samples[0];
  for (auto _ : state) benchmark::DoNotOptimize(net(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateNetwork)->Arg(100)->Arg(1000)->Arg(5000);

std::vector<TargetElement> operator_values(std::size_t count) {
  const auto x = sample_ensemble({BandLimited{kGrid, {1.0, 0.5, 0.25}}, count}, 5).samples;
  const OperatorSpec op{IntegralKernelOp{}};
  std::vector<TargetElement> y;
  for (const auto& s : x) y.push_back(op(s));
  return y;
}

void BM_EpsilonNet(benchmark::State& state) {
  const auto values = operator_values(static_cast<std::size_t>(state.range(0)));
  const auto rho = Seminorm::lq(2);
  for (auto _ : state) benchmark::DoNotOptimize(build_epsilon_net(values, rho, 0.025));
}
BENCHMARK(BM_EpsilonNet)->Arg(100)->Arg(400);

void BM_LeastSquares(benchmark::State& state) {
  const auto n = state.range(0);
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n / 2);
  const Eigen::VectorXd y = Eigen::VectorXd::Random(n);
  for (auto _ : state) benchmark::DoNotOptimize(least_squares_solve(a, y, 1e-10));
}
BENCHMARK(BM_LeastSquares)->Arg(100)->Arg(400);

void BM_IntegralOperator(benchmark::State& state) {
  const auto g = GridMeta::uniform(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const auto s = sample_ensemble({BandLimited{g, {1.0, 0.5}}, 1}, 2).samples[0];
  for (auto _ : state) benchmark::DoNotOptimize(integral_operator_apply({}, s));
}
BENCHMARK(BM_IntegralOperator)->Arg(101)->Arg(1001);

void BM_PresetPipeline(benchmark::State& state) {
  auto cfg = config_from_json(preset_config("integral_gaussian"));
  cfg.epsilons = {0.1};
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_PresetPipeline)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
