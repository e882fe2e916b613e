// Microbenchmarks for the hot paths: matmul, network forward, loss
// gradients (the heat loss exercises double backward).

#include <benchmark/benchmark.h>

#include "gf/autodiff.hpp"
#include "gf/nn.hpp"
#include "gf/problems.hpp"
#include "gf/rng.hpp"
#include "gf/tensor.hpp"

using gf::Rng;
using gf::Tensor;
namespace ad = gf::ad;
namespace nn = gf::nn;
namespace problems = gf::problems;

static void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Tensor a = Tensor::uniform(rng, n, n, -1, 1);
  Tensor b = Tensor::uniform(rng, n, n, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(a.matmul(b));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(128)->Arg(256);

static nn::NetworkSpec arch_spec(nn::Arch a) {
  nn::NetworkSpec s;
  s.architecture = a;
  s.input_dim = 2;
  s.hidden_size = 128;
  s.num_layers = a == nn::Arch::Dgm ? 4 : 3;
  return s;
}

static void BM_Forward(benchmark::State& state) {
  Rng rng(1);
  auto spec = arch_spec(static_cast<nn::Arch>(state.range(0)));
  auto net = nn::make_network(spec, rng);
  Tensor x = Tensor::uniform(rng, 64, 2, 0, 1);
  for (auto _ : state) {
    ad::Graph g;
    nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
    benchmark::DoNotOptimize(bound(g.constant(x)).value());
  }
}
BENCHMARK(BM_Forward)
    ->Arg(static_cast<int>(nn::Arch::Mlp))
    ->Arg(static_cast<int>(nn::Arch::Dgm))
    ->Arg(static_cast<int>(nn::Arch::ResNet));

static void BM_ForwardBackward(benchmark::State& state) {
  Rng rng(1);
  auto net = nn::make_network(arch_spec(nn::Arch::Mlp), rng);
  Tensor x = Tensor::uniform(rng, 64, 2, 0, 1);
  for (auto _ : state) {
    ad::Graph g;
    nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
    auto loss = ad::mean(ad::square(bound(g.constant(x))));
    benchmark::DoNotOptimize(bound.grad_values(loss));
  }
}
BENCHMARK(BM_ForwardBackward);

static void BM_HeatLossGrad(benchmark::State& state) {
  Rng rng(1);
  const auto& p = problems::heat1d();
  auto net = nn::make_network(p.network, rng);
  Rng lrng(2);
  for (auto _ : state) {
    ad::Graph g;
    nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
    problems::NetFn f = [&](const ad::Var& v) { return bound(v); };
    auto loss = problems::heat_loss(g, f, lrng, 64);
    benchmark::DoNotOptimize(bound.grad_values(loss));
  }
}
BENCHMARK(BM_HeatLossGrad);

BENCHMARK_MAIN();
