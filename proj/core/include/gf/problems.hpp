#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf/autodiff.hpp"
#include "gf/nn.hpp"
#include "gf/reference.hpp"
#include "gf/sampling.hpp"
#include "gf/tensor.hpp"

namespace gf::problems {

using ad::Var;

// A differentiable stand-in for the network inside a loss builder; lets
// tests substitute closed-form solutions for the trained model.
using NetFn = std::function<Var(const Var&)>;

// Training defaults bundled with each problem.
struct Defaults {
  long iterations;
  std::size_t batch_size;
  double lrate;
  std::vector<std::pair<long, double>> lr_milestones;  // (iteration, factor)
};

// Deterministic quadrature override for the Fredholm integral term; when
// absent the loss draws fresh Monte Carlo points each call.
struct FixedQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

struct ProblemSpec {
  std::string id;  // heat1d | decay | fhn | fredholm2
  sampling::DomainBox box;
  std::size_t input_dim;
  std::size_t state_dim;
  nn::NetworkSpec network;
  Defaults defaults;

  // Builds the sampled squared-residual loss for one iteration; output is
  // a non-negative scalar Var.
  std::function<Var(ad::Graph&, const NetFn&, Rng&, std::size_t)> loss;

  // Closed-form or classical-solver reference on an evaluation grid
  // (rows = points, cols = input_dim) -> (rows, state_dim).
  std::function<Tensor(const Tensor&)> oracle;

  // Regular evaluation grid from the write-ups: heat 50x50 meshgrid over
  // [0,pi]x[0,3]; ODEs and Fredholm 50 nodes.
  std::function<Tensor()> eval_grid;
};

const ProblemSpec& heat1d();
const ProblemSpec& decay();
const ProblemSpec& fitzhugh_nagumo();
const ProblemSpec& fredholm2();

// nullptr when the id is unknown.
const ProblemSpec* find(const std::string& id);
std::vector<std::string> problem_ids();

// Individual loss builders, exposed for tests.
Var heat_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n);
Var decay_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n);
Var fhn_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n);
Var fredholm_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n,
                  std::size_t k = 50,
                  const FixedQuadrature* quad = nullptr);

struct FhnParams : reference::FhnParams {};

}  // namespace gf::problems
