#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gf/nn.hpp"
#include "gf/optim.hpp"
#include "gf/problems.hpp"
#include "gf/tensor.hpp"

namespace gf::training {

struct TrainConfig {
  long iterations = 1;
  std::size_t batch_size = 64;
  double lrate = 1e-4;
  optim::LrSchedule schedule;
  std::uint64_t seed = 0;
  // optional overrides of the problem's default network
  std::optional<std::size_t> hidden_size;
  std::optional<std::size_t> num_layers;
  std::optional<nn::BatchNormMode> batch_norm;
  std::optional<nn::Activation> activation;
  std::optional<double> clip_norm;  // off by default

  static TrainConfig defaults_for(const problems::ProblemSpec& p);

  void validate() const;
};

struct TrainHistory {
  std::vector<double> loss;  // one entry per iteration
  std::vector<double> lr;
  double final_mae = 0.0;
  double wall_time_s = 0.0;
};

struct TrainResult {
  std::unique_ptr<nn::Network> net;
  TrainHistory history;
};

// Raised on a non-finite loss; training aborts rather than skipping the
// iteration.
struct TrainingError : std::runtime_error {
  long iteration;
  double lr;
  TrainingError(const std::string& msg, long it, double eta)
      : std::runtime_error(msg), iteration(it), lr(eta) {}
};

// Algorithm: per iteration sample fresh minibatches, forward, build the
// loss, backward, Adam step, record, apply the lr schedule. Fully
// determined by (config, seed).
TrainResult train(const problems::ProblemSpec& problem,
                  const TrainConfig& cfg);

double mae(const Tensor& y, const Tensor& y_hat);

// Eval-mode forward pass on a plain tensor of inputs.
Tensor net_eval(nn::Network& net, const Tensor& inputs);

struct EvalResult {
  Tensor grid;
  Tensor y_hat;
  Tensor y_oracle;
  double mae = 0.0;
};

EvalResult evaluate(nn::Network& net, const problems::ProblemSpec& problem);

nn::NetworkSpec resolve_network_spec(const problems::ProblemSpec& problem,
                                     const TrainConfig& cfg);

}  // namespace gf::training
