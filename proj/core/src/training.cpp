#include "gf/training.hpp"

#include <chrono>
#include <cmath>

namespace gf::training {

TrainConfig TrainConfig::defaults_for(const problems::ProblemSpec& p) {
  TrainConfig cfg;
  cfg.iterations = p.defaults.iterations;
  cfg.batch_size = p.defaults.batch_size;
  cfg.lrate = p.defaults.lrate;
  for (const auto& [it, factor] : p.defaults.lr_milestones) {
    cfg.schedule.milestones.push_back({it, factor});
  }
  return cfg;
}

void TrainConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("train: iterations < 1");
  if (batch_size < 1) throw std::invalid_argument("train: batch_size < 1");
  if (!(lrate > 0.0)) throw std::invalid_argument("train: lrate <= 0");
}

nn::NetworkSpec resolve_network_spec(const problems::ProblemSpec& problem,
                                     const TrainConfig& cfg) {
  nn::NetworkSpec spec = problem.network;
  if (cfg.hidden_size) spec.hidden_size = *cfg.hidden_size;
  if (cfg.num_layers) spec.num_layers = *cfg.num_layers;
  if (cfg.batch_norm) spec.batch_norm = *cfg.batch_norm;
  if (cfg.activation) spec.activation = *cfg.activation;
  return spec;
}

TrainResult train(const problems::ProblemSpec& problem,
                  const TrainConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  Rng rng(cfg.seed);
  auto net = nn::make_network(resolve_network_spec(problem, cfg), rng);
  auto param_refs = net->parameters();

  optim::Adam adam(cfg.lrate);
  TrainHistory history;
  history.loss.reserve(static_cast<std::size_t>(cfg.iterations));
  history.lr.reserve(static_cast<std::size_t>(cfg.iterations));

  for (long it = 0; it < cfg.iterations; ++it) {
    const double lr = cfg.schedule.at(cfg.lrate, it);
    adam.set_lr(lr);

    double loss_value;
    try {
      ad::Graph g;
      nn::BoundNetwork bound(*net, g, nn::Mode::Train);
      problems::NetFn fn = [&bound](const ad::Var& x) { return bound(x); };
      ad::Var loss = problem.loss(g, fn, rng, cfg.batch_size);
      loss_value = loss.value()(0, 0);
      if (!std::isfinite(loss_value)) {
        throw std::invalid_argument("non-finite loss");
      }
      auto grads = bound.grad_values(loss);
      if (cfg.clip_norm) optim::clip_grad_norm(grads, *cfg.clip_norm);
      adam.step(param_refs, grads);
    } catch (const std::invalid_argument& e) {
      // overflow can surface in the forward pass (the Tensor ctor rejects
      // non-finite values) before the loss check sees it
      throw TrainingError("train: diverged at iteration " +
                              std::to_string(it) + " (lr=" +
                              std::to_string(lr) + "): " + e.what(),
                          it, lr);
    }

    history.loss.push_back(loss_value);
    history.lr.push_back(lr);
  }

  history.final_mae = evaluate(*net, problem).mae;
  history.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return TrainResult{std::move(net), std::move(history)};
}

double mae(const Tensor& y, const Tensor& y_hat) {
  if (!y.same_shape(y_hat)) {
    throw ShapeError("mae: shape mismatch " + y.shape_str() + " vs " +
                     y_hat.shape_str());
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    acc += std::fabs(y.data()[k] - y_hat.data()[k]);
  }
  return acc / static_cast<double>(y.size());
}

Tensor net_eval(nn::Network& net, const Tensor& inputs) {
  ad::Graph g;
  nn::BoundNetwork bound(net, g, nn::Mode::Eval);
  return bound(g.constant(inputs)).value();
}

EvalResult evaluate(nn::Network& net, const problems::ProblemSpec& problem) {
  EvalResult res;
  res.grid = problem.eval_grid();
  res.y_hat = net_eval(net, res.grid);
  res.y_oracle = problem.oracle(res.grid);
  res.mae = mae(res.y_oracle, res.y_hat);
  return res;
}

}  // namespace gf::training
