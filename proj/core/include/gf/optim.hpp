#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gf/nn.hpp"
#include "gf/tensor.hpp"

namespace gf::optim {

// Piecewise-constant decay: base lr times the product of the factors of
// every passed milestone. Milestones are strictly increasing iteration
// indices; the factor applies from that iteration on.
struct LrSchedule {
  struct Milestone {
    long iteration;
    double factor;
  };
  std::vector<Milestone> milestones;

  double at(double base_lr, long iteration) const;
};

class Sgd {
 public:
  explicit Sgd(double lr) : lr_(lr) {}
  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }

  // theta <- theta - lr * g, elementwise.
  void step(std::span<const nn::Network::ParamRef> params,
            std::span<const Tensor> grads);

 private:
  double lr_;
};

class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }
  long step_count() const { return t_; }

  void step(std::span<const nn::Network::ParamRef> params,
            std::span<const Tensor> grads);

 private:
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
  std::vector<Tensor> m_, v_;  // shapes mirror the parameters
};

// Optional global max-norm gradient clipping; scales all grads by
// max_norm / ||g|| when the total norm exceeds max_norm.
void clip_grad_norm(std::vector<Tensor>& grads, double max_norm);

}  // namespace gf::optim
