#include "gf/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace gf::optim {

double LrSchedule::at(double base_lr, long iteration) const {
  double lr = base_lr;
  long prev = -1;
  for (const auto& m : milestones) {
    if (m.iteration <= prev) {
      throw std::invalid_argument(
          "LrSchedule: milestones must be strictly increasing");
    }
    prev = m.iteration;
    if (iteration >= m.iteration) lr *= m.factor;
  }
  return lr;
}

namespace {

void check_shapes(std::span<const nn::Network::ParamRef> params,
                  std::span<const Tensor> grads) {
  if (params.size() != grads.size()) {
    throw ShapeError("optimizer: param/grad count mismatch");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].tensor->same_shape(grads[i])) {
      throw ShapeError("optimizer: shape mismatch at " + params[i].name +
                       ": " + params[i].tensor->shape_str() + " vs " +
                       grads[i].shape_str());
    }
  }
}

}  // namespace

void Sgd::step(std::span<const nn::Network::ParamRef> params,
               std::span<const Tensor> grads) {
  check_shapes(params, grads);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i].tensor;
    const Tensor& g = grads[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      p.data()[k] -= lr_ * g.data()[k];
    }
  }
}

void Adam::step(std::span<const nn::Network::ParamRef> params,
                std::span<const Tensor> grads) {
  check_shapes(params, grads);
  if (m_.empty()) {
    for (const auto& g : grads) {
      m_.push_back(Tensor::zeros(g.rows(), g.cols()));
      v_.push_back(Tensor::zeros(g.rows(), g.cols()));
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i].tensor;
    const Tensor& g = grads[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double gk = g.data()[k];
      double& m = m_[i].data()[k];
      double& v = v_[i].data()[k];
      m = beta1_ * m + (1.0 - beta1_) * gk;
      v = beta2_ * v + (1.0 - beta2_) * gk * gk;
      const double mhat = m / bc1;
      const double vhat = v / bc2;
      p.data()[k] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

void clip_grad_norm(std::vector<Tensor>& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      sq += g.data()[k] * g.data()[k];
    }
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  for (auto& g : grads) g = g.mul_scalar(scale);
}

}  // namespace gf::optim
