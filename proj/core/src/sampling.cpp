#include "gf/sampling.hpp"

#include <stdexcept>

namespace gf::sampling {

DomainBox DomainBox::space_time(double x_lo, double x_hi, double t_max) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("DomainBox: x_lo >= x_hi");
  if (!(t_max > 0.0)) throw std::invalid_argument("DomainBox: t_max <= 0");
  return DomainBox{std::pair{x_lo, x_hi}, t_max};
}

DomainBox DomainBox::time_only(double t_max) {
  if (!(t_max > 0.0)) throw std::invalid_argument("DomainBox: t_max <= 0");
  return DomainBox{std::nullopt, t_max};
}

Tensor sample_interior(Rng& rng, const DomainBox& box, std::size_t n) {
  if (!box.has_space()) {
    return Tensor::uniform(rng, n, 1, 0.0, box.t_max);
  }
  Tensor out(n, 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, 0) = rng.uniform(box.space->first, box.space->second);
    out(i, 1) = rng.uniform(0.0, box.t_max);
  }
  return out;
}

std::pair<Tensor, Tensor> sample_boundary(Rng& rng, const DomainBox& box,
                                          std::size_t n) {
  if (!box.has_space()) {
    throw std::invalid_argument("sample_boundary: box has no spatial part");
  }
  Tensor left(n, 2, 0.0), right(n, 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    left(i, 0) = box.space->first;
    left(i, 1) = rng.uniform(0.0, box.t_max);
  }
  for (std::size_t i = 0; i < n; ++i) {
    right(i, 0) = box.space->second;
    right(i, 1) = rng.uniform(0.0, box.t_max);
  }
  return {std::move(left), std::move(right)};
}

Tensor sample_initial(Rng& rng, const DomainBox& box, std::size_t n) {
  if (!box.has_space()) {
    return Tensor::zeros(n, 1);
  }
  Tensor out(n, 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, 0) = rng.uniform(box.space->first, box.space->second);
    out(i, 1) = 0.0;
  }
  return out;
}

}  // namespace gf::sampling
