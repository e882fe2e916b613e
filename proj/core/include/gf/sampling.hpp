#pragma once

#include <optional>
#include <utility>

#include "gf/rng.hpp"
#include "gf/tensor.hpp"

namespace gf::sampling {

// Sampling region for one problem. PDE problems carry a spatial interval
// and a time horizon; ODE/integral problems use a time-only box, for which
// the interior sampler returns (n,1).
struct DomainBox {
  std::optional<std::pair<double, double>> space;  // [x_lo, x_hi]
  double t_max = 1.0;

  static DomainBox space_time(double x_lo, double x_hi, double t_max);
  static DomainBox time_only(double t_max);

  bool has_space() const { return space.has_value(); }
};

// Interior minibatch. Space-time box: (n,2) with columns (x, t),
// x ~ U(x_lo, x_hi), t ~ U(0, T). Time-only box: (n,1) of t.
Tensor sample_interior(Rng& rng, const DomainBox& box, std::size_t n);

// Boundary minibatches: x pinned to each endpoint, t ~ U(0, T).
// Returns (left at x_lo, right at x_hi).
std::pair<Tensor, Tensor> sample_boundary(Rng& rng, const DomainBox& box,
                                          std::size_t n);

// Initial-time minibatch: x ~ U(x_lo, x_hi), t column exactly 0.
// Time-only box: (n,1) of zeros.
Tensor sample_initial(Rng& rng, const DomainBox& box, std::size_t n);

}  // namespace gf::sampling
