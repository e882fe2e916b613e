#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gf/rng.hpp"
#include "gf/tensor.hpp"

namespace gf::reference {

// Explicit forward-in-time, centered-in-space grid for the 1-D heat
// equation. Stability requires alpha = dt/dx^2 <= 1/2; construction
// rejects anything else.
struct FdGrid {
  std::size_t N;  // spatial intervals (N+1 nodes)
  std::size_t M;  // time intervals (M+1 levels)
  double x_lo, x_hi, T;
  double dx, dt, alpha;
  std::vector<double> u;  // (M+1) x (N+1), row-major, row = time level

  double at(std::size_t j, std::size_t i) const { return u[j * (N + 1) + i]; }
  double x_at(std::size_t i) const { return x_lo + dx * static_cast<double>(i); }
  double t_at(std::size_t j) const { return dt * static_cast<double>(j); }
};

struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FdGrid fd_heat_solve(double x_lo, double x_hi, double T, std::size_t N,
                     std::size_t M,
                     const std::function<double(double)>& initial,
                     double bc_left, double bc_right);

// FitzHugh-Nagumo parameters and start state.
struct FhnParams {
  double alpha = 0.7;
  double beta = 0.8;
  double tau = 2.5;
  double i_ext = 0.5;
  double y0 = 0.0;
  double w0 = 0.0;
};

struct FhnTrajectory {
  std::vector<double> t, y, w;  // steps + 1 entries each
};

// Fixed-step classic RK4 over [0, T] from (y0, w0).
FhnTrajectory rk4_fhn(const FhnParams& params, double T, std::size_t steps);

// Fixed-step RK4 for a scalar autonomous ODE y' = f(y); returns y(T).
double rk4_scalar(const std::function<double(double)>& f, double y0, double T,
                  std::size_t steps);

// Linear interpolation of a trajectory component at time t.
double interp(const std::vector<double>& ts, const std::vector<double>& vs,
              double t);

// (b-a)/k * sum f(x_j), x_j ~ U(a, b).
double mc_integrate(Rng& rng, const std::function<double(double)>& f,
                    double a, double b, std::size_t k);

// Gauss-Legendre nodes/weights on [a, b]; exact for polynomials up to
// degree 2k-1, used as the frozen quadrature in tests.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    std::size_t k, double a, double b);

}  // namespace gf::reference
