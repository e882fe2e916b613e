#include "gf/reference.hpp"

#include <cmath>
#include <sstream>

namespace gf::reference {

FdGrid fd_heat_solve(double x_lo, double x_hi, double T, std::size_t N,
                     std::size_t M,
                     const std::function<double(double)>& initial,
                     double bc_left, double bc_right) {
  if (N < 2 || M < 1) throw std::invalid_argument("fd_heat_solve: bad grid");
  const double dx = (x_hi - x_lo) / static_cast<double>(N);
  const double dt = T / static_cast<double>(M);
  const double alpha = dt / (dx * dx);
  if (alpha > 0.5) {
    // suggest the smallest stable M
    const std::size_t m_ok =
        static_cast<std::size_t>(std::ceil(2.0 * T / (dx * dx)));
    std::ostringstream os;
    os << "fd_heat_solve: unstable alpha = " << alpha
       << " > 1/2; use M >= " << m_ok;
    throw StabilityError(os.str());
  }

  FdGrid grid{N, M, x_lo, x_hi, T, dx, dt, alpha,
              std::vector<double>((M + 1) * (N + 1), 0.0)};
  for (std::size_t i = 0; i <= N; ++i) {
    grid.u[i] = initial(grid.x_at(i));
  }
  grid.u[0] = bc_left;
  grid.u[N] = bc_right;
  for (std::size_t j = 0; j < M; ++j) {
    const double* prev = &grid.u[j * (N + 1)];
    double* next = &grid.u[(j + 1) * (N + 1)];
    next[0] = bc_left;
    next[N] = bc_right;
    for (std::size_t i = 1; i < N; ++i) {
      next[i] = prev[i] + alpha * (prev[i + 1] - 2.0 * prev[i] + prev[i - 1]);
    }
  }
  return grid;
}

FhnTrajectory rk4_fhn(const FhnParams& p, double T, std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("rk4_fhn: steps < 1");
  const double h = T / static_cast<double>(steps);
  auto fy = [&](double y, double w) {
    return y - y * y * y / 3.0 - w + p.i_ext;
  };
  auto fw = [&](double y, double w) { return (y + p.alpha - p.beta * w) / p.tau; };

  FhnTrajectory traj;
  traj.t.reserve(steps + 1);
  traj.y.reserve(steps + 1);
  traj.w.reserve(steps + 1);
  double y = p.y0, w = p.w0;
  traj.t.push_back(0.0);
  traj.y.push_back(y);
  traj.w.push_back(w);
  for (std::size_t s = 0; s < steps; ++s) {
    const double k1y = fy(y, w), k1w = fw(y, w);
    const double k2y = fy(y + 0.5 * h * k1y, w + 0.5 * h * k1w);
    const double k2w = fw(y + 0.5 * h * k1y, w + 0.5 * h * k1w);
    const double k3y = fy(y + 0.5 * h * k2y, w + 0.5 * h * k2w);
    const double k3w = fw(y + 0.5 * h * k2y, w + 0.5 * h * k2w);
    const double k4y = fy(y + h * k3y, w + h * k3w);
    const double k4w = fw(y + h * k3y, w + h * k3w);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    traj.t.push_back(h * static_cast<double>(s + 1));
    traj.y.push_back(y);
    traj.w.push_back(w);
  }
  return traj;
}

double rk4_scalar(const std::function<double(double)>& f, double y0, double T,
                  std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("rk4_scalar: steps < 1");
  const double h = T / static_cast<double>(steps);
  double y = y0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

double interp(const std::vector<double>& ts, const std::vector<double>& vs,
              double t) {
  if (t <= ts.front()) return vs.front();
  if (t >= ts.back()) return vs.back();
  // ts is uniform ascending
  const double h = ts[1] - ts[0];
  const std::size_t i =
      std::min(static_cast<std::size_t>((t - ts.front()) / h), ts.size() - 2);
  const double frac = (t - ts[i]) / (ts[i + 1] - ts[i]);
  return vs[i] + frac * (vs[i + 1] - vs[i]);
}

double mc_integrate(Rng& rng, const std::function<double(double)>& f,
                    double a, double b, std::size_t k) {
  if (k < 1) throw std::invalid_argument("mc_integrate: k < 1");
  if (!(a < b)) throw std::invalid_argument("mc_integrate: a >= b");
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    acc += f(rng.uniform(a, b));
  }
  return (b - a) / static_cast<double>(k) * acc;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    std::size_t k, double a, double b) {
  if (k < 1) throw std::invalid_argument("gauss_legendre: k < 1");
  std::vector<double> nodes(k), weights(k);
  // Newton iteration on P_k with the Chebyshev-like starting guess
  for (std::size_t i = 0; i < k; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(k) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t n = 2; n <= k; ++n) {
        const double pn = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = pn;
      }
      pp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    weights[i] = (b - a) / ((1.0 - x * x) * pp * pp);
  }
  return {nodes, weights};
}

}  // namespace gf::reference
