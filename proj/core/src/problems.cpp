#include "gf/problems.hpp"

#include <cmath>

namespace gf::problems {

namespace ad = gf::ad;
using sampling::DomainBox;

namespace {

Tensor linspace_col(double lo, double hi, std::size_t n) {
  Tensor t(n, 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, 0) = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
  }
  return t;
}

constexpr double kHeatKappa = 1.0;

}  // namespace

Var heat_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
  const DomainBox box = DomainBox::space_time(0.0, M_PI, 3.0);

  // interior residual: d_t y - kappa d_xx y, derivatives via double backward
  Var xt = g.leaf(sampling::sample_interior(rng, box, n), true);
  Var u = net(xt);
  Var du = ad::grad(u, xt, Tensor::ones(n, 1), /*create_graph=*/true);
  Var du_dt = ad::col(du, 1);
  Var du_dx = ad::col(du, 0);
  Var d2u =
      ad::grad(du_dx, xt, Tensor::ones(n, 1), /*create_graph=*/true);
  Var d2u_dx2 = ad::col(d2u, 0);
  Var residual = ad::sub(du_dt, ad::mul_scalar(d2u_dx2, kHeatKappa));
  Var l_domain = ad::mean(ad::square(residual));

  // initial condition y(x, 0) = sin(x)
  Var x0 = g.constant(sampling::sample_initial(rng, box, n));
  Var y0 = net(x0);
  Var l_init = ad::mean(ad::square(ad::sub(y0, ad::sin(ad::col(x0, 0)))));

  // homogeneous Dirichlet boundaries at x = 0 and x = pi
  auto [left, right] = sampling::sample_boundary(rng, box, n);
  Var l_bd = ad::add(ad::mean(ad::square(net(g.constant(left)))),
                     ad::mean(ad::square(net(g.constant(right)))));

  return ad::add(ad::add(l_domain, l_init), l_bd);
}

Var decay_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
  const DomainBox box = DomainBox::time_only(1.0);
  Var t = g.leaf(sampling::sample_interior(rng, box, n), true);
  Var y = net(t);
  Var dy = ad::grad(y, t, Tensor::ones(n, 1), /*create_graph=*/true);
  Var l_domain = ad::mean(ad::square(ad::add(dy, y)));

  Var y0 = net(g.constant(Tensor::zeros(n, 1)));
  Var l_init = ad::mean(ad::square(ad::add_scalar(y0, -2.0)));
  return ad::add(l_domain, l_init);
}

Var fhn_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
  const reference::FhnParams p{};
  const DomainBox box = DomainBox::time_only(30.0);

  Var t = g.leaf(sampling::sample_interior(rng, box, n), true);
  Var s = net(t);
  Var y = ad::col(s, 0);
  Var w = ad::col(s, 1);
  // grad per output column; the paper's losses differentiate y and w
  // separately rather than through a jacobian
  Var dy = ad::grad(y, t, Tensor::ones(n, 1), /*create_graph=*/true);
  Var dw = ad::grad(w, t, Tensor::ones(n, 1), /*create_graph=*/true);

  Var y3 = ad::mul_scalar(ad::mul(ad::square(y), y), 1.0 / 3.0);
  Var r1 = ad::add(dy, ad::add(ad::sub(y3, y),
                               ad::add_scalar(w, -p.i_ext)));
  Var r2 = ad::add(
      dw, ad::mul_scalar(ad::sub(ad::mul_scalar(w, p.beta),
                                 ad::add_scalar(y, p.alpha)),
                         1.0 / p.tau));

  Var s0 = net(g.constant(Tensor::zeros(n, 1)));
  // initial state (0,0): squared norm summed over both components,
  // averaged over the batch
  Var l_init =
      ad::mul_scalar(ad::sum(ad::square(s0)), 1.0 / static_cast<double>(n));

  return ad::add(ad::add(ad::mean(ad::square(r1)), ad::mean(ad::square(r2))),
                 l_init);
}

Var fredholm_loss(ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n,
                  std::size_t k, const FixedQuadrature* quad) {
  if (k < 1) throw std::invalid_argument("fredholm_loss: k < 1");
  const double half_pi = M_PI / 2.0;

  Var x = g.constant(Tensor::uniform(rng, n, 1, 0.0, half_pi));
  Var sin_x = ad::sin(x);

  std::optional<Var> integral;
  auto accumulate = [&](const Var& term) {
    integral = integral ? ad::add(*integral, term) : term;
  };
  if (quad != nullptr) {
    for (std::size_t j = 0; j < quad->nodes.size(); ++j) {
      Var tj = g.constant(Tensor::full(n, 1, quad->nodes[j]));
      Var term = ad::mul(sin_x, ad::mul(ad::cos(tj), net(tj)));
      accumulate(ad::mul_scalar(term, quad->weights[j]));
    }
  } else {
    // fresh Monte Carlo points per term, one draw per batch row
    for (std::size_t j = 0; j < k; ++j) {
      Var tj = g.constant(Tensor::uniform(rng, n, 1, 0.0, half_pi));
      accumulate(ad::mul(sin_x, ad::mul(ad::cos(tj), net(tj))));
    }
    integral = ad::mul_scalar(*integral,
                              half_pi / static_cast<double>(k));
  }

  Var residual = ad::sub(ad::sub(net(x), sin_x), *integral);
  return ad::mean(ad::square(residual));
}

namespace {

nn::NetworkSpec mlp_spec(std::size_t input, std::size_t output,
                         std::size_t hidden, std::size_t total_hidden_layers,
                         nn::Init init) {
  nn::NetworkSpec s;
  s.architecture = nn::Arch::Mlp;
  s.input_dim = input;
  s.output_dim = output;
  s.hidden_size = hidden;
  s.num_layers = total_hidden_layers - 1;  // extras beyond the first
  s.activation = nn::Activation::Tanh;
  s.init = init;
  return s;
}

nn::NetworkSpec dgm_spec(std::size_t input, std::size_t output,
                         std::size_t hidden, std::size_t layers) {
  nn::NetworkSpec s;
  s.architecture = nn::Arch::Dgm;
  s.input_dim = input;
  s.output_dim = output;
  s.hidden_size = hidden;
  s.num_layers = layers;
  s.activation = nn::Activation::Relu;
  s.init = nn::Init::He;
  return s;
}

Tensor heat_oracle_eval(const Tensor& grid) {
  Tensor out(grid.rows(), 1, 0.0);
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    out(i, 0) = std::sin(grid(i, 0)) * std::exp(-kHeatKappa * grid(i, 1));
  }
  return out;
}

const reference::FhnTrajectory& fhn_reference_trajectory() {
  static const reference::FhnTrajectory traj =
      reference::rk4_fhn(reference::FhnParams{}, 30.0, 3000);
  return traj;
}

}  // namespace

const ProblemSpec& heat1d() {
  static const ProblemSpec spec = [] {
    ProblemSpec s;
    s.id = "heat1d";
    s.box = DomainBox::space_time(0.0, M_PI, 3.0);
    s.input_dim = 2;
    s.state_dim = 1;
    s.network = mlp_spec(2, 1, 128, 4, nn::Init::XavierUniform);
    s.defaults = {15000, 64, 1e-4, {}};
    s.loss = [](ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
      return heat_loss(g, net, rng, n);
    };
    s.oracle = heat_oracle_eval;
    s.eval_grid = [] {
      const std::size_t m = 50;
      Tensor grid(m * m, 2, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          grid(i * m + j, 0) = M_PI * static_cast<double>(i) / (m - 1);
          grid(i * m + j, 1) = 3.0 * static_cast<double>(j) / (m - 1);
        }
      }
      return grid;
    };
    return s;
  }();
  return spec;
}

const ProblemSpec& decay() {
  static const ProblemSpec spec = [] {
    ProblemSpec s;
    s.id = "decay";
    s.box = DomainBox::time_only(1.0);
    s.input_dim = 1;
    s.state_dim = 1;
    s.network = mlp_spec(1, 1, 32, 2, nn::Init::XavierNormal);
    s.defaults = {5000, 64, 1e-4, {}};
    s.loss = [](ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
      return decay_loss(g, net, rng, n);
    };
    s.oracle = [](const Tensor& grid) {
      Tensor out(grid.rows(), 1, 0.0);
      for (std::size_t i = 0; i < grid.rows(); ++i) {
        out(i, 0) = 2.0 * std::exp(-grid(i, 0));
      }
      return out;
    };
    s.eval_grid = [] { return linspace_col(0.0, 1.0, 50); };
    return s;
  }();
  return spec;
}

const ProblemSpec& fitzhugh_nagumo() {
  static const ProblemSpec spec = [] {
    ProblemSpec s;
    s.id = "fhn";
    s.box = DomainBox::time_only(30.0);
    s.input_dim = 1;
    s.state_dim = 2;
    s.network = dgm_spec(1, 2, 128, 4);
    s.defaults = {150000, 256, 1e-4, {{35000, 0.1}}};
    s.loss = [](ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
      return fhn_loss(g, net, rng, n);
    };
    s.oracle = [](const Tensor& grid) {
      const auto& traj = fhn_reference_trajectory();
      Tensor out(grid.rows(), 2, 0.0);
      for (std::size_t i = 0; i < grid.rows(); ++i) {
        out(i, 0) = reference::interp(traj.t, traj.y, grid(i, 0));
        out(i, 1) = reference::interp(traj.t, traj.w, grid(i, 0));
      }
      return out;
    };
    s.eval_grid = [] { return linspace_col(0.0, 30.0, 50); };
    return s;
  }();
  return spec;
}

const ProblemSpec& fredholm2() {
  static const ProblemSpec spec = [] {
    ProblemSpec s;
    s.id = "fredholm2";
    s.box = DomainBox::time_only(M_PI / 2.0);
    s.input_dim = 1;
    s.state_dim = 1;
    s.network = dgm_spec(1, 1, 32, 1);
    s.defaults = {3000, 32, 1e-4, {}};
    s.loss = [](ad::Graph& g, const NetFn& net, Rng& rng, std::size_t n) {
      return fredholm_loss(g, net, rng, n, 50);
    };
    s.oracle = [](const Tensor& grid) {
      Tensor out(grid.rows(), 1, 0.0);
      for (std::size_t i = 0; i < grid.rows(); ++i) {
        out(i, 0) = 2.0 * std::sin(grid(i, 0));
      }
      return out;
    };
    s.eval_grid = [] { return linspace_col(0.0, M_PI / 2.0, 50); };
    return s;
  }();
  return spec;
}

const ProblemSpec* find(const std::string& id) {
  if (id == "heat1d") return &heat1d();
  if (id == "decay") return &decay();
  if (id == "fhn") return &fitzhugh_nagumo();
  if (id == "fredholm2") return &fredholm2();
  return nullptr;
}

std::vector<std::string> problem_ids() {
  return {"heat1d", "decay", "fhn", "fredholm2"};
}

}  // namespace gf::problems
