// Acceptance runner: one criterion per invocation, selected by argv[1]
// (1..11, plus "5f" for the tagged long FitzHugh-Nagumo full run). Each
// criterion prints exactly one PASS/FAIL line; exit code 0 iff PASS.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gf/io.hpp"
#include "gf/nn.hpp"
#include "gf/optim.hpp"
#include "gf/problems.hpp"
#include "gf/reference.hpp"
#include "gf/rng.hpp"
#include "gf/tensor.hpp"
#include "gf/training.hpp"
#include "../unit/gradcheck.hpp"

using gf::Rng;
using gf::Tensor;
namespace ad = gf::ad;
namespace nn = gf::nn;
namespace optim = gf::optim;
namespace problems = gf::problems;
namespace reference = gf::reference;
namespace training = gf::training;

namespace {

const double kPi = std::acos(-1.0);

double now_s() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

bool report(int crit, bool ok, const std::string& what,
            const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << crit << ": " << what
            << " (" << detail << ")" << std::endl;
  return ok;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---- criterion 1: gradient fidelity --------------------------------------

using OpFn = std::function<ad::Var(ad::Graph&, const std::vector<ad::Var>&)>;

struct OpCase {
  std::string name;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  double lo, hi;
  OpFn op;
};

// FD over every input entry of a small op, 20 random draws.
bool op_gradcheck(const OpCase& c, Rng& rng, double tol, double* worst) {
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<Tensor> inputs;
    for (auto [r, cc] : c.shapes)
      inputs.push_back(Tensor::uniform(rng, r, cc, c.lo, c.hi));

    auto scalar = [&](const std::vector<Tensor>& xs) {
      ad::Graph g;
      std::vector<ad::Var> vars;
      for (const auto& t : xs) vars.push_back(g.leaf(t));
      return ad::sum(c.op(g, vars)).value()(0, 0);
    };
    auto fd = gradcheck::fd_grads(scalar, inputs);

    ad::Graph g;
    std::vector<ad::Var> vars;
    for (const auto& t : inputs) vars.push_back(g.leaf(t));
    auto out = ad::sum(c.op(g, vars));
    auto gs = ad::grad(out, vars, Tensor::ones(1, 1), false);
    std::vector<Tensor> an;
    for (const auto& v : gs) an.push_back(v.value());
    double err = gradcheck::max_rel_err(an, fd);
    *worst = std::max(*worst, err);
    if (err >= tol) {
      std::cout << "  op " << c.name << " draw " << draw << " rel err " << err
                << "\n";
      return false;
    }
  }
  return true;
}

// Central-FD directional-derivative check at the current parameters.
double directional_rel_err(const std::vector<nn::Network::ParamRef>& refs,
                           const std::function<double()>& scalar,
                           const std::function<std::vector<Tensor>()>& grads,
                           Rng& rng, double h = 1e-5) {
  std::vector<Tensor> theta0, dir;
  double norm2 = 0.0;
  for (const auto& r : refs) {
    theta0.push_back(*r.tensor);
    Tensor d = Tensor::normal(rng, r.tensor->rows(), r.tensor->cols(), 0, 1);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) norm2 += d(i, j) * d(i, j);
    dir.push_back(std::move(d));
  }
  const double inv = 1.0 / std::sqrt(norm2);

  auto g = grads();
  double analytic = 0.0;
  for (std::size_t p = 0; p < refs.size(); ++p)
    for (std::size_t i = 0; i < g[p].rows(); ++i)
      for (std::size_t j = 0; j < g[p].cols(); ++j)
        analytic += g[p](i, j) * dir[p](i, j) * inv;

  auto shift = [&](double eps) {
    for (std::size_t p = 0; p < refs.size(); ++p)
      *refs[p].tensor = theta0[p].add(dir[p].mul_scalar(eps * inv));
  };
  shift(h);
  const double fp = scalar();
  shift(-h);
  const double fm = scalar();
  for (std::size_t p = 0; p < refs.size(); ++p) *refs[p].tensor = theta0[p];
  return gradcheck::rel_err((fp - fm) / (2.0 * h), analytic);
}

bool criterion_1() {
  const double t0 = now_s();
  Rng rng(2024);
  double worst_op = 0.0;
  bool ok = true;

  auto unary = [](ad::Var (*f)(const ad::Var&)) {
    return [f](ad::Graph&, const std::vector<ad::Var>& v) { return f(v[0]); };
  };
  auto binary = [](ad::Var (*f)(const ad::Var&, const ad::Var&)) {
    return [f](ad::Graph&, const std::vector<ad::Var>& v) {
      return f(v[0], v[1]);
    };
  };

  const std::vector<OpCase> cases = {
      {"add", {{3, 2}, {3, 2}}, -2, 2, binary(ad::add)},
      {"add_bcast", {{3, 2}, {1, 2}}, -2, 2, binary(ad::add)},
      {"sub", {{3, 2}, {3, 2}}, -2, 2, binary(ad::sub)},
      {"mul", {{3, 2}, {3, 2}}, -2, 2, binary(ad::mul)},
      {"mul_bcast", {{3, 2}, {1, 2}}, -2, 2, binary(ad::mul)},
      {"div", {{3, 2}, {3, 2}}, 0.5, 2, binary(ad::div)},
      {"matmul", {{3, 2}, {2, 4}}, -1, 1, binary(ad::matmul)},
      {"neg", {{3, 2}}, -2, 2, unary(ad::neg)},
      {"square", {{3, 2}}, -2, 2, unary(ad::square)},
      {"sqrt", {{3, 2}}, 0.5, 4, unary(ad::sqrt)},
      {"sin", {{3, 2}}, -3, 3, unary(ad::sin)},
      {"cos", {{3, 2}}, -3, 3, unary(ad::cos)},
      {"exp", {{3, 2}}, -2, 2, unary(ad::exp)},
      {"tanh", {{3, 2}}, -2, 2, unary(ad::tanh)},
      {"sigmoid", {{3, 2}}, -3, 3, unary(ad::sigmoid)},
      {"relu_pos", {{3, 2}}, 0.1, 2, unary(ad::relu)},
      {"relu_neg", {{3, 2}}, -2, -0.1, unary(ad::relu)},
      {"transpose", {{3, 2}}, -2, 2, unary(ad::transpose)},
      {"sum", {{3, 2}}, -2, 2, unary(ad::sum)},
      {"mean", {{3, 2}}, -2, 2, unary(ad::mean)},
      {"col_sum", {{3, 2}}, -2, 2, unary(ad::col_sum)},
      {"col_mean", {{3, 2}}, -2, 2, unary(ad::col_mean)},
      {"add_scalar", {{3, 2}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::add_scalar(v[0], 1.7);
       }},
      {"mul_scalar", {{3, 2}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::mul_scalar(v[0], -0.6);
       }},
      {"rsub_scalar", {{3, 2}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::rsub_scalar(2.5, v[0]);
       }},
      {"expand", {{1, 1}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::expand(v[0], 4, 3);
       }},
      {"tile_rows", {{1, 3}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::tile_rows(v[0], 5);
       }},
      {"slice_cols", {{3, 4}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::slice_cols(v[0], 1, 3);
       }},
      {"col", {{3, 4}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::col(v[0], 2);
       }},
      {"concat_cols", {{3, 2}, {3, 1}}, -2, 2,
       [](ad::Graph&, const std::vector<ad::Var>& v) {
         return ad::square(ad::concat_cols({v[0], v[1]}));
       }},
  };
  for (const auto& c : cases)
    if (!op_gradcheck(c, rng, 1e-5, &worst_op)) ok = false;

  // architectures at full write-up sizes, 20 random parameter draws each
  double worst_arch = 0.0;
  struct ArchCase {
    const char* name;
    nn::NetworkSpec spec;
  };
  nn::NetworkSpec mlp;
  mlp.architecture = nn::Arch::Mlp;
  mlp.input_dim = 2;
  mlp.hidden_size = 128;
  mlp.num_layers = 3;  // 4 hidden layers
  nn::NetworkSpec dgm = mlp;
  dgm.architecture = nn::Arch::Dgm;
  dgm.num_layers = 4;
  dgm.activation = nn::Activation::Tanh;
  nn::NetworkSpec res = mlp;
  res.architecture = nn::Arch::ResNet;
  res.num_layers = 1;  // one residual block
  for (const auto& a : {ArchCase{"mlp", mlp}, ArchCase{"dgm", dgm},
                        ArchCase{"resnet", res}}) {
    const Tensor x = Tensor::uniform(rng, 4, 2, -1, 1);
    for (int draw = 0; draw < 20; ++draw) {
      auto net = nn::make_network(a.spec, rng);
      auto refs = net->parameters();
      auto scalar = [&]() {
        ad::Graph g;
        nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
        return ad::mean(ad::square(bound(g.constant(x)))).value()(0, 0);
      };
      auto grads = [&]() {
        ad::Graph g;
        nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
        auto loss = ad::mean(ad::square(bound(g.constant(x))));
        return bound.grad_values(loss);
      };
      double err = directional_rel_err(refs, scalar, grads, rng);
      worst_arch = std::max(worst_arch, err);
      if (err >= 1e-5) {
        std::cout << "  arch " << a.name << " draw " << draw << " rel err "
                  << err << "\n";
        ok = false;
      }
    }
  }

  // the four loss functions, small nets, deterministic minibatches
  double worst_loss = 0.0;
  auto [qn, qw] = reference::gauss_legendre(8, 0.0, kPi / 2);
  problems::FixedQuadrature quad{qn, qw};
  for (const auto* p :
       {&problems::heat1d(), &problems::decay(), &problems::fitzhugh_nagumo(),
        &problems::fredholm2()}) {
    nn::NetworkSpec spec = p->network;
    spec.hidden_size = 4;
    spec.num_layers = 1;
    for (int draw = 0; draw < 20; ++draw) {
      auto net = nn::make_network(spec, rng);
      auto refs = net->parameters();
      auto build = [&](ad::Graph& g, nn::BoundNetwork& bound) {
        Rng lrng(123);
        problems::NetFn f = [&](const ad::Var& v) { return bound(v); };
        return p->id == "fredholm2"
                   ? problems::fredholm_loss(g, f, lrng, 6, 8, &quad)
                   : p->loss(g, f, lrng, 6);
      };
      auto scalar = [&]() {
        ad::Graph g;
        nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
        return build(g, bound).value()(0, 0);
      };
      auto grads = [&]() {
        ad::Graph g;
        nn::BoundNetwork bound(*net, g, nn::Mode::Eval);
        return bound.grad_values(build(g, bound));
      };
      double err = directional_rel_err(refs, scalar, grads, rng);
      worst_loss = std::max(worst_loss, err);
      if (err >= 1e-4) {
        std::cout << "  loss " << p->id << " draw " << draw << " rel err "
                  << err << "\n";
        ok = false;
      }
    }
  }

  const double dt = now_s() - t0;
  if (dt >= 60.0) ok = false;
  std::ostringstream d;
  d << "worst rel err: ops " << worst_op << ", archs " << worst_arch
    << ", losses " << worst_loss << "; " << dt << " s";
  return report(1, ok, "gradient fidelity vs central finite differences",
                d.str());
}

// ---- trained-problem criteria --------------------------------------------

struct RunOutcome {
  training::TrainResult res;
  double mae = 0.0;
  double wall_s = 0.0;
};

RunOutcome run_problem(const problems::ProblemSpec& p,
                       training::TrainConfig cfg) {
  const double t0 = now_s();
  RunOutcome out{training::train(p, cfg)};
  out.mae = training::evaluate(*out.res.net, p).mae;
  out.wall_s = now_s() - t0;
  return out;
}

bool criterion_2() {
  // 3000-iteration smoke variant first: MAE <= 0.25 in under 4 min
  auto cfg = training::TrainConfig::defaults_for(problems::heat1d());
  cfg.iterations = 3000;
  auto smoke = run_problem(problems::heat1d(), cfg);
  bool smoke_ok = smoke.mae <= 0.25 && smoke.wall_s < 240.0;

  // full default run: MAE <= 0.1 and loss < 0.05 by iteration 2000
  cfg = training::TrainConfig::defaults_for(problems::heat1d());
  auto full = run_problem(problems::heat1d(), cfg);
  const double loss2000 = full.res.history.loss[1999];
  bool full_ok =
      full.mae <= 0.1 && loss2000 < 0.05 && full.wall_s < 1200.0;

  std::ostringstream d;
  d << "full mae " << full.mae << " (<=0.1), loss@2000 " << loss2000
    << " (<0.05), " << full.wall_s << " s; smoke mae " << smoke.mae
    << " (<=0.25), " << smoke.wall_s << " s";
  return report(2, smoke_ok && full_ok, "heat equation vs sin(x)e^-t",
                d.str());
}

bool criterion_3() {
  auto cfg = training::TrainConfig::defaults_for(problems::decay());
  auto out = run_problem(problems::decay(), cfg);
  std::ostringstream d;
  d << "mae " << out.mae << " (<=0.01), " << out.wall_s << " s";
  return report(3, out.mae <= 0.01 && out.wall_s < 180.0,
                "exponential decay vs 2e^-t", d.str());
}

bool criterion_4() {
  auto cfg = training::TrainConfig::defaults_for(problems::fredholm2());
  auto out = run_problem(problems::fredholm2(), cfg);
  std::ostringstream d;
  d << "mae " << out.mae << " (<=0.05), " << out.wall_s << " s";
  return report(4, out.mae <= 0.05 && out.wall_s < 300.0,
                "Fredholm second kind vs 2 sin(x)", d.str());
}

bool criterion_5(bool full) {
  auto cfg = training::TrainConfig::defaults_for(problems::fitzhugh_nagumo());
  if (full) {
    auto out = run_problem(problems::fitzhugh_nagumo(), cfg);
    std::ostringstream d;
    d << "mae " << out.mae << " (<=0.05), " << out.wall_s << " s";
    return report(5, out.mae <= 0.05, "FitzHugh-Nagumo full 150k run",
                  d.str());
  }
  cfg.iterations = 20000;
  auto out = run_problem(problems::fitzhugh_nagumo(), cfg);
  const double first = out.res.history.loss.front();
  const double last = out.res.history.loss.back();
  std::ostringstream d;
  d << "loss " << first << " -> " << last << " (need <= initial/100), mae "
    << out.mae << ", " << out.wall_s << " s";
  return report(5, last <= first / 100.0, "FitzHugh-Nagumo 20k smoke",
                d.str());
}

bool criterion_6() {
  const std::size_t N = 64;
  const double T = 3.0;
  const double dx = kPi / static_cast<double>(N);
  const auto M = static_cast<std::size_t>(std::ceil(T / (0.4 * dx * dx)));
  auto grid = reference::fd_heat_solve(
      0.0, kPi, T, N, M, [](double x) { return std::sin(x); }, 0.0, 0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j <= grid.M; ++j)
    for (std::size_t i = 0; i <= grid.N; ++i)
      worst = std::max(worst, std::abs(grid.at(j, i) -
                                       std::sin(grid.x_at(i)) *
                                           std::exp(-grid.t_at(j))));
  bool rejected = false;
  try {
    // M chosen so alpha > 1/2
    reference::fd_heat_solve(0.0, kPi, T, N,
                             static_cast<std::size_t>(T / (0.6 * dx * dx)),
                             [](double x) { return std::sin(x); }, 0.0, 0.0);
  } catch (const reference::StabilityError&) {
    rejected = true;
  }
  std::ostringstream d;
  d << "max err " << worst << " (<5e-3), alpha " << grid.alpha
    << ", unstable alpha rejected: " << (rejected ? "yes" : "no");
  return report(6, worst < 5e-3 && rejected, "explicit FD heat oracle",
                d.str());
}

bool criterion_7() {
  Rng rng(77);
  ad::Graph g1;
  problems::NetFn heat_exact = [](const ad::Var& v) {
    return ad::mul(ad::sin(ad::col(v, 0)), ad::exp(ad::neg(ad::col(v, 1))));
  };
  const double heat = problems::heat_loss(g1, heat_exact, rng, 256)
                          .value()(0, 0);

  ad::Graph g2;
  problems::NetFn decay_exact = [](const ad::Var& v) {
    return ad::mul_scalar(ad::exp(ad::neg(v)), 2.0);
  };
  const double decay = problems::decay_loss(g2, decay_exact, rng, 256)
                           .value()(0, 0);

  auto [qn, qw] = reference::gauss_legendre(50, 0.0, kPi / 2);
  problems::FixedQuadrature quad{qn, qw};
  ad::Graph g3;
  problems::NetFn fred_exact = [](const ad::Var& v) {
    return ad::mul_scalar(ad::sin(v), 2.0);
  };
  const double fred =
      problems::fredholm_loss(g3, fred_exact, rng, 256, 50, &quad)
          .value()(0, 0);

  std::ostringstream d;
  d << "heat " << heat << " decay " << decay
    << " (<1e-8), fredholm frozen " << fred << " (<1e-10)";
  return report(7, heat < 1e-8 && decay < 1e-8 && fred < 1e-10,
                "closed-form solutions annihilate their losses", d.str());
}

bool criterion_8() {
  const double t0 = now_s();
  std::vector<double> med1, medians;
  double m1 = 0.0, m4 = 0.0;
  for (std::size_t bs = 1; bs <= 1024; bs *= 2) {
    auto cfg = training::TrainConfig::defaults_for(problems::heat1d());
    cfg.iterations = 1000;
    cfg.batch_size = bs;
    cfg.hidden_size = 64;  // documented deviation, keeps the run under budget
    cfg.seed = 0;
    auto res = training::train(problems::heat1d(), cfg);
    std::vector<double> window(res.history.loss.begin() + 99,
                               res.history.loss.end());
    const double m = median(window);
    medians.push_back(m);
    if (bs == 1) m1 = m;
    if (bs == 4) m4 = m;
  }
  const double dt = now_s() - t0;
  std::ostringstream d;
  d << "median loss iters 100-1000: n=1 " << m1 << " vs n=4 " << m4 << ", "
    << dt << " s";
  return report(8, m1 > m4 && dt < 900.0,
                "batch size one decreases loss slowest", d.str());
}

bool criterion_9() {
  Rng rng(5);
  // Xavier: variance within 20% of 1/fan-in at fan-in 100 over 1e4 draws
  nn::NetworkSpec spec;
  spec.init = nn::Init::XavierNormal;
  Tensor W = nn::init_weight(spec, rng, 100, 100);
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t j = 0; j < 100; ++j) mean += W(i, j);
  mean /= 1e4;
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t j = 0; j < 100; ++j)
      var += (W(i, j) - mean) * (W(i, j) - mean);
  var /= 1e4;
  bool xavier_ok = std::abs(var - 0.01) < 0.002;

  const double mc = reference::mc_integrate(
      rng, [](double x) { return std::cos(x); }, 0.0, kPi / 2, 100000);
  bool mc_ok = std::abs(mc - 1.0) < 0.02;

  // BN train mode: alpha=1, beta=0 -> exactly standardized columns
  ad::Graph g;
  nn::BatchNormState state(3);
  state.eps = 0.0;  // isolate the standardization math from the guard
  auto x = g.constant(Tensor::uniform(rng, 256, 3, -5, 5));
  auto out = nn::batchnorm_forward(state, x, g.constant(Tensor::ones(1, 3)),
                                   g.constant(Tensor::zeros(1, 3)),
                                   nn::Mode::Train);
  double worst_mean = 0.0, worst_var = 0.0;
  const Tensor& y = out.value();
  for (std::size_t j = 0; j < 3; ++j) {
    double mu = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < 256; ++i) mu += y(i, j);
    mu /= 256.0;
    for (std::size_t i = 0; i < 256; ++i) s2 += (y(i, j) - mu) * (y(i, j) - mu);
    s2 /= 256.0;  // biased, matching train-mode normalization
    worst_mean = std::max(worst_mean, std::abs(mu));
    worst_var = std::max(worst_var, std::abs(s2 - 1.0));
  }
  bool bn_ok = worst_mean < 1e-10 && worst_var < 1e-10;

  std::ostringstream d;
  d << "xavier var " << var << " (0.01 +-20%), mc integral " << mc
    << " (1 +-0.02), bn |mean| " << worst_mean << " |var-1| " << worst_var;
  return report(9, xavier_ok && mc_ok && bn_ok, "statistical suites",
                d.str());
}

bool criterion_10() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gf_acceptance_det";
  fs::create_directories(dir);
  auto emit = [&](const fs::path& p) {
    auto cfg = training::TrainConfig::defaults_for(problems::decay());
    cfg.iterations = 300;
    cfg.seed = 7;
    auto res = training::train(problems::decay(), cfg);
    gf::io::CsvWriter csv(p.string());
    csv.header({"iteration", "loss", "lr"});
    for (std::size_t i = 0; i < res.history.loss.size(); ++i) {
      std::vector<double> row = {static_cast<double>(i + 1),
                                 res.history.loss[i], res.history.lr[i]};
      csv.row(row);
    }
  };
  emit(dir / "a.csv");
  emit(dir / "b.csv");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  fs::remove_all(dir);
  std::ostringstream d;
  d << a.size() << " bytes, identical: " << (a == b ? "yes" : "no");
  return report(10, !a.empty() && a == b,
                "fixed seed gives byte-identical loss CSVs", d.str());
}

bool criterion_11() {
  // same recipe as the uat-demo CLI command
  Rng rng(0);
  const std::size_t n = 50;
  Tensor x(n, 1), y(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
    x(i, 0) = xi;
    y(i, 0) = std::sin(3.0 * xi);
  }
  nn::NetworkSpec spec;
  spec.input_dim = 1;
  spec.hidden_size = 3;
  spec.num_layers = 0;
  auto net = nn::make_network(spec, rng);
  optim::Adam adam(0.01);
  for (long it = 0; it < 20000; ++it) {
    ad::Graph g;
    nn::BoundNetwork bound(*net, g, nn::Mode::Train);
    auto loss =
        ad::mean(ad::square(ad::sub(bound(g.constant(x)), g.constant(y))));
    auto grads = bound.grad_values(loss);
    auto params = net->parameters();
    adam.step(params, grads);
  }
  const double mae = training::mae(y, training::net_eval(*net, x));
  std::ostringstream d;
  d << "mae " << mae << " (<0.05)";
  return report(11, mae < 0.05, "1-3-1 tanh net fits sin(3x)", d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <1..11|5f>\n";
    return 2;
  }
  const std::string which = argv[1];
  bool ok = false;
  if (which == "1") ok = criterion_1();
  else if (which == "2") ok = criterion_2();
  else if (which == "3") ok = criterion_3();
  else if (which == "4") ok = criterion_4();
  else if (which == "5") ok = criterion_5(false);
  else if (which == "5f") ok = criterion_5(true);
  else if (which == "6") ok = criterion_6();
  else if (which == "7") ok = criterion_7();
  else if (which == "8") ok = criterion_8();
  else if (which == "9") ok = criterion_9();
  else if (which == "10") ok = criterion_10();
  else if (which == "11") ok = criterion_11();
  else {
    std::cerr << "unknown criterion '" << which << "'\n";
    return 2;
  }
  return ok ? 0 : 1;
}
