// gf: train Deep Galerkin models on the built-in problems, run ablations
// and tuner studies, and dump oracle solutions. Everything lands as CSV
// (plus one summary.json per training run); see README for the schemas.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gf/io.hpp"
#include "gf/nn.hpp"
#include "gf/optim.hpp"
#include "gf/problems.hpp"
#include "gf/reference.hpp"
#include "gf/rng.hpp"
#include "gf/tensor.hpp"
#include "gf/training.hpp"
#include "gf/tuner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("GF_OUT_DIR")) return env;
  return ".";
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + out);
  return dir;
}

const gf::problems::ProblemSpec& require_problem(const std::string& id) {
  const auto* p = gf::problems::find(id);
  if (!p) {
    std::string known;
    for (const auto& s : gf::problems::problem_ids()) {
      if (!known.empty()) known += ", ";
      known += s;
    }
    throw UsageError("unknown problem '" + id + "' (known: " + known + ")");
  }
  return *p;
}

gf::nn::Activation parse_activation(const std::string& s) {
  if (s == "tanh") return gf::nn::Activation::Tanh;
  if (s == "relu") return gf::nn::Activation::Relu;
  if (s == "sigmoid") return gf::nn::Activation::Sigmoid;
  throw UsageError("unknown activation '" + s + "'");
}

gf::nn::BatchNormMode parse_bn(const std::string& s) {
  if (s == "off") return gf::nn::BatchNormMode::Off;
  if (s == "before") return gf::nn::BatchNormMode::BeforeActivation;
  if (s == "after") return gf::nn::BatchNormMode::AfterActivation;
  throw UsageError("unknown batch-norm mode '" + s + "' (off|before|after)");
}

// Optional flag overrides collected from the command line; applied after
// the config file so precedence is defaults < file < flags.
struct Overrides {
  std::optional<long> iterations;
  std::optional<long> batch_size;
  std::optional<double> lrate;
  std::optional<std::uint64_t> seed;
  std::optional<long> hidden_size;
  std::optional<long> num_layers;
  std::optional<std::string> activation;
  std::optional<std::string> batch_norm;
  std::optional<double> clip_norm;
};

void apply_kv(gf::training::TrainConfig& cfg, const std::string& key,
              const std::string& value) {
  try {
    if (key == "iterations") cfg.iterations = std::stol(value);
    else if (key == "batch_size") cfg.batch_size = std::stoul(value);
    else if (key == "lrate") cfg.lrate = std::stod(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "hidden_size") cfg.hidden_size = std::stoul(value);
    else if (key == "num_layers") cfg.num_layers = std::stoul(value);
    else if (key == "activation") cfg.activation = parse_activation(value);
    else if (key == "batch_norm") cfg.batch_norm = parse_bn(value);
    else if (key == "clip_norm") cfg.clip_norm = std::stod(value);
    else throw UsageError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw UsageError("bad value '" + value + "' for config key '" + key + "'");
  }
}

void load_config_file(gf::training::TrainConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    apply_kv(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

gf::training::TrainConfig build_config(const gf::problems::ProblemSpec& p,
                                       const std::string& config_file,
                                       const Overrides& ov) {
  auto cfg = gf::training::TrainConfig::defaults_for(p);
  if (!config_file.empty()) load_config_file(cfg, config_file);
  if (ov.iterations) cfg.iterations = *ov.iterations;
  if (ov.batch_size) cfg.batch_size = static_cast<std::size_t>(*ov.batch_size);
  if (ov.lrate) cfg.lrate = *ov.lrate;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.hidden_size) cfg.hidden_size = static_cast<std::size_t>(*ov.hidden_size);
  if (ov.num_layers) cfg.num_layers = static_cast<std::size_t>(*ov.num_layers);
  if (ov.activation) cfg.activation = parse_activation(*ov.activation);
  if (ov.batch_norm) cfg.batch_norm = parse_bn(*ov.batch_norm);
  if (ov.clip_norm) cfg.clip_norm = *ov.clip_norm;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void write_loss_csv(const fs::path& path,
                    const gf::training::TrainHistory& h) {
  gf::io::CsvWriter csv(path.string());
  csv.header({"iteration", "loss", "lr"});
  for (std::size_t i = 0; i < h.loss.size(); ++i) {
    std::vector<double> row = {static_cast<double>(i + 1), h.loss[i], h.lr[i]};
    csv.row(row);
  }
}

void write_solution_csv(const fs::path& path,
                        const gf::problems::ProblemSpec& p,
                        const gf::training::EvalResult& ev) {
  gf::io::CsvWriter csv(path.string());
  std::vector<std::string> header;
  if (p.input_dim == 2) {
    header = {"x", "t"};
  } else {
    header = {p.id == "fredholm2" ? "x" : "t"};
  }
  const std::size_t sd = p.state_dim;
  auto col_names = [&](const std::string& base) {
    if (sd == 1) {
      header.push_back(base);
    } else {
      for (std::size_t k = 0; k < sd; ++k)
        header.push_back(base + "_" + std::to_string(k));
    }
  };
  col_names("y_hat");
  col_names("y_oracle");
  col_names("abs_err");
  csv.header(header);

  for (std::size_t r = 0; r < ev.grid.rows(); ++r) {
    std::vector<double> row;
    for (std::size_t c = 0; c < ev.grid.cols(); ++c)
      row.push_back(ev.grid(r, c));
    for (std::size_t k = 0; k < sd; ++k) row.push_back(ev.y_hat(r, k));
    for (std::size_t k = 0; k < sd; ++k) row.push_back(ev.y_oracle(r, k));
    for (std::size_t k = 0; k < sd; ++k)
      row.push_back(std::abs(ev.y_hat(r, k) - ev.y_oracle(r, k)));
    csv.row(row);
  }
}

json config_json(const gf::problems::ProblemSpec& p,
                 const gf::training::TrainConfig& cfg) {
  auto spec = gf::training::resolve_network_spec(p, cfg);
  json j;
  j["problem"] = p.id;
  j["iterations"] = cfg.iterations;
  j["batch_size"] = cfg.batch_size;
  j["lrate"] = cfg.lrate;
  j["seed"] = cfg.seed;
  j["architecture"] = gf::nn::to_string(spec.architecture);
  j["hidden_size"] = spec.hidden_size;
  j["num_layers"] = spec.num_layers;
  j["activation"] = gf::nn::to_string(spec.activation);
  j["batch_norm"] = gf::nn::to_string(spec.batch_norm);
  j["init"] = gf::nn::to_string(spec.init);
  if (cfg.clip_norm) j["clip_norm"] = *cfg.clip_norm;
  return j;
}

int cmd_train(const std::string& problem_id, const std::string& config_file,
              const Overrides& ov, const std::string& out,
              const std::string& save_params_path) {
  const auto& p = require_problem(problem_id);
  auto cfg = build_config(p, config_file, ov);
  auto dir = ensure_out_dir(out);

  std::cerr << "training " << p.id << ": " << cfg.iterations
            << " iterations, batch " << cfg.batch_size << ", lr " << cfg.lrate
            << ", seed " << cfg.seed << "\n";

  gf::training::TrainResult res;
  try {
    res = gf::training::train(p, cfg);
  } catch (const gf::training::TrainingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }

  write_loss_csv(dir / "loss.csv", res.history);
  auto ev = gf::training::evaluate(*res.net, p);
  write_solution_csv(dir / "solution.csv", p, ev);

  json summary;
  summary["config"] = config_json(p, cfg);
  summary["final_loss"] = res.history.loss.back();
  summary["final_mae"] = ev.mae;
  summary["wall_time_s"] = res.history.wall_time_s;
  summary["timestamp"] = static_cast<long>(std::time(nullptr));
  std::ofstream(dir / "summary.json") << summary.dump(2) << "\n";

  if (!save_params_path.empty()) gf::nn::save_params(*res.net, save_params_path);

  std::cout << "final loss " << res.history.loss.back() << ", MAE " << ev.mae
            << " (" << res.history.wall_time_s << " s)\n";
  return kExitOk;
}

int cmd_ablate_batch(const std::string& problem_id, const Overrides& ov,
                     const std::string& out) {
  const auto& p = require_problem(problem_id);
  auto dir = ensure_out_dir(out);

  Overrides base = ov;
  if (!base.iterations) base.iterations = 1000;
  if (!base.hidden_size) base.hidden_size = 64;  // keeps the sweep on budget

  std::vector<std::vector<double>> series;
  std::vector<std::size_t> sizes;
  for (int e = 0; e <= 10; ++e) sizes.push_back(std::size_t{1} << e);

  for (std::size_t n : sizes) {
    Overrides o = base;
    o.batch_size = static_cast<long>(n);
    auto cfg = build_config(p, "", o);
    std::cerr << "batch " << n << "...\n";
    auto res = gf::training::train(p, cfg);
    write_loss_csv(dir / ("loss_n" + std::to_string(n) + ".csv"), res.history);
    series.push_back(std::move(res.history.loss));
  }

  gf::io::CsvWriter csv((dir / "ablate_batch.csv").string());
  std::vector<std::string> header = {"iteration"};
  for (std::size_t n : sizes) header.push_back("n" + std::to_string(n));
  csv.header(header);
  for (std::size_t i = 0; i < series[0].size(); ++i) {
    std::vector<double> row = {static_cast<double>(i + 1)};
    for (const auto& s : series) row.push_back(s[i]);
    csv.row(row);
  }
  return kExitOk;
}

int cmd_ablate_bn(const std::string& problem_id, const Overrides& ov,
                  const std::string& out) {
  const auto& p = require_problem(problem_id);
  auto dir = ensure_out_dir(out);

  Overrides base = ov;
  if (!base.iterations) base.iterations = 1000;
  if (!base.batch_size) base.batch_size = 64;

  const std::vector<std::string> acts = {"tanh", "relu"};
  const std::vector<std::string> bns = {"off", "before", "after"};

  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  std::vector<std::string> status;
  long iters = *base.iterations;

  for (const auto& act : acts) {
    for (const auto& bn : bns) {
      Overrides o = base;
      o.activation = act;
      o.batch_norm = bn;
      auto cfg = build_config(p, "", o);
      std::string name = act + "_" + bn;
      std::cerr << name << "...\n";
      try {
        auto res = gf::training::train(p, cfg);
        write_loss_csv(dir / ("loss_" + name + ".csv"), res.history);
        series.push_back(std::move(res.history.loss));
        status.push_back("ok");
      } catch (const gf::training::TrainingError& e) {
        // a diverging series is a result, not a crash
        series.emplace_back();
        status.push_back("failed@" + std::to_string(e.iteration));
      }
      names.push_back(name);
    }
  }

  gf::io::CsvWriter csv((dir / "ablate_bn.csv").string());
  std::vector<std::string> header = {"iteration"};
  for (const auto& n : names) header.push_back(n);
  csv.header(header);
  for (long i = 0; i < iters; ++i) {
    std::vector<std::string> row = {std::to_string(i + 1)};
    for (const auto& s : series)
      row.push_back(static_cast<std::size_t>(i) < s.size()
                        ? gf::io::format_double(s[i])
                        : "");
    csv.raw_row(row);
  }

  json manifest;
  for (std::size_t i = 0; i < names.size(); ++i) manifest[names[i]] = status[i];
  std::ofstream(dir / "ablate_bn_status.json") << manifest.dump(2) << "\n";
  return kExitOk;
}

int cmd_tune(const std::string& problem_id, const Overrides& ov,
             const std::string& out, gf::tuner::SearchSpace space, int trials,
             int concurrency, const std::string& objective_name) {
  const auto& p = require_problem(problem_id);
  auto dir = ensure_out_dir(out);

  space.trials = trials;
  space.concurrency = concurrency;
  try {
    space.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  gf::tuner::Objective obj;
  if (objective_name == "loss") obj = gf::tuner::Objective::FinalLoss;
  else if (objective_name == "mae") obj = gf::tuner::Objective::FinalMae;
  else throw UsageError("unknown objective '" + objective_name + "' (loss|mae)");

  auto base = gf::training::TrainConfig::defaults_for(p);
  std::uint64_t master = ov.seed.value_or(0);

  auto results = gf::tuner::random_search(space, p, base, master, obj);

  gf::io::CsvWriter csv((dir / "tuner.csv").string());
  csv.header({"trial-id", "batch_size", "n_iters", "lrate", "objective",
              "status", "wall_time_s"});
  for (const auto& r : results) {
    std::vector<std::string> row = {
        std::to_string(r.trial_id),
        std::to_string(r.batch_size),
        std::to_string(r.iterations),
        gf::io::format_double(r.lrate),
        r.failed ? "nan" : gf::io::format_double(r.objective),
        r.failed ? "failed" : "ok",
        gf::io::format_double(r.wall_time_s)};
    csv.raw_row(row);
  }
  if (!results.empty() && !results.front().failed) {
    std::cout << "best: batch " << results.front().batch_size << ", iters "
              << results.front().iterations << ", lr " << results.front().lrate
              << " -> " << results.front().objective << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const std::string& problem_id, const std::string& out,
               std::size_t fd_n, double fd_alpha, std::size_t steps) {
  const auto& p = require_problem(problem_id);
  auto dir = ensure_out_dir(out);

  if (p.id == "heat1d") {
    const double pi = std::acos(-1.0);
    const double T = 3.0;
    double dx = pi / static_cast<double>(fd_n);
    auto M = static_cast<std::size_t>(std::ceil(T / (fd_alpha * dx * dx)));
    auto grid = gf::reference::fd_heat_solve(
        0.0, pi, T, fd_n, M, [](double x) { return std::sin(x); }, 0.0, 0.0);
    gf::io::CsvWriter csv((dir / "oracle_heat1d.csv").string());
    csv.header({"x", "t", "u_fd", "u_exact", "abs_err"});
    double max_err = 0.0;
    for (std::size_t j = 0; j <= grid.M; ++j) {
      for (std::size_t i = 0; i <= grid.N; ++i) {
        double x = grid.x_at(i), t = grid.t_at(j);
        double exact = std::sin(x) * std::exp(-t);
        double err = std::abs(grid.at(j, i) - exact);
        max_err = std::max(max_err, err);
        std::vector<double> row = {x, t, grid.at(j, i), exact, err};
        csv.row(row);
      }
    }
    std::cout << "max |u_fd - u_exact| = " << max_err << "\n";
  } else if (p.id == "fhn") {
    gf::reference::FhnParams params;
    auto traj = gf::reference::rk4_fhn(params, 30.0, steps);
    gf::io::CsvWriter csv((dir / "oracle_fhn.csv").string());
    csv.header({"t", "y", "w"});
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      std::vector<double> row = {traj.t[i], traj.y[i], traj.w[i]};
      csv.row(row);
    }
  } else {
    auto grid = p.eval_grid();
    auto y = p.oracle(grid);
    gf::io::CsvWriter csv((dir / ("oracle_" + p.id + ".csv")).string());
    csv.header({p.id == "fredholm2" ? "x" : "t", "y"});
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      std::vector<double> row = {grid(r, 0), y(r, 0)};
      csv.row(row);
    }
  }
  return kExitOk;
}

// Section 3.8-style sanity demo: tiny 1-3-1 tanh net fit to sin(3x) on
// [-1,1] by full-batch Adam on 50 fixed samples.
int cmd_uat_demo(const Overrides& ov, const std::string& out) {
  auto dir = ensure_out_dir(out);
  long iterations = ov.iterations.value_or(20000);
  double lrate = ov.lrate.value_or(0.01);
  std::uint64_t seed = ov.seed.value_or(0);
  if (iterations < 1) throw UsageError("iterations must be >= 1");

  gf::Rng rng(seed);
  const std::size_t n = 50;
  gf::Tensor x(n, 1), y(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    double xi = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
    x(i, 0) = xi;
    y(i, 0) = std::sin(3.0 * xi);
  }

  gf::nn::NetworkSpec spec;
  spec.architecture = gf::nn::Arch::Mlp;
  spec.input_dim = 1;
  spec.output_dim = 1;
  spec.hidden_size = 3;
  spec.num_layers = 0;  // one hidden layer
  spec.activation = gf::nn::Activation::Tanh;
  auto net = gf::nn::make_network(spec, rng);

  gf::optim::Adam adam(lrate);
  double last_loss = 0.0;
  for (long it = 0; it < iterations; ++it) {
    gf::ad::Graph g;
    gf::nn::BoundNetwork bound(*net, g, gf::nn::Mode::Train);
    auto xin = g.constant(x);
    auto target = g.constant(y);
    auto pred = bound(xin);
    auto loss = gf::ad::mean(gf::ad::square(gf::ad::sub(pred, target)));
    last_loss = loss.value()(0, 0);
    if (!std::isfinite(last_loss)) {
      std::cerr << "error: non-finite loss at iteration " << it << "\n";
      return kExitNumerical;
    }
    auto grads = bound.grad_values(loss);
    auto params = net->parameters();
    adam.step(params, grads);
  }

  auto y_hat = gf::training::net_eval(*net, x);
  double fit_mae = gf::training::mae(y, y_hat);

  gf::io::CsvWriter csv((dir / "uat_demo.csv").string());
  csv.header({"x", "y_true", "y_hat"});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row = {x(i, 0), y(i, 0), y_hat(i, 0)};
    csv.row(row);
  }
  std::cout << "final loss " << last_loss << ", MAE " << fit_mae << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deep Galerkin training and analysis CLI"};
  app.require_subcommand(1);

  std::string problem, config_file, out = default_out_dir();
  std::string save_params_path;
  Overrides ov;

  auto add_common = [&](CLI::App* sub, bool with_problem = true) {
    if (with_problem)
      sub->add_option("--problem", problem, "problem id")->required();
    sub->add_option("--iterations", [&ov](const std::vector<std::string>& v) {
      ov.iterations = std::stol(v[0]); return true; }, "training iterations");
    sub->add_option("--batch-size", [&ov](const std::vector<std::string>& v) {
      ov.batch_size = std::stol(v[0]); return true; }, "minibatch size");
    sub->add_option("--lrate", [&ov](const std::vector<std::string>& v) {
      ov.lrate = std::stod(v[0]); return true; }, "learning rate");
    sub->add_option("--seed", [&ov](const std::vector<std::string>& v) {
      ov.seed = std::stoull(v[0]); return true; }, "rng seed");
    sub->add_option("--hidden-size", [&ov](const std::vector<std::string>& v) {
      ov.hidden_size = std::stol(v[0]); return true; }, "hidden width override");
    sub->add_option("--num-layers", [&ov](const std::vector<std::string>& v) {
      ov.num_layers = std::stol(v[0]); return true; }, "depth override");
    sub->add_option("--out", out, "output directory (default $GF_OUT_DIR or .)");
    sub->add_option("--config", config_file, "key=value config file");
  };

  auto* train = app.add_subcommand("train", "train one problem");
  add_common(train);
  train->add_option("--activation", [&ov](const std::vector<std::string>& v) {
    ov.activation = v[0]; return true; }, "tanh|relu|sigmoid");
  train->add_option("--batch-norm", [&ov](const std::vector<std::string>& v) {
    ov.batch_norm = v[0]; return true; }, "off|before|after");
  train->add_option("--clip-norm", [&ov](const std::vector<std::string>& v) {
    ov.clip_norm = std::stod(v[0]); return true; }, "global grad-norm cap");
  train->add_option("--save-params", save_params_path,
                    "write trained parameters as a JSON manifest");

  auto* ab = app.add_subcommand("ablate-batch",
                                "loss curves for batch sizes 1..1024");
  add_common(ab);

  auto* abn = app.add_subcommand("ablate-bn",
                                 "loss curves for batch-norm placements");
  add_common(abn);

  int trials = 10, concurrency = 5;
  std::string objective = "loss";
  gf::tuner::SearchSpace space;
  auto* tune = app.add_subcommand("tune", "random hyperparameter search");
  add_common(tune);
  tune->add_option("--trials", trials, "number of trials");
  tune->add_option("--concurrency", concurrency, "max trials in flight");
  tune->add_option("--objective", objective, "loss|mae");
  tune->add_option("--batch-lo", space.batch_lo, "smallest batch size");
  tune->add_option("--batch-hi", space.batch_hi, "largest batch size");
  tune->add_option("--iters-lo", space.iters_lo, "fewest iterations");
  tune->add_option("--iters-hi", space.iters_hi, "most iterations");
  tune->add_option("--lrate-lo", space.lrate_lo, "lowest learning rate");
  tune->add_option("--lrate-hi", space.lrate_hi, "highest learning rate");

  std::size_t fd_n = 64, steps = 3000;
  double fd_alpha = 0.4;
  auto* oracle = app.add_subcommand("oracle", "dump reference solutions");
  add_common(oracle);
  oracle->add_option("--fd-n", fd_n, "heat FD spatial intervals");
  oracle->add_option("--fd-alpha", fd_alpha, "heat FD stability number");
  oracle->add_option("--steps", steps, "fhn RK4 steps");

  auto* uat = app.add_subcommand("uat-demo", "fit sin(3x) with a 1-3-1 net");
  add_common(uat, /*with_problem=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (train->parsed())
      return cmd_train(problem, config_file, ov, out, save_params_path);
    if (ab->parsed()) return cmd_ablate_batch(problem, ov, out);
    if (abn->parsed()) return cmd_ablate_bn(problem, ov, out);
    if (tune->parsed())
      return cmd_tune(problem, ov, out, space, trials, concurrency, objective);
    if (oracle->parsed())
      return cmd_oracle(problem, out, fd_n, fd_alpha, steps);
    if (uat->parsed()) return cmd_uat_demo(ov, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gf::training::TrainingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
