#include "gf/autodiff.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace gf::ad {

namespace {

void check_same_graph(const Var& a, const Var& b) {
  if (a.graph != b.graph) {
    throw std::invalid_argument(
        "autodiff: operands belong to different graphs");
  }
}

// Adjoint of a broadcast operand: collapse back to (1,d) when needed.
Var unbroadcast(const Var& g, std::size_t rows, std::size_t cols) {
  if (g.rows() == rows && g.cols() == cols) return g;
  if (rows == 1 && g.cols() == cols) return col_sum(g);
  throw ShapeError("autodiff: cannot reduce adjoint " +
                   g.value().shape_str() + " to (" + std::to_string(rows) +
                   "," + std::to_string(cols) + ")");
}

}  // namespace

const Tensor& Var::value() const {
  return graph->nodes_[static_cast<std::size_t>(id)].value;
}

bool Var::requires_grad() const {
  return graph->nodes_[static_cast<std::size_t>(id)].requires_grad;
}

Var Graph::leaf(Tensor value, bool requires_grad) {
  nodes_.push_back(Node{std::move(value), requires_grad && !no_grad_, {}, {}});
  return Var{this, size() - 1};
}

Var Graph::constant(Tensor value) { return leaf(std::move(value), false); }

void Graph::clear() { nodes_.clear(); }

Var Recorder::record(Graph& g, Tensor value, std::vector<Var> parents,
                     std::function<std::vector<Var>(const Var&)> backward) {
  bool rg = false;
  std::vector<int> pids;
  pids.reserve(parents.size());
  for (const auto& p : parents) {
    if (p.graph != &g) {
      throw std::invalid_argument(
          "autodiff: operands belong to different graphs");
    }
    pids.push_back(p.id);
    rg = rg || p.requires_grad();
  }
  rg = rg && !g.no_grad_;
  g.nodes_.push_back(Graph::Node{std::move(value), rg, std::move(pids),
                                 rg ? std::move(backward) : nullptr});
  return Var{&g, g.size() - 1};
}

// ---- binary elementwise --------------------------------------------------

Var add(const Var& a, const Var& b) {
  check_same_graph(a, b);
  Tensor v = a.value().add(b.value());
  auto [ar, ac, br, bc] = std::tuple{a.rows(), a.cols(), b.rows(), b.cols()};
  return Recorder::record(*a.graph, std::move(v), {a, b},
                          [=](const Var& g) -> std::vector<Var> {
                            return {unbroadcast(g, ar, ac),
                                    unbroadcast(g, br, bc)};
                          });
}

Var sub(const Var& a, const Var& b) {
  check_same_graph(a, b);
  Tensor v = a.value().sub(b.value());
  auto [ar, ac, br, bc] = std::tuple{a.rows(), a.cols(), b.rows(), b.cols()};
  return Recorder::record(*a.graph, std::move(v), {a, b},
                          [=](const Var& g) -> std::vector<Var> {
                            return {unbroadcast(g, ar, ac),
                                    unbroadcast(neg(g), br, bc)};
                          });
}

Var mul(const Var& a, const Var& b) {
  check_same_graph(a, b);
  Tensor v = a.value().mul(b.value());
  auto [ar, ac, br, bc] = std::tuple{a.rows(), a.cols(), b.rows(), b.cols()};
  return Recorder::record(*a.graph, std::move(v), {a, b},
                          [=](const Var& g) -> std::vector<Var> {
                            return {unbroadcast(mul(g, b), ar, ac),
                                    unbroadcast(mul(g, a), br, bc)};
                          });
}

Var div(const Var& a, const Var& b) {
  check_same_graph(a, b);
  Tensor v = a.value().div(b.value());
  auto [ar, ac, br, bc] = std::tuple{a.rows(), a.cols(), b.rows(), b.cols()};
  return Recorder::record(
      *a.graph, std::move(v), {a, b}, [=](const Var& g) -> std::vector<Var> {
        Var da = unbroadcast(div(g, b), ar, ac);
        Var db = unbroadcast(neg(div(mul(g, div(a, b)), b)), br, bc);
        return {da, db};
      });
}

Var add_scalar(const Var& a, double c) {
  return Recorder::record(*a.graph, a.value().add_scalar(c), {a},
                          [](const Var& g) -> std::vector<Var> { return {g}; });
}

Var mul_scalar(const Var& a, double c) {
  return Recorder::record(*a.graph, a.value().mul_scalar(c), {a},
                          [c](const Var& g) -> std::vector<Var> {
                            return {mul_scalar(g, c)};
                          });
}

Var rsub_scalar(double c, const Var& a) {
  return Recorder::record(*a.graph, a.value().neg().add_scalar(c), {a},
                          [](const Var& g) -> std::vector<Var> {
                            return {neg(g)};
                          });
}

Var neg(const Var& a) { return mul_scalar(a, -1.0); }

// ---- linear algebra ------------------------------------------------------

Var matmul(const Var& a, const Var& b) {
  check_same_graph(a, b);
  Tensor v = a.value().matmul(b.value());
  return Recorder::record(*a.graph, std::move(v), {a, b},
                          [=](const Var& g) -> std::vector<Var> {
                            return {matmul(g, transpose(b)),
                                    matmul(transpose(a), g)};
                          });
}

Var transpose(const Var& a) {
  return Recorder::record(*a.graph, a.value().transpose(), {a},
                          [](const Var& g) -> std::vector<Var> {
                            return {transpose(g)};
                          });
}

// ---- reductions and shape ------------------------------------------------

Var sum(const Var& a) {
  auto [r, c] = std::pair{a.rows(), a.cols()};
  return Recorder::record(*a.graph, Tensor(1, 1, a.value().sum()), {a},
                          [r, c](const Var& g) -> std::vector<Var> {
                            return {expand(g, r, c)};
                          });
}

Var mean(const Var& a) {
  auto [r, c] = std::pair{a.rows(), a.cols()};
  const double inv = 1.0 / static_cast<double>(r * c);
  return Recorder::record(*a.graph, Tensor(1, 1, a.value().mean()), {a},
                          [r, c, inv](const Var& g) -> std::vector<Var> {
                            return {mul_scalar(expand(g, r, c), inv)};
                          });
}

Var col_sum(const Var& a) {
  const std::size_t n = a.rows();
  return Recorder::record(*a.graph, a.value().col_sum(), {a},
                          [n](const Var& g) -> std::vector<Var> {
                            return {tile_rows(g, n)};
                          });
}

Var col_mean(const Var& a) {
  return mul_scalar(col_sum(a), 1.0 / static_cast<double>(a.rows()));
}

Var expand(const Var& a, std::size_t rows, std::size_t cols) {
  if (a.rows() != 1 || a.cols() != 1) {
    throw ShapeError("expand: expects (1,1), got " + a.value().shape_str());
  }
  return Recorder::record(*a.graph, Tensor(rows, cols, a.value()(0, 0)), {a},
                          [](const Var& g) -> std::vector<Var> {
                            return {sum(g)};
                          });
}

Var tile_rows(const Var& a, std::size_t n) {
  return Recorder::record(*a.graph, a.value().tile_rows(n), {a},
                          [](const Var& g) -> std::vector<Var> {
                            return {col_sum(g)};
                          });
}

// ---- elementwise functions -----------------------------------------------

Var square(const Var& a) {
  return Recorder::record(*a.graph,
                          a.value().map([](double x) { return x * x; }), {a},
                          [a](const Var& g) -> std::vector<Var> {
                            return {mul_scalar(mul(g, a), 2.0)};
                          });
}

Var sqrt(const Var& a) {
  Tensor v = a.value().map([](double x) { return std::sqrt(x); });
  return Recorder::record(*a.graph, std::move(v), {a},
                          [a](const Var& g) -> std::vector<Var> {
                            return {div(mul_scalar(g, 0.5), sqrt(a))};
                          });
}

Var sin(const Var& a) {
  return Recorder::record(*a.graph,
                          a.value().map([](double x) { return std::sin(x); }),
                          {a}, [a](const Var& g) -> std::vector<Var> {
                            return {mul(g, cos(a))};
                          });
}

Var cos(const Var& a) {
  return Recorder::record(*a.graph,
                          a.value().map([](double x) { return std::cos(x); }),
                          {a}, [a](const Var& g) -> std::vector<Var> {
                            return {neg(mul(g, sin(a)))};
                          });
}

Var exp(const Var& a) {
  Tensor v = a.value().map([](double x) { return std::exp(x); });
  return Recorder::record(*a.graph, std::move(v), {a},
                          [a](const Var& g) -> std::vector<Var> {
                            return {mul(g, exp(a))};
                          });
}

Var tanh(const Var& a) {
  Tensor v = a.value().map([](double x) { return std::tanh(x); });
  return Recorder::record(*a.graph, std::move(v), {a},
                          [a](const Var& g) -> std::vector<Var> {
                            return {mul(g, rsub_scalar(1.0, square(tanh(a))))};
                          });
}

Var sigmoid(const Var& a) {
  Tensor v = a.value().map([](double x) { return 1.0 / (1.0 + std::exp(-x)); });
  return Recorder::record(*a.graph, std::move(v), {a},
                          [a](const Var& g) -> std::vector<Var> {
                            Var s = sigmoid(a);
                            return {mul(g, mul(s, rsub_scalar(1.0, s)))};
                          });
}

Var relu(const Var& a) {
  Tensor v = a.value().map([](double x) { return x > 0.0 ? x : 0.0; });
  Tensor mask = a.value().map([](double x) { return x > 0.0 ? 1.0 : 0.0; });
  return Recorder::record(*a.graph, std::move(v), {a},
                          [a, mask](const Var& g) -> std::vector<Var> {
                            return {mul(g, a.graph->constant(mask))};
                          });
}

// ---- column ops ----------------------------------------------------------

namespace {

// Scatter a (n, c1-c0) adjoint back into zero-padded full width.
Var pad_cols(const Var& a, std::size_t c0, std::size_t total) {
  const std::size_t n = a.rows();
  const std::size_t w = a.cols();
  Tensor v(n, total, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < w; ++j) v(i, c0 + j) = a.value()(i, j);
  return Recorder::record(*a.graph, std::move(v), {a},
                          [c0, w](const Var& g) -> std::vector<Var> {
                            return {slice_cols(g, c0, c0 + w)};
                          });
}

}  // namespace

Var slice_cols(const Var& a, std::size_t c0, std::size_t c1) {
  const std::size_t total = a.cols();
  return Recorder::record(*a.graph, a.value().slice_cols(c0, c1), {a},
                          [c0, total](const Var& g) -> std::vector<Var> {
                            return {pad_cols(g, c0, total)};
                          });
}

Var col(const Var& a, std::size_t j) { return slice_cols(a, j, j + 1); }

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no parts");
  std::vector<Tensor> vals;
  std::vector<std::size_t> widths;
  vals.reserve(parts.size());
  for (const auto& p : parts) {
    check_same_graph(parts[0], p);
    vals.push_back(p.value());
    widths.push_back(p.cols());
  }
  return Recorder::record(*parts[0].graph, Tensor::concat_cols(vals), parts,
                          [widths](const Var& g) -> std::vector<Var> {
                            std::vector<Var> out;
                            std::size_t off = 0;
                            for (std::size_t w : widths) {
                              out.push_back(slice_cols(g, off, off + w));
                              off += w;
                            }
                            return out;
                          });
}

// ---- reverse pass --------------------------------------------------------

std::vector<Var> grad(const Var& output, std::span<const Var> wrts,
                      const Tensor& seed, bool create_graph) {
  Graph& g = *output.graph;
  if (!seed.same_shape(output.value())) {
    throw ShapeError("grad: seed shape " + seed.shape_str() +
                     " != output shape " + output.value().shape_str());
  }
  for (const auto& w : wrts) check_same_graph(output, w);

  const int n0 = output.id + 1;  // nodes past the output are irrelevant
  std::vector<std::optional<Var>> adj(static_cast<std::size_t>(n0));

  std::optional<Graph::NoGradGuard> guard;
  if (!create_graph) guard.emplace(g);

  adj[static_cast<std::size_t>(output.id)] = g.constant(seed);

  for (int i = output.id; i >= 0; --i) {
    auto& slot = adj[static_cast<std::size_t>(i)];
    if (!slot) continue;
    // copy before invoking: backward may append nodes and reallocate nodes_
    auto backward = g.nodes_[static_cast<std::size_t>(i)].backward;
    auto parents = g.nodes_[static_cast<std::size_t>(i)].parents;
    if (!backward) continue;
    std::vector<Var> pgrads = backward(*slot);
    for (std::size_t k = 0; k < parents.size(); ++k) {
      const int pid = parents[k];
      if (!g.nodes_[static_cast<std::size_t>(pid)].requires_grad) continue;
      auto& pslot = adj[static_cast<std::size_t>(pid)];
      pslot = pslot ? add(*pslot, pgrads[k]) : pgrads[k];
    }
  }

  std::vector<Var> out;
  out.reserve(wrts.size());
  for (const auto& w : wrts) {
    if (w.id >= n0) {
      out.push_back(g.constant(Tensor::zeros(w.rows(), w.cols())));
      continue;
    }
    auto& slot = adj[static_cast<std::size_t>(w.id)];
    if (slot) {
      out.push_back(*slot);
    } else {
      out.push_back(g.constant(Tensor::zeros(w.rows(), w.cols())));
    }
  }
  return out;
}

Var grad(const Var& output, const Var& wrt, const Tensor& seed,
         bool create_graph) {
  return grad(output, std::span<const Var>(&wrt, 1), seed, create_graph)[0];
}

Var grad_ones(const Var& output, const Var& wrt, bool create_graph) {
  return grad(output, wrt, Tensor::ones(output.rows(), output.cols()),
              create_graph);
}

}  // namespace gf::ad
