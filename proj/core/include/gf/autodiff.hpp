#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gf/tensor.hpp"

namespace gf::ad {

class Graph;

// Lightweight handle into one Graph's tape. Valid for exactly one Graph.
struct Var {
  Graph* graph = nullptr;
  int id = -1;

  const Tensor& value() const;
  bool requires_grad() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
};

// Dynamically recorded computation graph. Nodes are append-only, parents
// always precede children, and the backward pass walks strict reverse
// insertion order. Confined to one thread for its lifetime.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var leaf(Tensor value, bool requires_grad = true);
  Var constant(Tensor value);

  int size() const { return static_cast<int>(nodes_.size()); }
  void clear();

  // While a NoGradGuard is alive, recorded nodes carry no backward
  // functions, so gradients cannot flow through them.
  struct NoGradGuard {
    explicit NoGradGuard(Graph& g) : g_(g), prev_(g.no_grad_) {
      g.no_grad_ = true;
    }
    ~NoGradGuard() { g_.no_grad_ = prev_; }

   private:
    Graph& g_;
    bool prev_;
  };

 private:
  friend struct Var;
  friend class Recorder;
  friend std::vector<Var> grad(const Var&, std::span<const Var>,
                               const Tensor&, bool);

  struct Node {
    Tensor value;
    bool requires_grad = false;
    std::vector<int> parents;
    // Given the adjoint of this node, emits the adjoints of its parents
    // (built through the same op layer, so grad-of-grad just works).
    std::function<std::vector<Var>(const Var&)> backward;
  };

  std::vector<Node> nodes_;
  bool no_grad_ = false;
};

// Appends a node; used by every primitive op below.
class Recorder {
 public:
  static Var record(Graph& g, Tensor value, std::vector<Var> parents,
                    std::function<std::vector<Var>(const Var&)> backward);
};

// ---- Primitive ops -------------------------------------------------------
// Binary elementwise ops broadcast a (1,d) operand over the batch rows.
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var div(const Var& a, const Var& b);
Var add_scalar(const Var& a, double c);
Var mul_scalar(const Var& a, double c);
Var rsub_scalar(double c, const Var& a);  // c - a
Var neg(const Var& a);

Var matmul(const Var& a, const Var& b);
Var transpose(const Var& a);

Var sum(const Var& a);        // -> (1,1)
Var mean(const Var& a);       // -> (1,1)
Var col_sum(const Var& a);    // (n,d) -> (1,d)
Var col_mean(const Var& a);   // (n,d) -> (1,d)
Var expand(const Var& a, std::size_t rows, std::size_t cols);  // (1,1) -> (n,d)
Var tile_rows(const Var& a, std::size_t n);                    // (1,d) -> (n,d)

Var square(const Var& a);
Var sqrt(const Var& a);
Var sin(const Var& a);
Var cos(const Var& a);
Var exp(const Var& a);
Var tanh(const Var& a);
Var sigmoid(const Var& a);
Var relu(const Var& a);  // subgradient 0 at exactly 0

Var slice_cols(const Var& a, std::size_t c0, std::size_t c1);
Var col(const Var& a, std::size_t j);  // single column -> (n,1)
Var concat_cols(const std::vector<Var>& parts);

// ---- Reverse-mode gradient ----------------------------------------------
// Returns d(sum(seed .* output))/d(wrt) for each wrt. A wrt that is not an
// ancestor of output yields an exact zero tensor of its shape. When
// create_graph is set the gradient computation itself is recorded, so the
// result supports further grad calls (double backward).
std::vector<Var> grad(const Var& output, std::span<const Var> wrts,
                      const Tensor& seed, bool create_graph);

Var grad(const Var& output, const Var& wrt, const Tensor& seed,
         bool create_graph);

// Convenience: seed of ones shaped like output.
Var grad_ones(const Var& output, const Var& wrt, bool create_graph);

}  // namespace gf::ad
