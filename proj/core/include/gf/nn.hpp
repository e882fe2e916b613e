#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf/autodiff.hpp"
#include "gf/rng.hpp"
#include "gf/tensor.hpp"

namespace gf::nn {

enum class Activation { Tanh, Relu, Sigmoid };
enum class BatchNormMode { Off, BeforeActivation, AfterActivation };
enum class Init { XavierNormal, XavierUniform, He };
enum class Arch { Mlp, Dgm, ResNet };
enum class Mode { Train, Eval };

struct NetworkSpec {
  Arch architecture = Arch::Mlp;
  std::size_t input_dim = 2;
  std::size_t output_dim = 1;
  std::size_t hidden_size = 50;
  // MLP: count of extra hidden layers beyond the first (0 means one hidden
  // layer, 1 means two, ...). DGM / ResNet: number of gated layers / blocks.
  std::size_t num_layers = 1;
  Activation activation = Activation::Tanh;
  BatchNormMode batch_norm = BatchNormMode::Off;
  Init init = Init::XavierNormal;
  double init_gain = 1.0;
};

// y = x . W^T + b, with W stored (out, in) and b (1, out).
struct LinearLayer {
  Tensor W;
  std::optional<Tensor> b;
};

// Gates Z, G, R, H. Each gate has a hidden->hidden map W with bias and a
// bias-free input projection U; the raw network input enters every layer
// through U.
struct DgmGate {
  Tensor W;  // (hidden, hidden)
  Tensor b;  // (1, hidden)
  Tensor U;  // (hidden, input)
};

struct DgmLayerParams {
  DgmGate z, g, r, h;
};

struct BatchNormState {
  Tensor alpha;         // (1,d) learnable scale
  Tensor beta;          // (1,d) learnable shift
  Tensor running_mean;  // (1,d)
  Tensor running_var;   // (1,d)
  double eps = 1e-5;
  double momentum = 0.1;

  explicit BatchNormState(std::size_t d);
};

using Var = ad::Var;

Var apply_activation(Activation act, const Var& x);

// Initializes a (out, in) weight per the chosen scheme; fan-in = in.
Tensor init_weight(const NetworkSpec& spec, Rng& rng, std::size_t out,
                   std::size_t in);

// Cursor over the parameter Vars lifted for one graph, consumed by
// forward() in registration order.
struct ParamCursor {
  std::span<const Var> vars;
  std::size_t i = 0;
  Var next();
};

// Differentiable batch norm. Train mode (n >= 2) normalizes by biased
// batch statistics and updates running stats by EMA (unbiased variance);
// eval mode uses the running stats only.
Var batchnorm_forward(BatchNormState& state, const Var& x, const Var& alpha,
                      const Var& beta, Mode mode);

Var linear_forward(const Var& x, const Var& W, const std::optional<Var>& b);

// Gate activations are fixed to tanh; the spec's activation applies to the
// input FC stage of the DGM network, not the gates.
Var dgm_layer_forward(ParamCursor& p, const Var& x, const Var& s);

class Network {
 public:
  virtual ~Network() = default;

  struct ParamRef {
    std::string name;
    Tensor* tensor;
  };

  const NetworkSpec& spec() const { return spec_; }
  virtual std::vector<ParamRef> parameters() = 0;
  virtual std::vector<ParamRef> buffers() { return {}; }
  virtual Var forward(ad::Graph& g, const Var& x, ParamCursor p,
                      Mode mode) = 0;

 protected:
  explicit Network(NetworkSpec spec) : spec_(std::move(spec)) {}
  NetworkSpec spec_;
};

std::unique_ptr<Network> make_network(const NetworkSpec& spec, Rng& rng);

// Lifts a network's parameters into one graph so multiple forward calls in
// the same iteration share the same leaves.
class BoundNetwork {
 public:
  BoundNetwork(Network& net, ad::Graph& g, Mode mode = Mode::Eval);

  Var operator()(const Var& x);
  std::span<const Var> param_vars() const { return params_; }
  std::vector<Tensor> grad_values(const Var& loss, bool create_graph = false);
  Network& net() { return net_; }
  void set_mode(Mode m) { mode_ = m; }

 private:
  Network& net_;
  ad::Graph& g_;
  Mode mode_;
  std::vector<Var> params_;
};

// Flat JSON manifest (name -> shape -> row-major values) for checkpoints
// and test fixtures.
void save_params(Network& net, const std::string& path);
void load_params(Network& net, const std::string& path);

std::string to_string(Arch a);
std::string to_string(Activation a);
std::string to_string(BatchNormMode m);
std::string to_string(Init i);

}  // namespace gf::nn
