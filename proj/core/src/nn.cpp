#include "gf/nn.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace gf::nn {

namespace ad = gf::ad;

BatchNormState::BatchNormState(std::size_t d)
    : alpha(Tensor::ones(1, d)),
      beta(Tensor::zeros(1, d)),
      running_mean(Tensor::zeros(1, d)),
      running_var(Tensor::ones(1, d)) {}

Var apply_activation(Activation act, const Var& x) {
  switch (act) {
    case Activation::Tanh: return ad::tanh(x);
    case Activation::Relu: return ad::relu(x);
    case Activation::Sigmoid: return ad::sigmoid(x);
  }
  throw std::logic_error("unknown activation");
}

Tensor init_weight(const NetworkSpec& spec, Rng& rng, std::size_t out,
                   std::size_t in) {
  const double fan_in = static_cast<double>(in);
  const double gain = spec.init_gain;
  switch (spec.init) {
    case Init::XavierNormal:
      return Tensor::normal(rng, out, in, 0.0, gain * gain / fan_in);
    case Init::XavierUniform: {
      // variance-matched uniform: U(-a, a) with a = gain * sqrt(3 / fan_in)
      const double a = gain * std::sqrt(3.0 / fan_in);
      return Tensor::uniform(rng, out, in, -a, a);
    }
    case Init::He:
      return Tensor::normal(rng, out, in, 0.0, 2.0 * gain * gain / fan_in);
  }
  throw std::logic_error("unknown init");
}

Var ParamCursor::next() {
  if (i >= vars.size()) {
    throw std::logic_error("ParamCursor: parameter order mismatch");
  }
  return vars[i++];
}

Var linear_forward(const Var& x, const Var& W, const std::optional<Var>& b) {
  Var out = ad::matmul(x, ad::transpose(W));
  if (b) out = ad::add(out, *b);
  return out;
}

Var batchnorm_forward(BatchNormState& state, const Var& x, const Var& alpha,
                      const Var& beta, Mode mode) {
  if (mode == Mode::Train) {
    const std::size_t n = x.rows();
    if (n < 2) {
      throw std::invalid_argument(
          "batchnorm: train mode requires batch size >= 2");
    }
    Var mu = ad::col_mean(x);
    Var xc = ad::sub(x, mu);
    Var var_b = ad::col_mean(ad::square(xc));  // biased (1/n)
    Var xhat = ad::div(xc, ad::sqrt(ad::add_scalar(var_b, state.eps)));

    const double m = state.momentum;
    const double bessel = static_cast<double>(n) / static_cast<double>(n - 1);
    state.running_mean = state.running_mean.mul_scalar(1.0 - m).add(
        mu.value().mul_scalar(m));
    state.running_var = state.running_var.mul_scalar(1.0 - m).add(
        var_b.value().mul_scalar(m * bessel));

    return ad::add(ad::mul(xhat, alpha), beta);
  }
  ad::Graph& g = *x.graph;
  Var rm = g.constant(state.running_mean);
  Var denom = g.constant(state.running_var.add_scalar(state.eps).map(
      [](double v) { return std::sqrt(v); }));
  Var xhat = ad::div(ad::sub(x, rm), denom);
  return ad::add(ad::mul(xhat, alpha), beta);
}

Var dgm_layer_forward(ParamCursor& p, const Var& x, const Var& s) {
  // gates are tanh regardless of the network activation (the bounded gates
  // keep the state from blowing up across layers); the configured
  // activation applies to the input FC stage only
  auto gate = [&](const Var& state_in) {
    Var W = p.next();
    Var b = p.next();
    Var U = p.next();
    return ad::tanh(ad::add(linear_forward(state_in, W, b),
                            linear_forward(x, U, std::nullopt)));
  };
  Var Z = gate(s);
  Var G = gate(s);
  Var R = gate(s);
  Var H = gate(ad::mul(s, R));
  return ad::add(ad::mul(ad::rsub_scalar(1.0, G), H), ad::mul(Z, s));
}

namespace {

LinearLayer make_linear(const NetworkSpec& spec, Rng& rng, std::size_t out,
                        std::size_t in, bool bias) {
  LinearLayer l{init_weight(spec, rng, out, in), std::nullopt};
  if (bias) l.b = Tensor::zeros(1, out);
  return l;
}

void push_linear(std::vector<Network::ParamRef>& refs, const std::string& name,
                 LinearLayer& l) {
  refs.push_back({name + ".W", &l.W});
  if (l.b) refs.push_back({name + ".b", &*l.b});
}

Var bound_linear(ParamCursor& p, const LinearLayer& l, const Var& x) {
  Var W = p.next();
  std::optional<Var> b;
  if (l.b) b = p.next();
  return linear_forward(x, W, b);
}

// ---- MLP (Listing-1 wiring: one BN state shared across hidden layers) ----

class MlpNet final : public Network {
 public:
  MlpNet(NetworkSpec spec, Rng& rng) : Network(std::move(spec)) {
    const auto& s = spec_;
    const bool bn_before = s.batch_norm == BatchNormMode::BeforeActivation;
    // a linear layer feeding BN directly drops its bias
    fc_in_ = make_linear(s, rng, s.hidden_size, s.input_dim, !bn_before);
    for (std::size_t i = 0; i < s.num_layers; ++i) {
      hidden_.push_back(
          make_linear(s, rng, s.hidden_size, s.hidden_size, !bn_before));
    }
    fc_out_ = make_linear(s, rng, s.output_dim, s.hidden_size, true);
    if (s.batch_norm != BatchNormMode::Off) bn_.emplace(s.hidden_size);
  }

  std::vector<ParamRef> parameters() override {
    std::vector<ParamRef> refs;
    push_linear(refs, "fc_in", fc_in_);
    for (std::size_t i = 0; i < hidden_.size(); ++i) {
      push_linear(refs, "layers." + std::to_string(i), hidden_[i]);
    }
    push_linear(refs, "fc_out", fc_out_);
    if (bn_) {
      refs.push_back({"bn.alpha", &bn_->alpha});
      refs.push_back({"bn.beta", &bn_->beta});
    }
    return refs;
  }

  std::vector<ParamRef> buffers() override {
    std::vector<ParamRef> refs;
    if (bn_) {
      refs.push_back({"bn.running_mean", &bn_->running_mean});
      refs.push_back({"bn.running_var", &bn_->running_var});
    }
    return refs;
  }

  Var forward(ad::Graph&, const Var& x, ParamCursor p, Mode mode) override {
    // consume in parameters() order; BN alpha/beta come after the linears
    std::vector<std::pair<Var, std::optional<Var>>> lin;
    auto take = [&](const LinearLayer& l) {
      Var W = p.next();
      std::optional<Var> b;
      if (l.b) b = p.next();
      lin.emplace_back(W, b);
    };
    take(fc_in_);
    for (const auto& h : hidden_) take(h);
    take(fc_out_);
    std::optional<Var> alpha, beta;
    if (bn_) {
      alpha = p.next();
      beta = p.next();
    }

    auto stage = [&](const Var& in, std::size_t li) {
      Var out = linear_forward(in, lin[li].first, lin[li].second);
      if (bn_ && spec_.batch_norm == BatchNormMode::BeforeActivation) {
        out = batchnorm_forward(*bn_, out, *alpha, *beta, mode);
      }
      out = apply_activation(spec_.activation, out);
      if (bn_ && spec_.batch_norm == BatchNormMode::AfterActivation) {
        out = batchnorm_forward(*bn_, out, *alpha, *beta, mode);
      }
      return out;
    };

    Var out = stage(x, 0);
    for (std::size_t i = 0; i < hidden_.size(); ++i) out = stage(out, i + 1);
    // output head stays affine
    return linear_forward(out, lin.back().first, lin.back().second);
  }

 private:
  LinearLayer fc_in_, fc_out_;
  std::vector<LinearLayer> hidden_;
  std::optional<BatchNormState> bn_;
};

// ---- DGM network ---------------------------------------------------------

class DgmNet final : public Network {
 public:
  DgmNet(NetworkSpec spec, Rng& rng) : Network(std::move(spec)) {
    const auto& s = spec_;
    fc_in_ = make_linear(s, rng, s.hidden_size, s.input_dim, true);
    for (std::size_t i = 0; i < s.num_layers; ++i) {
      DgmLayerParams l{make_gate(rng), make_gate(rng), make_gate(rng),
                       make_gate(rng)};
      layers_.push_back(std::move(l));
    }
    fc_out_ = make_linear(s, rng, s.output_dim, s.hidden_size, true);
  }

  std::vector<ParamRef> parameters() override {
    std::vector<ParamRef> refs;
    push_linear(refs, "fc_in", fc_in_);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const std::string base = "dgm." + std::to_string(i);
      auto push_gate = [&](const char* gn, DgmGate& gate) {
        refs.push_back({base + "." + gn + ".W", &gate.W});
        refs.push_back({base + "." + gn + ".b", &gate.b});
        refs.push_back({base + "." + gn + ".U", &gate.U});
      };
      push_gate("z", layers_[i].z);
      push_gate("g", layers_[i].g);
      push_gate("r", layers_[i].r);
      push_gate("h", layers_[i].h);
    }
    push_linear(refs, "fc_out", fc_out_);
    return refs;
  }

  Var forward(ad::Graph&, const Var& x, ParamCursor p, Mode) override {
    Var s = apply_activation(spec_.activation, bound_linear(p, fc_in_, x));
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      s = dgm_layer_forward(p, x, s);
    }
    return bound_linear(p, fc_out_, s);
  }

 private:
  DgmGate make_gate(Rng& rng) {
    return DgmGate{
        init_weight(spec_, rng, spec_.hidden_size, spec_.hidden_size),
        Tensor::zeros(1, spec_.hidden_size),
        init_weight(spec_, rng, spec_.hidden_size, spec_.input_dim)};
  }

  LinearLayer fc_in_, fc_out_;
  std::vector<DgmLayerParams> layers_;
};

// ---- linear ResNet -------------------------------------------------------

struct ResBlock {
  LinearLayer fc1, fc2;
  std::optional<LinearLayer> downsample;
};

class ResNetNet final : public Network {
 public:
  ResNetNet(NetworkSpec spec, Rng& rng) : Network(std::move(spec)) {
    const auto& s = spec_;
    if (s.num_layers < 1) {
      throw std::invalid_argument("resnet: needs at least one block");
    }
    for (std::size_t i = 0; i < s.num_layers; ++i) {
      const std::size_t in = i == 0 ? s.input_dim : s.hidden_size;
      ResBlock b{make_linear(s, rng, s.hidden_size, in, true),
                 make_linear(s, rng, s.hidden_size, s.hidden_size, true),
                 std::nullopt};
      if (in != s.hidden_size) {
        b.downsample = make_linear(s, rng, s.hidden_size, in, false);
      }
      blocks_.push_back(std::move(b));
    }
    fc_out_ = make_linear(s, rng, s.output_dim, s.hidden_size, true);
  }

  std::vector<ParamRef> parameters() override {
    std::vector<ParamRef> refs;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const std::string base = "block." + std::to_string(i);
      push_linear(refs, base + ".fc1", blocks_[i].fc1);
      push_linear(refs, base + ".fc2", blocks_[i].fc2);
      if (blocks_[i].downsample) {
        push_linear(refs, base + ".downsample", *blocks_[i].downsample);
      }
    }
    push_linear(refs, "fc_out", fc_out_);
    return refs;
  }

  Var forward(ad::Graph&, const Var& x, ParamCursor p, Mode) override {
    Var out = x;
    for (const auto& blk : blocks_) {
      Var in = out;
      Var h = ad::relu(bound_linear(p, blk.fc1, in));
      h = ad::relu(bound_linear(p, blk.fc2, h));
      Var res = blk.downsample ? bound_linear(p, *blk.downsample, in) : in;
      out = ad::relu(ad::add(h, res));
    }
    return bound_linear(p, fc_out_, out);
  }

 private:
  std::vector<ResBlock> blocks_;
  LinearLayer fc_out_;
};

}  // namespace

std::unique_ptr<Network> make_network(const NetworkSpec& spec, Rng& rng) {
  switch (spec.architecture) {
    case Arch::Mlp: return std::make_unique<MlpNet>(spec, rng);
    case Arch::Dgm: return std::make_unique<DgmNet>(spec, rng);
    case Arch::ResNet: return std::make_unique<ResNetNet>(spec, rng);
  }
  throw std::logic_error("unknown architecture");
}

BoundNetwork::BoundNetwork(Network& net, ad::Graph& g, Mode mode)
    : net_(net), g_(g), mode_(mode) {
  for (const auto& ref : net.parameters()) {
    params_.push_back(g.leaf(*ref.tensor, /*requires_grad=*/true));
  }
}

Var BoundNetwork::operator()(const Var& x) {
  return net_.forward(g_, x, ParamCursor{params_}, mode_);
}

std::vector<Tensor> BoundNetwork::grad_values(const Var& loss,
                                              bool create_graph) {
  auto grads = ad::grad(loss, params_, Tensor::ones(1, 1), create_graph);
  std::vector<Tensor> out;
  out.reserve(grads.size());
  for (const auto& gv : grads) out.push_back(gv.value());
  return out;
}

// ---- serialization -------------------------------------------------------

namespace {

nlohmann::json tensor_to_json(const std::string& name, const Tensor& t) {
  nlohmann::json j;
  j["name"] = name;
  j["shape"] = {t.rows(), t.cols()};
  j["values"] = std::vector<double>(t.data(), t.data() + t.size());
  return j;
}

void tensor_from_json(const nlohmann::json& j, Tensor& t) {
  auto shape = j.at("shape").get<std::vector<std::size_t>>();
  auto values = j.at("values").get<std::vector<double>>();
  t = Tensor(shape.at(0), shape.at(1), std::move(values));
}

}  // namespace

void save_params(Network& net, const std::string& path) {
  nlohmann::json j;
  j["params"] = nlohmann::json::array();
  for (const auto& ref : net.parameters()) {
    j["params"].push_back(tensor_to_json(ref.name, *ref.tensor));
  }
  j["buffers"] = nlohmann::json::array();
  for (const auto& ref : net.buffers()) {
    j["buffers"].push_back(tensor_to_json(ref.name, *ref.tensor));
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_params: cannot open " + path);
  os << j.dump(2) << "\n";
}

void load_params(Network& net, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_params: cannot open " + path);
  nlohmann::json j;
  is >> j;
  auto apply = [&](const nlohmann::json& arr,
                   std::vector<Network::ParamRef> refs) {
    if (arr.size() != refs.size()) {
      throw std::runtime_error("load_params: manifest entry count mismatch");
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (arr[i].at("name").get<std::string>() != refs[i].name) {
        throw std::runtime_error("load_params: name mismatch at " +
                                 refs[i].name);
      }
      Tensor t;
      tensor_from_json(arr[i], t);
      if (!t.same_shape(*refs[i].tensor)) {
        throw std::runtime_error("load_params: shape mismatch at " +
                                 refs[i].name);
      }
      *refs[i].tensor = std::move(t);
    }
  };
  apply(j.at("params"), net.parameters());
  apply(j.at("buffers"), net.buffers());
}

std::string to_string(Arch a) {
  switch (a) {
    case Arch::Mlp: return "mlp";
    case Arch::Dgm: return "dgm";
    case Arch::ResNet: return "resnet";
  }
  return "?";
}

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
  }
  return "?";
}

std::string to_string(BatchNormMode m) {
  switch (m) {
    case BatchNormMode::Off: return "off";
    case BatchNormMode::BeforeActivation: return "before";
    case BatchNormMode::AfterActivation: return "after";
  }
  return "?";
}

std::string to_string(Init i) {
  switch (i) {
    case Init::XavierNormal: return "xavier-normal";
    case Init::XavierUniform: return "xavier-uniform";
    case Init::He: return "he";
  }
  return "?";
}

}  // namespace gf::nn
