#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "batchrl/common.hpp"
#include "batchrl/rng.hpp"

// Feed-forward networks with hand-written forward/backward passes and a
// bias-corrected Adam optimizer. ReLU hidden layers; the output head is
// either a tanh-bounded mean vector or an unbounded linear readout.

namespace batchrl::nn {

enum class Head { kTanhMean, kLinear };

template <typename S>
struct DenseLayer {
  Mat<S> w;  // out x in
  Vec<S> b;  // out
};

template <typename S>
struct Mlp {
  std::vector<DenseLayer<S>> layers;  // hidden layers followed by the output layer
  Head head = Head::kLinear;

  int in_dim() const { return static_cast<int>(layers.front().w.cols()); }
  int out_dim() const { return static_cast<int>(layers.back().w.rows()); }
};

/// Weights uniform in +-sqrt(6/(fan_in+fan_out)), biases zero. The output
/// layer of a tanh-mean head is scaled by 0.01 so the initial policy is
/// near zero mean.
template <typename S>
Mlp<S> init_mlp(Rng& rng, int in_dim, const std::vector<int>& hidden, int out_dim,
                Head head) {
  require(in_dim >= 1, "init_mlp: in_dim must be >= 1");
  require(out_dim >= 1, "init_mlp: out_dim must be >= 1");
  for (int h : hidden) require(h >= 1, "init_mlp: hidden width must be >= 1");

  Mlp<S> net;
  net.head = head;
  int prev = in_dim;
  auto add_layer = [&](int width, S scale) {
    DenseLayer<S> layer;
    layer.w.resize(width, prev);
    const double bound = std::sqrt(6.0 / static_cast<double>(prev + width));
    for (int r = 0; r < width; ++r) {
      for (int c = 0; c < prev; ++c) {
        layer.w(r, c) = S(rng.uniform(-bound, bound)) * scale;
      }
    }
    layer.b = Vec<S>::Zero(width);
    net.layers.push_back(std::move(layer));
    prev = width;
  };
  for (int h : hidden) add_layer(h, S(1));
  add_layer(out_dim, head == Head::kTanhMean ? S(0.01) : S(1));
  return net;
}

/// Cached activations from one forward pass, consumed by backward().
template <typename S>
struct GradTape {
  std::vector<Mat<S>> inputs;  // input fed to each layer (inputs[0] = x)
  Mat<S> output;               // post-head output
  Eigen::Index batch = 0;
};

/// Batched forward pass; row b of the result depends only on row b of x.
template <typename S>
Mat<S> forward(const Mlp<S>& net, const Mat<S>& x, GradTape<S>* tape = nullptr) {
  require(!net.layers.empty(), "forward: uninitialized network");
  require(x.cols() == net.in_dim(), "forward: input width mismatch");
  if (tape) {
    tape->inputs.clear();
    tape->batch = x.rows();
  }
  Mat<S> h = x;
  const std::size_t n = net.layers.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (tape) tape->inputs.push_back(h);
    const DenseLayer<S>& layer = net.layers[k];
    Mat<S> z = h * layer.w.transpose();
    z.rowwise() += layer.b.transpose();
    if (k + 1 < n) {
      h = z.array().max(S(0)).matrix();  // ReLU
    } else if (net.head == Head::kTanhMean) {
      h = z.array().tanh().matrix();
    } else {
      h = std::move(z);
    }
  }
  if (tape) tape->output = h;
  return h;
}

template <typename S>
struct MlpGrads {
  std::vector<DenseLayer<S>> layers;  // same shapes as the network
};

/// Parameter gradients for upstream dL/dy, summed over the batch.
template <typename S>
MlpGrads<S> backward(const Mlp<S>& net, const GradTape<S>& tape, const Mat<S>& upstream) {
  const std::size_t n = net.layers.size();
  require(tape.inputs.size() == n, "backward: tape does not match network");
  require(upstream.rows() == tape.batch, "backward: upstream batch mismatch");
  require(upstream.cols() == net.out_dim(), "backward: upstream width mismatch");

  MlpGrads<S> grads;
  grads.layers.resize(n);

  Mat<S> dz;
  if (net.head == Head::kTanhMean) {
    dz = upstream.cwiseProduct((S(1) - tape.output.array().square()).matrix());
  } else {
    dz = upstream;
  }
  for (std::size_t k = n; k-- > 0;) {
    grads.layers[k].w = dz.transpose() * tape.inputs[k];
    grads.layers[k].b = dz.colwise().sum().transpose();
    if (k > 0) {
      Mat<S> dh = dz * net.layers[k].w;
      // tape.inputs[k] is the post-ReLU output of layer k-1
      dz = dh.cwiseProduct(
          (tape.inputs[k].array() > S(0)).template cast<S>().matrix());
    }
  }
  return grads;
}

/// Adam moment accumulators for a flat list of parameter tensors.
template <typename S>
struct AdamState {
  long step_count = 0;
  S beta1 = S(0.9);
  S beta2 = S(0.999);
  S eps = S(1e-8);
  std::vector<Vec<S>> m;
  std::vector<Vec<S>> v;
};

template <typename S>
using ParamView = std::vector<Eigen::Map<Vec<S>>>;
template <typename S>
using GradView = std::vector<Eigen::Map<const Vec<S>>>;

template <typename S>
ParamView<S> param_view(Mlp<S>& net) {
  ParamView<S> out;
  for (DenseLayer<S>& layer : net.layers) {
    out.emplace_back(layer.w.data(), layer.w.size());
    out.emplace_back(layer.b.data(), layer.b.size());
  }
  return out;
}

template <typename S>
GradView<S> grad_view(const MlpGrads<S>& grads) {
  GradView<S> out;
  for (const DenseLayer<S>& layer : grads.layers) {
    out.emplace_back(layer.w.data(), layer.w.size());
    out.emplace_back(layer.b.data(), layer.b.size());
  }
  return out;
}

/// One bias-corrected Adam update over every tensor in `params`.
template <typename S>
void adam_step(AdamState<S>& state, ParamView<S>& params, const GradView<S>& grads,
               S lr) {
  require(params.size() == grads.size(), "adam_step: parameter/gradient count mismatch");
  if (state.m.empty()) {
    for (const auto& p : params) {
      state.m.push_back(Vec<S>::Zero(p.size()));
      state.v.push_back(Vec<S>::Zero(p.size()));
    }
  }
  require(state.m.size() == params.size(), "adam_step: state does not match parameters");

  state.step_count += 1;
  const S c1 = S(1) - std::pow(state.beta1, S(state.step_count));
  const S c2 = S(1) - std::pow(state.beta2, S(state.step_count));
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(params[i].size() == grads[i].size() && params[i].size() == state.m[i].size(),
            "adam_step: tensor shape mismatch");
    Vec<S>& m = state.m[i];
    Vec<S>& v = state.v[i];
    m = state.beta1 * m + (S(1) - state.beta1) * grads[i];
    v = (state.beta2 * v.array() + (S(1) - state.beta2) * grads[i].array().square())
            .matrix();
    params[i].array() -=
        lr * (m.array() / c1) / ((v.array() / c2).sqrt() + state.eps);
  }
}

}  // namespace batchrl::nn
