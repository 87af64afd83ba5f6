#pragma once

// Two-layer LSTM regressor with variational (per-sequence) dropout.
//
// Gate rows of every 4*n_h block are ordered input, forget, cell candidate,
// output. Dropout is inverted: kept units are scaled by 1/(1 - p), and one mask
// per layer input and per layer recurrence is held for the whole sequence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stormcast/errors.hpp"
#include "stormcast/storm_data.hpp"

namespace stormcast {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

using Prediction = std::array<double, 2>;  // normalized (lat, lon)

struct Architecture {
  std::size_t n_x = kNumFeatures;
  std::size_t n_h1 = 32;
  std::size_t n_h2 = 16;
  std::size_t n_y = 2;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct LayerParams {
  MatrixXd input_weights;      // U: 4*n_h x n_in
  MatrixXd recurrent_weights;  // W: 4*n_h x n_h
  VectorXd bias;               // b: 4*n_h

  std::size_t n_in() const { return static_cast<std::size_t>(input_weights.cols()); }
  std::size_t n_hidden() const { return static_cast<std::size_t>(recurrent_weights.cols()); }

  static LayerParams zeros(std::size_t n_in, std::size_t n_h) {
    const auto g = static_cast<Index>(4 * n_h);
    return {MatrixXd::Zero(g, static_cast<Index>(n_in)), MatrixXd::Zero(g, static_cast<Index>(n_h)),
            VectorXd::Zero(g)};
  }
};

struct ModelParams {
  LayerParams layer1;
  LayerParams layer2;
  MatrixXd output_weights;  // V: n_y x n_h2
  VectorXd output_bias;     // n_y

  Architecture architecture() const {
    return {layer1.n_in(), layer1.n_hidden(), layer2.n_hidden(), static_cast<std::size_t>(output_weights.rows())};
  }

  static ModelParams zeros(const Architecture& a = {}) {
    return {LayerParams::zeros(a.n_x, a.n_h1), LayerParams::zeros(a.n_h1, a.n_h2),
            MatrixXd::Zero(static_cast<Index>(a.n_y), static_cast<Index>(a.n_h2)),
            VectorXd::Zero(static_cast<Index>(a.n_y))};
  }
};

/// Derivatives of the loss, one block per ModelParams block.
using Gradients = ModelParams;

/// Visits every parameter block as (name, Eigen dense object). Works on const and mutable params.
template <typename Params, typename Fn>
void for_each_block(Params& p, Fn&& fn) {
  fn("layer1.input_weights", p.layer1.input_weights);
  fn("layer1.recurrent_weights", p.layer1.recurrent_weights);
  fn("layer1.bias", p.layer1.bias);
  fn("layer2.input_weights", p.layer2.input_weights);
  fn("layer2.recurrent_weights", p.layer2.recurrent_weights);
  fn("layer2.bias", p.layer2.bias);
  fn("output_weights", p.output_weights);
  fn("output_bias", p.output_bias);
}

/// Visits matching blocks of two shape-congruent parameter sets.
template <typename A, typename B, typename Fn>
void for_each_block_pair(A& a, B& b, Fn&& fn) {
  fn(a.layer1.input_weights, b.layer1.input_weights);
  fn(a.layer1.recurrent_weights, b.layer1.recurrent_weights);
  fn(a.layer1.bias, b.layer1.bias);
  fn(a.layer2.input_weights, b.layer2.input_weights);
  fn(a.layer2.recurrent_weights, b.layer2.recurrent_weights);
  fn(a.layer2.bias, b.layer2.bias);
  fn(a.output_weights, b.output_weights);
  fn(a.output_bias, b.output_bias);
}

inline std::size_t parameter_count(const ModelParams& p) {
  std::size_t n = 0;
  for_each_block(p, [&](const char*, const auto& m) { n += static_cast<std::size_t>(m.size()); });
  return n;
}

inline bool all_finite(const ModelParams& p) {
  bool ok = true;
  for_each_block(p, [&](const char*, const auto& m) { ok = ok && m.allFinite(); });
  return ok;
}

/// Glorot-uniform weights with a = sqrt(6 / (rows + cols)) per matrix; biases
/// zero except the forget gate, which starts at 1.
inline ModelParams init_params(std::uint64_t seed, const Architecture& arch = {}) {
  ModelParams p = ModelParams::zeros(arch);
  std::mt19937_64 rng(seed);
  auto glorot = [&](MatrixXd& m) {
    const double a = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
    std::uniform_real_distribution<double> dist(-a, a);
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  };
  for (LayerParams* layer : {&p.layer1, &p.layer2}) {
    glorot(layer->input_weights);
    glorot(layer->recurrent_weights);
    const auto n_h = static_cast<Index>(layer->n_hidden());
    layer->bias.segment(n_h, n_h).setOnes();
  }
  glorot(p.output_weights);
  return p;
}

// ---------------------------------------------------------------------------
// Dropout masks

struct LayerMasks {
  VectorXd input_keep;      // 0/1, length n_in
  VectorXd recurrent_keep;  // 0/1, length n_h
  double p_input = 0.0;
  double p_recurrent = 0.0;
};

struct DropoutMasks {
  LayerMasks layer1;
  LayerMasks layer2;

  /// All-ones masks with p = 0: the deterministic network.
  static DropoutMasks none(const Architecture& a = {}) {
    return {{VectorXd::Ones(static_cast<Index>(a.n_x)), VectorXd::Ones(static_cast<Index>(a.n_h1)), 0.0, 0.0},
            {VectorXd::Ones(static_cast<Index>(a.n_h1)), VectorXd::Ones(static_cast<Index>(a.n_h2)), 0.0, 0.0}};
  }
};

inline void check_dropout_probability(double p, const char* what) {
  if (!(p >= 0.0 && p < 1.0)) throw ValidationError(std::string(what) + " dropout must be in [0, 1)");
}

/// Fresh Bernoulli keep-masks for one sequence pass.
inline DropoutMasks sample_masks(std::mt19937_64& rng, double p_input, double p_recurrent,
                                 const Architecture& arch = {}) {
  check_dropout_probability(p_input, "input");
  check_dropout_probability(p_recurrent, "recurrent");
  DropoutMasks m = DropoutMasks::none(arch);
  auto draw = [&](VectorXd& v, double p) {
    if (p == 0.0) return;
    std::bernoulli_distribution keep(1.0 - p);
    for (Index i = 0; i < v.size(); ++i) v[i] = keep(rng) ? 1.0 : 0.0;
  };
  for (LayerMasks* lm : {&m.layer1, &m.layer2}) {
    lm->p_input = p_input;
    lm->p_recurrent = p_recurrent;
    draw(lm->input_keep, p_input);
    draw(lm->recurrent_keep, p_recurrent);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Forward

struct CellState {
  VectorXd h;
  VectorXd c;

  static CellState zeros(std::size_t n_h) {
    return {VectorXd::Zero(static_cast<Index>(n_h)), VectorXd::Zero(static_cast<Index>(n_h))};
  }
};

/// Receives the keep-mask vectors applied at each (layer, timestep).
using MaskObserver = std::function<void(int layer, Index t, const VectorXd& input_keep, const VectorXd& recurrent_keep)>;

namespace detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// One LSTM step. Writes the dropped/scaled inputs, the activated gates and the new state.
template <typename X, typename H, typename C>
void lstm_step(const LayerParams& p, const LayerMasks& m, const X& x, const H& h_prev, const C& c_prev,
               Eigen::Ref<VectorXd> x_in, Eigen::Ref<VectorXd> h_in, Eigen::Ref<VectorXd> gates,
               Eigen::Ref<VectorXd> c, Eigen::Ref<VectorXd> h) {
  const Index n = static_cast<Index>(p.n_hidden());
  x_in = x.cwiseProduct(m.input_keep) / (1.0 - m.p_input);
  h_in = h_prev.cwiseProduct(m.recurrent_keep) / (1.0 - m.p_recurrent);
  gates.noalias() = p.input_weights * x_in;
  gates.noalias() += p.recurrent_weights * h_in;
  gates += p.bias;
  for (Index k = 0; k < n; ++k) {
    gates[k] = sigmoid(gates[k]);
    gates[n + k] = sigmoid(gates[n + k]);
    gates[2 * n + k] = std::tanh(gates[2 * n + k]);
    gates[3 * n + k] = sigmoid(gates[3 * n + k]);
  }
  c = gates.segment(n, n).cwiseProduct(c_prev) + gates.segment(0, n).cwiseProduct(gates.segment(2 * n, n));
  h = gates.segment(3 * n, n).cwiseProduct(c.array().tanh().matrix());
}

}  // namespace detail

/// Single LSTM cell update with the layer's dropout masks applied.
inline CellState lstm_cell_forward(const VectorXd& x, const CellState& state, const LayerParams& params,
                                   const LayerMasks& masks) {
  const Index n = static_cast<Index>(params.n_hidden());
  VectorXd x_in(x.size()), h_in(n), gates(4 * n);
  CellState next = CellState::zeros(params.n_hidden());
  detail::lstm_step(params, masks, x, state.h, state.c, x_in, h_in, gates, next.c, next.h);
  return next;
}

/// Per-timestep intermediates of one layer over a sequence of length T.
struct LayerTrace {
  MatrixXd x_in;   // n_in x T, masked and scaled inputs
  MatrixXd h_in;   // n_h x T, masked and scaled previous hidden state
  MatrixXd gates;  // 4*n_h x T, activated gates
  MatrixXd c;      // n_h x (T+1), column 0 is the initial state
  MatrixXd h;      // n_h x (T+1)
};

struct ForwardTrace {
  LayerTrace layer1;
  LayerTrace layer2;
  Prediction output{};
};

namespace detail {

/// Runs a layer over the columns of `inputs` (n_in x T) from a zero state.
inline LayerTrace run_layer(const LayerParams& p, const LayerMasks& m, const MatrixXd& inputs, int layer_id,
                            const MaskObserver* observer) {
  const Index T = inputs.cols();
  const Index n = static_cast<Index>(p.n_hidden());
  LayerTrace tr{MatrixXd(inputs.rows(), T), MatrixXd(n, T), MatrixXd(4 * n, T), MatrixXd::Zero(n, T + 1),
                MatrixXd::Zero(n, T + 1)};
  for (Index t = 0; t < T; ++t) {
    if (observer && *observer) (*observer)(layer_id, t, m.input_keep, m.recurrent_keep);
    lstm_step(p, m, inputs.col(t), tr.h.col(t), tr.c.col(t), tr.x_in.col(t), tr.h_in.col(t), tr.gates.col(t),
              tr.c.col(t + 1), tr.h.col(t + 1));
  }
  return tr;
}

}  // namespace detail

/// Full forward pass keeping every intermediate needed by backward().
inline ForwardTrace forward_trace(const MatrixXd& input, const ModelParams& params, const DropoutMasks& masks,
                                  const MaskObserver* observer = nullptr) {
  ForwardTrace tr;
  const MatrixXd seq = input.transpose();  // features x T
  tr.layer1 = detail::run_layer(params.layer1, masks.layer1, seq, 1, observer);
  tr.layer2 = detail::run_layer(params.layer2, masks.layer2, tr.layer1.h.rightCols(seq.cols()), 2, observer);
  const VectorXd y = params.output_weights * tr.layer2.h.col(seq.cols()) + params.output_bias;
  tr.output = {y[0], y[1]};
  return tr;
}

/// Prediction from the last timestep of layer 2, through the linear output head.
inline Prediction forward(const Sample& sample, const ModelParams& params, const DropoutMasks& masks,
                          const MaskObserver* observer = nullptr) {
  return forward_trace(sample.input, params, masks, observer).output;
}

// ---------------------------------------------------------------------------
// Backward

namespace detail {

/// BPTT through one layer. `dh_out` (n_h x T) is the loss gradient flowing
/// into each h_t from above. Accumulates parameter gradients into `g` and
/// returns the gradient with respect to the layer's undropped inputs.
inline MatrixXd backprop_layer(const LayerParams& p, const LayerMasks& m, const LayerTrace& tr,
                               const MatrixXd& dh_out, LayerParams& g) {
  const Index T = dh_out.cols();
  const Index n = static_cast<Index>(p.n_hidden());
  MatrixXd dx(p.input_weights.cols(), T);
  VectorXd dh_next = VectorXd::Zero(n);
  VectorXd dc_next = VectorXd::Zero(n);
  VectorXd dz(4 * n);
  const double x_scale = 1.0 / (1.0 - m.p_input);
  const double h_scale = 1.0 / (1.0 - m.p_recurrent);

  for (Index t = T - 1; t >= 0; --t) {
    const auto gates = tr.gates.col(t);
    const auto c = tr.c.col(t + 1);
    const auto c_prev = tr.c.col(t);
    for (Index k = 0; k < n; ++k) {
      const double i = gates[k], f = gates[n + k], gc = gates[2 * n + k], o = gates[3 * n + k];
      const double tc = std::tanh(c[k]);
      const double dh = dh_out(k, t) + dh_next[k];
      const double dc = dc_next[k] + dh * o * (1.0 - tc * tc);
      dz[k] = dc * gc * i * (1.0 - i);
      dz[n + k] = dc * c_prev[k] * f * (1.0 - f);
      dz[2 * n + k] = dc * i * (1.0 - gc * gc);
      dz[3 * n + k] = dh * tc * o * (1.0 - o);
      dc_next[k] = dc * f;
    }
    g.input_weights.noalias() += dz * tr.x_in.col(t).transpose();
    g.recurrent_weights.noalias() += dz * tr.h_in.col(t).transpose();
    g.bias += dz;
    dx.col(t).noalias() = p.input_weights.transpose() * dz;
    dx.col(t) = dx.col(t).cwiseProduct(m.input_keep) * x_scale;
    dh_next.noalias() = p.recurrent_weights.transpose() * dz;
    dh_next = dh_next.cwiseProduct(m.recurrent_keep) * h_scale;
  }
  return dx;
}

}  // namespace detail

struct LossAndGradients {
  double loss = 0.0;
  Gradients grads;
};

/// Mean squared error over the output components and its exact gradient, masks held fixed.
inline LossAndGradients backward(const MatrixXd& input, const Prediction& label, const ModelParams& params,
                                 const DropoutMasks& masks) {
  const ForwardTrace tr = forward_trace(input, params, masks);
  const Index T = input.rows();
  const Index n_y = params.output_weights.rows();

  LossAndGradients out{0.0, ModelParams::zeros(params.architecture())};
  VectorXd dy(n_y);
  for (Index k = 0; k < n_y; ++k) {
    const double r = tr.output[static_cast<std::size_t>(k)] - label[static_cast<std::size_t>(k)];
    out.loss += r * r;
    dy[k] = 2.0 * r / static_cast<double>(n_y);
  }
  out.loss /= static_cast<double>(n_y);

  const auto h_last = tr.layer2.h.col(T);
  out.grads.output_weights.noalias() = dy * h_last.transpose();
  out.grads.output_bias = dy;

  MatrixXd dh2 = MatrixXd::Zero(params.layer2.recurrent_weights.cols(), T);
  dh2.col(T - 1).noalias() = params.output_weights.transpose() * dy;
  const MatrixXd dh1 = detail::backprop_layer(params.layer2, masks.layer2, tr.layer2, dh2, out.grads.layer2);
  detail::backprop_layer(params.layer1, masks.layer1, tr.layer1, dh1, out.grads.layer1);
  return out;
}

inline LossAndGradients backward(const Sample& sample, const Prediction& label, const ModelParams& params,
                                 const DropoutMasks& masks) {
  return backward(sample.input, label, params, masks);
}

// ---------------------------------------------------------------------------
// Gradient check

struct BlockError {
  std::string name;
  double max_relative_error = 0.0;
};

struct GradCheckReport {
  std::vector<BlockError> blocks;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Relative error with an absolute floor so that near-zero components compare absolutely.
inline double relative_error(double analytic, double numeric, double floor = 1e-7) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

struct GradCheckOptions {
  Architecture arch{2, 3, 2, 2};
  std::size_t sequence_length = 4;
  double epsilon = 1e-5;
  double p_input = 0.0;
  double p_recurrent = 0.0;
};

/// Compares backward() against central finite differences of the loss on a
/// random tiny network, sample and (optionally dropped) mask set.
inline GradCheckReport grad_check(std::uint64_t seed, double tolerance, const GradCheckOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  ModelParams params = init_params(seed, opt.arch);
  // Nonzero biases everywhere so every gradient path is exercised.
  for_each_block(params, [&](const char*, auto& m) {
    for (Index i = 0; i < m.size(); ++i) m.data()[i] += 0.3 * u(rng);
  });
  MatrixXd input(static_cast<Index>(opt.sequence_length), static_cast<Index>(opt.arch.n_x));
  for (Index i = 0; i < input.size(); ++i) input.data()[i] = u(rng) + 0.5;
  const Prediction label{u(rng) + 0.5, u(rng) + 0.5};
  const DropoutMasks masks = sample_masks(rng, opt.p_input, opt.p_recurrent, opt.arch);

  const LossAndGradients analytic = backward(input, label, params, masks);
  auto loss_at = [&](const ModelParams& p) {
    const Prediction y = forward_trace(input, p, masks).output;
    double l = 0.0;
    for (std::size_t k = 0; k < 2; ++k) l += (y[k] - label[k]) * (y[k] - label[k]);
    return l / 2.0;
  };

  GradCheckReport report;
  report.tolerance = tolerance;
  ModelParams probe = params;
  std::vector<double*> probe_blocks;
  for_each_block(probe, [&](const char*, auto& m) { probe_blocks.push_back(m.data()); });
  std::size_t b = 0;
  for_each_block(analytic.grads, [&](const char* name, const auto& g) {
    double* theta = probe_blocks[b++];
    double worst = 0.0;
    for (Index i = 0; i < g.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + opt.epsilon;
      const double up = loss_at(probe);
      theta[i] = saved - opt.epsilon;
      const double down = loss_at(probe);
      theta[i] = saved;
      const double numeric = (up - down) / (2.0 * opt.epsilon);
      worst = std::max(worst, relative_error(g.data()[i], numeric));
    }
    report.blocks.push_back({name, worst});
    report.worst = std::max(report.worst, worst);
  });
  report.passed = report.worst <= tolerance;
  return report;
}

}  // namespace stormcast
