#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stormcast/errors.hpp"
#include "stormcast/lstm.hpp"
#include "stormcast/storm_data.hpp"

namespace stormcast {

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 64;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double p_input = 0.2;
  double p_recurrent = 0.1;
  std::uint64_t seed = 0;

  void validate() const {
    check_dropout_probability(p_input, "input");
    check_dropout_probability(p_recurrent, "recurrent");
    if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
    if (batch_size == 0) throw ValidationError("batch size must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
      throw ValidationError("Adam betas must be in [0, 1)");
    if (!(epsilon > 0.0)) throw ValidationError("Adam epsilon must be positive");
  }
};

struct AdamState {
  ModelParams m;
  ModelParams v;
  std::uint64_t t = 0;

  static AdamState zeros(const Architecture& a) { return {ModelParams::zeros(a), ModelParams::zeros(a), 0}; }
};

struct EpochLosses {
  double train_mse = 0.0;
  double val_mse = 0.0;
};

using TrainHistory = std::vector<EpochLosses>;

/// Mean over the two coordinates of the squared error.
inline double mse(const Prediction& pred, const Prediction& label) {
  const double a = pred[0] - label[0];
  const double b = pred[1] - label[1];
  return (a * a + b * b) / 2.0;
}

/// One bias-corrected Adam update. The step counter is incremented before use.
/// Throws NumericalError, leaving params and state untouched, on a non-finite gradient.
inline void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, const TrainConfig& config) {
  if (!all_finite(grads)) throw NumericalError("non-finite gradient; aborting update");
  ++state.t;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);

  auto update = [&](auto& theta, const auto& g, auto& m, auto& v) {
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g.cwiseProduct(g);
    theta.array() -= config.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + config.epsilon);
  };
  update(params.layer1.input_weights, grads.layer1.input_weights, state.m.layer1.input_weights,
         state.v.layer1.input_weights);
  update(params.layer1.recurrent_weights, grads.layer1.recurrent_weights, state.m.layer1.recurrent_weights,
         state.v.layer1.recurrent_weights);
  update(params.layer1.bias, grads.layer1.bias, state.m.layer1.bias, state.v.layer1.bias);
  update(params.layer2.input_weights, grads.layer2.input_weights, state.m.layer2.input_weights,
         state.v.layer2.input_weights);
  update(params.layer2.recurrent_weights, grads.layer2.recurrent_weights, state.m.layer2.recurrent_weights,
         state.v.layer2.recurrent_weights);
  update(params.layer2.bias, grads.layer2.bias, state.m.layer2.bias, state.v.layer2.bias);
  update(params.output_weights, grads.output_weights, state.m.output_weights, state.v.output_weights);
  update(params.output_bias, grads.output_bias, state.m.output_bias, state.v.output_bias);
}

/// Mean per-sample MSE of the deterministic network (dropout off). Consumes no randomness.
inline double evaluate_mse(const ModelParams& params, std::span<const Sample> samples) {
  if (samples.empty()) return 0.0;
  const DropoutMasks none = DropoutMasks::none(params.architecture());
  double total = 0.0;
  for (const auto& s : samples) total += mse(forward(s, params, none), s.label);
  return total / static_cast<double>(samples.size());
}

struct TrainResult {
  ModelParams params;
  TrainHistory history;
};

/// Called after each epoch with the 1-based epoch number.
using EpochCallback = std::function<void(std::size_t epoch, const EpochLosses&)>;

/// Minibatch Adam on the per-sample MSE. Each sequence in a batch gets its own
/// freshly drawn masks; batch gradients are averaged in sample order.
inline TrainResult train(std::span<const Sample> train_samples, std::span<const Sample> val_samples,
                         const TrainConfig& config, const Architecture& arch = {},
                         const EpochCallback& on_epoch = {}) {
  config.validate();
  TrainResult result{init_params(config.seed, arch), {}};
  if (config.epochs == 0) return result;
  if (train_samples.empty()) throw ValidationError("train: no training samples");
  if (val_samples.empty()) throw ValidationError("train: no validation samples");

  std::seed_seq seq{config.seed, std::uint64_t{0x7472'6169'6eULL}};
  std::mt19937_64 rng(seq);
  AdamState adam = AdamState::zeros(arch);
  std::vector<std::size_t> order(train_samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      Gradients batch = ModelParams::zeros(arch);
      for (std::size_t k = start; k < end; ++k) {
        const Sample& s = train_samples[order[k]];
        const DropoutMasks masks = sample_masks(rng, config.p_input, config.p_recurrent, arch);
        LossAndGradients lg = backward(s, s.label, result.params, masks);
        if (!std::isfinite(lg.loss)) throw NumericalError("non-finite training loss at epoch " + std::to_string(epoch));
        epoch_loss += lg.loss;
        for_each_block_pair(batch, lg.grads, [](auto& acc, const auto& g) { acc += g; });
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      for_each_block(batch, [&](const char*, auto& g) { g *= scale; });
      adam_step(result.params, batch, adam, config);
    }
    EpochLosses losses{epoch_loss / static_cast<double>(order.size()), evaluate_mse(result.params, val_samples)};
    if (!std::isfinite(losses.val_mse)) throw NumericalError("non-finite validation loss at epoch " + std::to_string(epoch));
    result.history.push_back(losses);
    if (on_epoch) on_epoch(epoch, losses);
  }
  return result;
}

}  // namespace stormcast
