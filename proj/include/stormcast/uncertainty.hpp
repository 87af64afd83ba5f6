#pragma once

// Monte Carlo dropout inference and interval calibration.
//
// Every stochastic pass draws its own timestep-constant masks; the spread of
// the T outputs is read as the posterior predictive spread. Bands are
// axis-aligned: latitude and longitude are treated separately.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stormcast/errors.hpp"
#include "stormcast/lstm.hpp"
#include "stormcast/stats.hpp"
#include "stormcast/storm_data.hpp"

namespace stormcast {

inline constexpr std::array<double, 5> kDefaultLevels{67.0, 90.0, 95.0, 98.0, 99.0};
inline constexpr std::array<const char*, 2> kCoordinateNames{"lat", "lon"};

struct PredictionEnsemble {
  std::vector<Prediction> predictions;  // T rows of normalized (lat, lon)
  Prediction mean{};
  Prediction sigma{};  // sample standard deviation, denominator T - 1

  std::size_t passes() const { return predictions.size(); }

  /// Column of one coordinate across all passes.
  std::vector<double> column(std::size_t coord) const {
    std::vector<double> out;
    out.reserve(predictions.size());
    for (const auto& p : predictions) out.push_back(p[coord]);
    return out;
  }
};

inline PredictionEnsemble make_ensemble(std::vector<Prediction> predictions) {
  if (predictions.size() < 2) throw ValidationError("ensemble needs at least 2 passes");
  PredictionEnsemble e;
  e.predictions = std::move(predictions);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto col = e.column(k);
    const MeanStd ms = mean_std(col);
    e.mean[k] = ms.mean;
    e.sigma[k] = ms.sigma;
  }
  return e;
}

/// T forward passes, each with freshly drawn masks from a generator seeded by `seed`.
inline PredictionEnsemble mc_predict(const ModelParams& params, const Sample& sample, std::size_t passes,
                                     double p_input, double p_recurrent, std::uint64_t seed) {
  if (passes < 2) throw ValidationError("mc_predict: need at least 2 passes");
  const Architecture arch = params.architecture();
  std::mt19937_64 rng(seed);
  std::vector<Prediction> out;
  out.reserve(passes);
  for (std::size_t t = 0; t < passes; ++t) {
    const DropoutMasks masks = sample_masks(rng, p_input, p_recurrent, arch);
    out.push_back(forward(sample, params, masks));
  }
  return make_ensemble(std::move(out));
}

/// Per-coordinate D'Agostino-Pearson result; empty when the test is undefined
/// (fewer than 20 passes or zero spread).
inline std::array<std::optional<NormalityTest>, 2> ensemble_normality(const PredictionEnsemble& e) {
  std::array<std::optional<NormalityTest>, 2> out;
  if (e.passes() < 20) return out;
  for (std::size_t k = 0; k < 2; ++k) {
    if (!(e.sigma[k] > 0.0)) continue;
    const auto col = e.column(k);
    try {
      out[k] = dagostino_k2(col);
    } catch (const ValidationError&) {
      // spread too small for the moment estimates
    }
  }
  return out;
}

struct CredibleBand {
  double level = 0.0;  // percent
  double z = 0.0;
  Prediction lower{};
  Prediction upper{};

  bool contains(std::size_t coord, double value) const {
    return value >= lower[coord] && value <= upper[coord];
  }
};

/// mean +/- z(level) * std per coordinate, in normalized units.
inline CredibleBand credible_band(const PredictionEnsemble& e, double level) {
  CredibleBand b;
  b.level = level;
  b.z = z_for_level(level);
  for (std::size_t k = 0; k < 2; ++k) {
    b.lower[k] = e.mean[k] - b.z * e.sigma[k];
    b.upper[k] = e.mean[k] + b.z * e.sigma[k];
  }
  return b;
}

/// Maps a normalized band to degrees through the scaler inverse.
inline CredibleBand to_degrees(const CredibleBand& b, const Scaler& scaler) {
  CredibleBand out = b;
  const std::array<std::size_t, 2> feature{kLat, kLon};
  for (std::size_t k = 0; k < 2; ++k) {
    out.lower[k] = scaler.denormalize(feature[k], b.lower[k]);
    out.upper[k] = scaler.denormalize(feature[k], b.upper[k]);
  }
  return out;
}

inline std::vector<CredibleBand> credible_bands(const PredictionEnsemble& e, std::span<const double> levels) {
  std::vector<CredibleBand> out;
  out.reserve(levels.size());
  for (double level : levels) out.push_back(credible_band(e, level));
  return out;
}

struct CoverageReport {
  std::vector<double> levels;
  std::array<std::vector<double>, 2> percent;  // [coordinate][level index]
  std::size_t n = 0;
};

/// Percentage of truths inside the closed band, per coordinate and level.
/// `bands[i]` holds the bands of point i, one per level, in the same level order for every point.
inline CoverageReport coverage(std::span<const std::vector<CredibleBand>> bands, std::span<const Prediction> truths) {
  if (bands.size() != truths.size())
    throw ValidationError("coverage: " + std::to_string(bands.size()) + " band sets for " +
                          std::to_string(truths.size()) + " truths");
  if (bands.empty()) throw ValidationError("coverage: no points");
  CoverageReport r;
  for (const auto& b : bands.front()) r.levels.push_back(b.level);
  const std::size_t n_levels = r.levels.size();
  std::array<std::vector<std::size_t>, 2> hits{std::vector<std::size_t>(n_levels, 0),
                                               std::vector<std::size_t>(n_levels, 0)};
  for (std::size_t i = 0; i < bands.size(); ++i) {
    if (bands[i].size() != n_levels) throw ValidationError("coverage: inconsistent level sets");
    for (std::size_t l = 0; l < n_levels; ++l) {
      if (bands[i][l].level != r.levels[l]) throw ValidationError("coverage: inconsistent level sets");
      for (std::size_t k = 0; k < 2; ++k)
        if (bands[i][l].contains(k, truths[i][k])) ++hits[k][l];
    }
  }
  r.n = truths.size();
  for (std::size_t k = 0; k < 2; ++k) {
    r.percent[k].resize(n_levels);
    for (std::size_t l = 0; l < n_levels; ++l)
      r.percent[k][l] = 100.0 * static_cast<double>(hits[k][l]) / static_cast<double>(r.n);
  }
  return r;
}

}  // namespace stormcast
