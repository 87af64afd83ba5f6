#pragma once

// Predictions artifact (MC-dropout ensembles for one split), the coverage
// evaluation over it and per-storm plot series.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stormcast/dataset.hpp"
#include "stormcast/errors.hpp"
#include "stormcast/file_io.hpp"
#include "stormcast/lstm.hpp"
#include "stormcast/stats.hpp"
#include "stormcast/uncertainty.hpp"

namespace stormcast {

inline constexpr int kPredictionsFormatVersion = 1;

struct SamplePrediction {
  std::string storm_id;
  std::size_t cutoff = 0;
  std::size_t passes = 0;
  Prediction mean{};   // normalized
  Prediction sigma{};  // normalized
  Prediction truth{};  // normalized
  std::array<std::optional<NormalityTest>, 2> normality;
};

struct PredictionsArtifact {
  std::string split;
  std::size_t passes = 0;
  std::vector<double> levels;
  std::uint64_t seed = 0;
  double p_input = 0.0;
  double p_recurrent = 0.0;
  std::size_t pred_len = 1;
  Scaler scaler;
  std::vector<SamplePrediction> samples;

  /// Normalized bands of sample i at every level, in `levels` order.
  std::vector<CredibleBand> bands(std::size_t i) const {
    PredictionEnsemble e;
    e.mean = samples[i].mean;
    e.sigma = samples[i].sigma;
    std::vector<CredibleBand> out;
    for (double level : levels) out.push_back(credible_band(e, level));
    return out;
  }
};

/// Seed of the i-th sample's pass generator, derived from the run seed.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
  std::mt19937_64 rng(seq);
  return rng();
}

inline PredictionsArtifact predict_split(const ModelParams& params, const Scaler& scaler,
                                         std::span<const Sample> samples, std::string split, std::size_t passes,
                                         std::vector<double> levels, std::uint64_t seed, double p_input,
                                         double p_recurrent, std::size_t pred_len) {
  if (levels.empty()) throw ValidationError("at least one credible level is required");
  for (double l : levels) z_for_level(l);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  PredictionsArtifact out{std::move(split), passes, std::move(levels), seed, p_input, p_recurrent, pred_len, scaler, {}};
  out.samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const PredictionEnsemble e = mc_predict(params, s, passes, p_input, p_recurrent, sample_seed(seed, i));
    out.samples.push_back({s.storm_id, s.cutoff, passes, e.mean, e.sigma, s.label, ensemble_normality(e)});
  }
  return out;
}

inline CoverageReport evaluate_predictions(const PredictionsArtifact& p) {
  std::vector<std::vector<CredibleBand>> bands;
  std::vector<Prediction> truths;
  bands.reserve(p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    bands.push_back(p.bands(i));
    truths.push_back(p.samples[i].truth);
  }
  return coverage(bands, truths);
}

inline std::string level_key(double level) { return format_number(level); }

/// `coordinate,level,percent,n`, one row per (coordinate, level).
inline std::string coverage_to_csv(const CoverageReport& r) {
  std::string out = "coordinate,level,percent,n\n";
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < r.levels.size(); ++l)
      out += std::string(kCoordinateNames[k]) + "," + level_key(r.levels[l]) + "," + format_number(r.percent[k][l]) +
             "," + std::to_string(r.n) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline Prediction to_degrees(const Scaler& s, const Prediction& p) {
  return {s.denormalize(kLat, p[0]), s.denormalize(kLon, p[1])};
}

inline nlohmann::json bands_to_json(const std::vector<CredibleBand>& bands) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& b : bands)
    j[level_key(b.level)] = {{"lat", {b.lower[0], b.upper[0]}}, {"lon", {b.lower[1], b.upper[1]}}};
  return j;
}

}  // namespace detail

inline std::string predictions_to_json(const PredictionsArtifact& p) {
  nlohmann::json j;
  j["format_version"] = kPredictionsFormatVersion;
  j["split"] = p.split;
  j["passes"] = p.passes;
  j["levels"] = p.levels;
  j["seed"] = p.seed;
  j["p_input"] = p.p_input;
  j["p_recurrent"] = p.p_recurrent;
  j["pred_len"] = p.pred_len;
  j["scaler"] = scaler_to_json(p.scaler);
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    const SamplePrediction& s = p.samples[i];
    const auto bands = p.bands(i);
    std::vector<CredibleBand> deg_bands;
    for (const auto& b : bands) deg_bands.push_back(to_degrees(b, p.scaler));
    nlohmann::json normality = nlohmann::json::object();
    for (std::size_t k = 0; k < 2; ++k) {
      normality[kCoordinateNames[k]] =
          s.normality[k] ? nlohmann::json{{"K2", s.normality[k]->k2}, {"p", s.normality[k]->p_value}} : nlohmann::json();
    }
    samples.push_back({{"storm_id", s.storm_id},
                       {"cutoff", s.cutoff},
                       {"timestep", s.cutoff + p.pred_len - 1},
                       {"T", s.passes},
                       {"mu", s.mean},
                       {"sigma", s.sigma},
                       {"truth", s.truth},
                       {"bands", detail::bands_to_json(bands)},
                       {"degrees",
                        {{"mu", detail::to_degrees(p.scaler, s.mean)},
                         {"sigma", Prediction{s.sigma[0] * p.scaler.range(kLat), s.sigma[1] * p.scaler.range(kLon)}},
                         {"truth", detail::to_degrees(p.scaler, s.truth)},
                         {"bands", detail::bands_to_json(deg_bands)}}},
                       {"normality", std::move(normality)}});
  }
  j["samples"] = std::move(samples);
  return j.dump() + "\n";
}

inline PredictionsArtifact predictions_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("predictions: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kPredictionsFormatVersion)
      throw VersionError("predictions format_version " + std::to_string(version) + " is not supported (want " +
                         std::to_string(kPredictionsFormatVersion) + ")");
    PredictionsArtifact p;
    p.split = j.at("split").get<std::string>();
    p.passes = j.at("passes").get<std::size_t>();
    p.levels = j.at("levels").get<std::vector<double>>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.p_input = j.at("p_input").get<double>();
    p.p_recurrent = j.at("p_recurrent").get<double>();
    p.pred_len = j.at("pred_len").get<std::size_t>();
    p.scaler = scaler_from_json(j.at("scaler"));
    for (const auto& s : j.at("samples")) {
      SamplePrediction sp;
      sp.storm_id = s.at("storm_id").get<std::string>();
      sp.cutoff = s.at("cutoff").get<std::size_t>();
      sp.passes = s.at("T").get<std::size_t>();
      sp.mean = s.at("mu").get<Prediction>();
      sp.sigma = s.at("sigma").get<Prediction>();
      sp.truth = s.at("truth").get<Prediction>();
      for (std::size_t k = 0; k < 2; ++k) {
        const auto& nj = s.at("normality").at(kCoordinateNames[k]);
        if (!nj.is_null()) {
          NormalityTest t;
          t.k2 = nj.at("K2").get<double>();
          t.p_value = nj.at("p").get<double>();
          sp.normality[k] = t;
        }
      }
      p.samples.push_back(std::move(sp));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed predictions: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Plot series

/// One CSV per coordinate:
/// `timestep,truth,mean,lo67,hi67,lo90,hi90,lo95,hi95,lo98,hi98,lo99,hi99` in degrees.
struct PlotSeries {
  std::string lat_csv;
  std::string lon_csv;
  std::size_t rows = 0;
};

inline PlotSeries export_plot(const PredictionsArtifact& p, std::string_view storm_id) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < p.samples.size(); ++i)
    if (p.samples[i].storm_id == storm_id) rows.push_back(i);
  if (rows.empty()) {
    std::vector<std::string> ids;
    for (const auto& s : p.samples)
      if (std::find(ids.begin(), ids.end(), s.storm_id) == ids.end()) ids.push_back(s.storm_id);
    std::string list;
    for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
    throw ValidationError("storm '" + std::string(storm_id) + "' not in predictions; available: " + list);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [&](std::size_t a, std::size_t b) { return p.samples[a].cutoff < p.samples[b].cutoff; });

  std::array<std::string, 2> csv;
  for (auto& c : csv) {
    c = "timestep,truth,mean";
    for (double level : kDefaultLevels) c += ",lo" + level_key(level) + ",hi" + level_key(level);
    c += "\n";
  }
  for (std::size_t i : rows) {
    const SamplePrediction& s = p.samples[i];
    PredictionEnsemble e;
    e.mean = s.mean;
    e.sigma = s.sigma;
    const Prediction truth = detail::to_degrees(p.scaler, s.truth);
    const Prediction mean = detail::to_degrees(p.scaler, s.mean);
    std::array<std::string, 2> line;
    for (std::size_t k = 0; k < 2; ++k)
      line[k] = std::to_string(s.cutoff + p.pred_len - 1) + "," + format_number(truth[k]) + "," + format_number(mean[k]);
    for (double level : kDefaultLevels) {
      const CredibleBand b = to_degrees(credible_band(e, level), p.scaler);
      for (std::size_t k = 0; k < 2; ++k) line[k] += "," + format_number(b.lower[k]) + "," + format_number(b.upper[k]);
    }
    for (std::size_t k = 0; k < 2; ++k) csv[k] += line[k] + "\n";
  }
  return {std::move(csv[0]), std::move(csv[1]), rows.size()};
}

}  // namespace stormcast
