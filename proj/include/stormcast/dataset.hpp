#pragma once

// Dataset artifact: the split storm ids, the scaler fitted on the training
// storms, the sample configuration and the samples of every split.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stormcast/errors.hpp"
#include "stormcast/storm_data.hpp"

namespace stormcast {

inline constexpr int kDatasetFormatVersion = 1;

struct StormInfo {
  std::string storm_id;
  std::string name;
  std::string split;
  std::size_t length = 0;
};

struct DatasetArtifact {
  SampleConfig config;
  std::uint64_t seed = 0;
  Scaler scaler;
  std::vector<StormInfo> storms;
  std::vector<Sample> train;
  std::vector<Sample> validation;
  std::vector<Sample> test;

  const std::vector<Sample>& split(std::string_view name) const {
    if (name == "train") return train;
    if (name == "validation") return validation;
    if (name == "test") return test;
    throw ValidationError("unknown split '" + std::string(name) + "' (want train, validation or test)");
  }
};

/// Split by storm, fit the scaler on the training storms and build samples.
/// `config.max_len == 0` means "longest storm in `tracks`".
inline DatasetArtifact build_dataset(std::span<const StormTrack> tracks, SampleConfig config, std::uint64_t seed) {
  for (const auto& t : tracks) validate_track(t);
  if (config.max_len == 0) {
    for (const auto& t : tracks) config.max_len = std::max(config.max_len, t.size());
  }
  config.validate();

  const SplitDataset split = shuffle_split(tracks, seed);
  std::vector<FeatureVector> train_features;
  for (const auto& t : split.train) {
    const auto f = derive_features(t);
    train_features.insert(train_features.end(), f.begin(), f.end());
  }

  DatasetArtifact out;
  out.config = config;
  out.seed = seed;
  out.scaler = fit_minmax(train_features);
  auto fill = [&](const std::vector<StormTrack>& storms, const char* name, std::vector<Sample>& dest) {
    for (const auto& t : storms) {
      out.storms.push_back({t.storm_id, t.name, name, t.size()});
      auto samples = build_samples(derive_features(t), out.scaler, config, t.storm_id);
      std::move(samples.begin(), samples.end(), std::back_inserter(dest));
    }
  };
  fill(split.train, "train", out.train);
  fill(split.validation, "validation", out.validation);
  fill(split.test, "test", out.test);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json scaler_to_json(const Scaler& s) { return {{"min", s.min}, {"max", s.max}}; }

inline Scaler scaler_from_json(const nlohmann::json& j) {
  Scaler s;
  s.min = j.at("min").get<FeatureVector>();
  s.max = j.at("max").get<FeatureVector>();
  for (std::size_t i = 0; i < kNumFeatures; ++i)
    if (!(s.min[i] <= s.max[i])) throw ValidationError("scaler min exceeds max for feature " + std::to_string(i));
  return s;
}

inline nlohmann::json sample_to_json(const Sample& s) {
  // Only the real rows are stored; the pad rows above them are zero by construction.
  nlohmann::json rows = nlohmann::json::array();
  const auto first = s.input.rows() - static_cast<Eigen::Index>(s.mask_len);
  for (Eigen::Index r = first; r < s.input.rows(); ++r) {
    FeatureVector row{};
    for (std::size_t j = 0; j < kNumFeatures; ++j) row[j] = s.input(r, static_cast<Eigen::Index>(j));
    rows.push_back(row);
  }
  return {{"storm_id", s.storm_id}, {"cutoff", s.cutoff}, {"mask_len", s.mask_len}, {"label", s.label},
          {"rows", std::move(rows)}};
}

inline Sample sample_from_json(const nlohmann::json& j, std::size_t input_len) {
  Sample s;
  s.storm_id = j.at("storm_id").get<std::string>();
  s.cutoff = j.at("cutoff").get<std::size_t>();
  s.mask_len = j.at("mask_len").get<std::size_t>();
  s.label = j.at("label").get<std::array<double, 2>>();
  const auto& rows = j.at("rows");
  if (rows.size() != s.mask_len || s.mask_len > input_len) throw ParseError("sample row count disagrees with mask_len");
  s.input = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(input_len), kNumFeatures);
  const auto first = input_len - s.mask_len;
  for (std::size_t r = 0; r < s.mask_len; ++r) {
    const auto row = rows[r].get<FeatureVector>();
    for (std::size_t c = 0; c < kNumFeatures; ++c)
      s.input(static_cast<Eigen::Index>(first + r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return s;
}

inline std::string dataset_to_json(const DatasetArtifact& d) {
  nlohmann::json j;
  j["format_version"] = kDatasetFormatVersion;
  j["sample_config"] = {{"min_start", d.config.min_start},
                        {"pred_len", d.config.pred_len},
                        {"max_len", d.config.max_len},
                        {"input_len", d.config.input_len()}};
  j["seed"] = d.seed;
  j["scaler"] = scaler_to_json(d.scaler);
  nlohmann::json splits = {{"train", nlohmann::json::array()},
                           {"validation", nlohmann::json::array()},
                           {"test", nlohmann::json::array()}};
  nlohmann::json storms = nlohmann::json::array();
  for (const auto& s : d.storms) {
    splits[s.split].push_back(s.storm_id);
    storms.push_back({{"storm_id", s.storm_id}, {"name", s.name}, {"split", s.split}, {"length", s.length}});
  }
  j["splits"] = std::move(splits);
  j["storms"] = std::move(storms);
  nlohmann::json samples;
  for (const char* name : {"train", "validation", "test"}) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : d.split(name)) arr.push_back(sample_to_json(s));
    samples[name] = std::move(arr);
  }
  j["samples"] = std::move(samples);
  return j.dump() + "\n";
}

inline DatasetArtifact dataset_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kDatasetFormatVersion)
      throw VersionError("dataset format_version " + std::to_string(version) + " is not supported (want " +
                         std::to_string(kDatasetFormatVersion) + ")");
    DatasetArtifact d;
    const auto& sc = j.at("sample_config");
    d.config.min_start = sc.at("min_start").get<std::size_t>();
    d.config.pred_len = sc.at("pred_len").get<std::size_t>();
    d.config.max_len = sc.at("max_len").get<std::size_t>();
    d.config.validate();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.scaler = scaler_from_json(j.at("scaler"));
    for (const auto& s : j.at("storms"))
      d.storms.push_back({s.at("storm_id").get<std::string>(), s.at("name").get<std::string>(),
                          s.at("split").get<std::string>(), s.at("length").get<std::size_t>()});
    const std::size_t input_len = d.config.input_len();
    for (const auto& s : j.at("samples").at("train")) d.train.push_back(sample_from_json(s, input_len));
    for (const auto& s : j.at("samples").at("validation")) d.validation.push_back(sample_from_json(s, input_len));
    for (const auto& s : j.at("samples").at("test")) d.test.push_back(sample_from_json(s, input_len));
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed dataset: ") + e.what());
  }
}

}  // namespace stormcast
