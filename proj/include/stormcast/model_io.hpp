#pragma once

// Model file: architecture, every parameter block as a row-major array with an
// explicit shape, the training configuration and the scaler. Doubles are
// written in shortest round-trip form, so load(save(x)) is bit-exact.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "stormcast/dataset.hpp"
#include "stormcast/errors.hpp"
#include "stormcast/file_io.hpp"
#include "stormcast/lstm.hpp"
#include "stormcast/trainer.hpp"

namespace stormcast {

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  ModelParams params;
  Scaler scaler;
  TrainConfig config;
};

namespace detail {

template <typename Dense>
nlohmann::json block_to_json(const Dense& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

template <typename Dense>
void block_from_json(const nlohmann::json& j, Dense& m, const char* name) {
  const auto shape = j.at("shape").get<std::array<Eigen::Index, 2>>();
  if (shape[0] != m.rows() || shape[1] != m.cols())
    throw ParseError(std::string("block ") + name + " has shape [" + std::to_string(shape[0]) + ", " +
                     std::to_string(shape[1]) + "], architecture wants [" + std::to_string(m.rows()) + ", " +
                     std::to_string(m.cols()) + "]");
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != m.size())
    throw ParseError(std::string("block ") + name + " has the wrong number of entries");
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[k++].template get<double>();
}

}  // namespace detail

inline nlohmann::json train_config_to_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},       {"batch_size", c.batch_size}, {"learning_rate", c.learning_rate},
          {"beta1", c.beta1},         {"beta2", c.beta2},           {"epsilon", c.epsilon},
          {"p_input", c.p_input},     {"p_recurrent", c.p_recurrent}, {"seed", c.seed}};
}

inline TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<std::size_t>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.p_input = j.at("p_input").get<double>();
  c.p_recurrent = j.at("p_recurrent").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

inline std::string model_to_json(const ModelFile& m) {
  const Architecture a = m.params.architecture();
  nlohmann::json j;
  j["format_version"] = kModelFormatVersion;
  j["architecture"] = {{"n_x", a.n_x}, {"n_h1", a.n_h1}, {"n_h2", a.n_h2}, {"n_y", a.n_y}, {"gate_order", "ifgo"}};
  nlohmann::json blocks = nlohmann::json::object();
  for_each_block(m.params, [&](const char* name, const auto& block) { blocks[name] = detail::block_to_json(block); });
  j["parameters"] = std::move(blocks);
  j["training"] = train_config_to_json(m.config);
  j["scaler"] = scaler_to_json(m.scaler);
  return j.dump() + "\n";
}

/// Throws ParseError on malformed or truncated text and VersionError on a format mismatch.
inline ModelFile model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw VersionError("model format_version " + std::to_string(version) + " is not supported (want " +
                         std::to_string(kModelFormatVersion) + ")");
    const auto& aj = j.at("architecture");
    const Architecture a{aj.at("n_x").get<std::size_t>(), aj.at("n_h1").get<std::size_t>(),
                         aj.at("n_h2").get<std::size_t>(), aj.at("n_y").get<std::size_t>()};
    if (a.n_y != 2) throw ParseError("model: n_y must be 2 (latitude, longitude)");
    ModelFile m{ModelParams::zeros(a), scaler_from_json(j.at("scaler")), train_config_from_json(j.at("training"))};
    const auto& blocks = j.at("parameters");
    for_each_block(m.params, [&](const char* name, auto& block) { detail::block_from_json(blocks.at(name), block, name); });
    if (!all_finite(m.params)) throw ParseError("model: non-finite parameter");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model: ") + e.what());
  }
}

inline void save_model(const std::filesystem::path& path, const ModelFile& m) { write_file_atomic(path, model_to_json(m)); }

inline ModelFile load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

/// `epoch,train_mse,val_mse` with 1-based epochs.
inline std::string history_to_csv(const TrainHistory& h) {
  std::string out = "epoch,train_mse,val_mse\n";
  for (std::size_t e = 0; e < h.size(); ++e)
    out += std::to_string(e + 1) + "," + format_number(h[e].train_mse) + "," + format_number(h[e].val_mse) + "\n";
  return out;
}

}  // namespace stormcast
