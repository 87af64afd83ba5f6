#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>

#include "stormcast/dataset.hpp"
#include "stormcast/model_io.hpp"
#include "stormcast/predictions.hpp"
#include "stormcast/synthetic.hpp"

using Catch::Approx;
using namespace stormcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("stormcast_artifacts_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const DatasetArtifact& small_dataset() {
  static const DatasetArtifact d = [] {
    const auto tracks = synthetic::recurving_tracks(12, 3, 12, 18);
    return build_dataset(tracks, SampleConfig{4, 1, 0}, 5);
  }();
  return d;
}

void require_same(const ModelParams& a, const ModelParams& b) {
  for_each_block_pair(a, b, [](const auto& x, const auto& y) {
    REQUIRE(x.rows() == y.rows());
    REQUIRE(x.cols() == y.cols());
    REQUIRE((x.array() == y.array()).all());
  });
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("model files round trip bit for bit", "[artifacts][model]") {
  TempDir dir;
  const auto& d = small_dataset();
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.seed = 17;
  const TrainResult r = train(d.train, d.validation, cfg);
  const ModelFile m{r.params, d.scaler, cfg};
  const fs::path path = dir.path / "model.json";
  save_model(path, m);
  const ModelFile back = load_model(path);
  require_same(m.params, back.params);
  REQUIRE(back.scaler.min == m.scaler.min);
  REQUIRE(back.scaler.max == m.scaler.max);
  REQUIRE(back.config.seed == 17);
  REQUIRE(back.config.p_input == cfg.p_input);
  REQUIRE(back.config.p_recurrent == cfg.p_recurrent);
  REQUIRE(back.config.epochs == 2);
  REQUIRE(model_to_json(back) == model_to_json(m));
}

TEST_CASE("model files with a different architecture load", "[artifacts][model]") {
  const Architecture arch{2, 3, 2, 2};
  const ModelFile m{init_params(3, arch), Scaler{}, TrainConfig{}};
  const ModelFile back = model_from_json(model_to_json(m));
  REQUIRE(back.params.architecture().n_h1 == 3);
  require_same(m.params, back.params);
}

TEST_CASE("model loading errors", "[artifacts][model]") {
  const ModelFile m{init_params(1), Scaler{}, TrainConfig{}};
  const std::string text = model_to_json(m);

  SECTION("unknown format version") {
    auto j = nlohmann::json::parse(text);
    j["format_version"] = 999;
    REQUIRE_THROWS_AS(model_from_json(j.dump()), VersionError);
  }
  SECTION("truncated file") {
    REQUIRE_THROWS_AS(model_from_json(text.substr(0, text.size() / 2)), ParseError);
  }
  SECTION("missing block") {
    auto j = nlohmann::json::parse(text);
    j["parameters"].erase("output_bias");
    REQUIRE_THROWS_AS(model_from_json(j.dump()), ParseError);
  }
  SECTION("wrong block shape") {
    auto j = nlohmann::json::parse(text);
    j["parameters"]["output_bias"]["shape"] = {3, 1};
    REQUIRE_THROWS_AS(model_from_json(j.dump()), ParseError);
  }
  SECTION("missing file") {
    REQUIRE_THROWS(load_model("/nonexistent/stormcast/model.json"));
  }
}

TEST_CASE("a failed save leaves no partial file", "[artifacts][model]") {
  TempDir dir;
  const fs::path target = dir.path / "missing_dir" / "model.json";
  const ModelFile m{init_params(1), Scaler{}, TrainConfig{}};
  REQUIRE_THROWS(save_model(target, m));
  REQUIRE_FALSE(fs::exists(target));
}

TEST_CASE("history csv", "[artifacts][model]") {
  const TrainHistory h{{0.5, 0.25}, {0.125, 0.0625}};
  REQUIRE(history_to_csv(h) == "epoch,train_mse,val_mse\n1,0.5,0.25\n2,0.125,0.0625\n");
}

TEST_CASE("dataset artifacts round trip", "[artifacts][dataset]") {
  const auto& d = small_dataset();
  const std::string text = dataset_to_json(d);
  const DatasetArtifact back = dataset_from_json(text);
  REQUIRE(dataset_to_json(back) == text);
  REQUIRE(back.config.input_len() == d.config.input_len());
  REQUIRE(back.storms.size() == 12);
  for (const char* name : {"train", "validation", "test"}) {
    const auto& a = d.split(name);
    const auto& b = back.split(name);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].storm_id == b[i].storm_id);
      REQUIRE(a[i].cutoff == b[i].cutoff);
      REQUIRE(a[i].mask_len == b[i].mask_len);
      REQUIRE(a[i].label == b[i].label);
      REQUIRE((a[i].input.array() == b[i].input.array()).all());
    }
  }
  REQUIRE_THROWS_AS(d.split("holdout"), ValidationError);

  auto j = nlohmann::json::parse(text);
  j["format_version"] = 999;
  REQUIRE_THROWS_AS(dataset_from_json(j.dump()), VersionError);
  REQUIRE_THROWS_AS(dataset_from_json(text.substr(0, 100)), ParseError);
}

TEST_CASE("dataset splits partition the storms", "[artifacts][dataset]") {
  const auto& d = small_dataset();
  std::size_t train = 0, val = 0, test = 0;
  for (const auto& s : d.storms) {
    train += s.split == "train";
    val += s.split == "validation";
    test += s.split == "test";
  }
  REQUIRE(test == 3);
  REQUIRE(val == 3);
  REQUIRE(train == 6);
  for (const auto& s : d.test)
    for (const auto& t : d.train) REQUIRE(s.storm_id != t.storm_id);
}

TEST_CASE("predictions artifacts", "[artifacts][predictions]") {
  const auto& d = small_dataset();
  const ModelParams params = init_params(8);
  const auto p = predict_split(params, d.scaler, d.test, "test", 30, {99, 67, 90, 95, 98, 95}, 4, 0.2, 0.1, 1);
  REQUIRE(p.levels == std::vector<double>{67, 90, 95, 98, 99});
  REQUIRE(p.samples.size() == d.test.size());

  SECTION("round trip") {
    const std::string text = predictions_to_json(p);
    const auto back = predictions_from_json(text);
    REQUIRE(predictions_to_json(back) == text);
    REQUIRE(back.samples.size() == p.samples.size());
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
      REQUIRE(back.samples[i].mean == p.samples[i].mean);
      REQUIRE(back.samples[i].sigma == p.samples[i].sigma);
      REQUIRE(back.samples[i].truth == p.samples[i].truth);
      REQUIRE(back.samples[i].normality[0].has_value() == p.samples[i].normality[0].has_value());
    }
  }
  SECTION("deterministic") {
    const auto again = predict_split(params, d.scaler, d.test, "test", 30, {67, 90, 95, 98, 99}, 4, 0.2, 0.1, 1);
    REQUIRE(predictions_to_json(again) == predictions_to_json(p));
  }
  SECTION("degree bands in the file follow the scaler") {
    const auto j = nlohmann::json::parse(predictions_to_json(p));
    const auto& s0 = j["samples"][0];
    const double lo = s0["bands"]["95"]["lat"][0].get<double>();
    const double lo_deg = s0["degrees"]["bands"]["95"]["lat"][0].get<double>();
    REQUIRE(lo_deg == Approx(d.scaler.denormalize(kLat, lo)).margin(1e-9));
    REQUIRE(s0["timestep"].get<std::size_t>() == s0["cutoff"].get<std::size_t>());
  }
  SECTION("coverage csv") {
    const CoverageReport r = evaluate_predictions(p);
    const std::string csv = coverage_to_csv(r);
    REQUIRE(csv.rfind("coordinate,level,percent,n\n", 0) == 0);
    REQUIRE(count_lines(csv) == 11);
    REQUIRE(csv.find("lat,67,") != std::string::npos);
    REQUIRE(csv.find("lon,99,") != std::string::npos);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t l = 1; l < r.levels.size(); ++l) REQUIRE(r.percent[c][l - 1] <= r.percent[c][l]);
  }
  SECTION("bad levels") {
    REQUIRE_THROWS_AS(predict_split(params, d.scaler, d.test, "test", 30, {}, 4, 0.2, 0.1, 1), ValidationError);
    REQUIRE_THROWS_AS(predict_split(params, d.scaler, d.test, "test", 30, {100}, 4, 0.2, 0.1, 1), ValidationError);
  }
  SECTION("unknown version") {
    auto j = nlohmann::json::parse(predictions_to_json(p));
    j["format_version"] = 999;
    REQUIRE_THROWS_AS(predictions_from_json(j.dump()), VersionError);
  }
}

TEST_CASE("plot export", "[artifacts][plot]") {
  const auto& d = small_dataset();
  const auto p = predict_split(init_params(9), d.scaler, d.test, "test", 20, {67, 90, 95, 98, 99}, 2, 0.2, 0.1, 1);
  const std::string id = p.samples.front().storm_id;
  std::size_t expected = 0;
  for (const auto& s : p.samples) expected += s.storm_id == id;

  const PlotSeries series = export_plot(p, id);
  REQUIRE(series.rows == expected);
  for (const std::string* csv : {&series.lat_csv, &series.lon_csv}) {
    REQUIRE(count_lines(*csv) == expected + 1);
    std::istringstream in(*csv);
    std::string line;
    std::getline(in, line);
    REQUIRE(line == "timestep,truth,mean,lo67,hi67,lo90,hi90,lo95,hi95,lo98,hi98,lo99,hi99");
    while (std::getline(in, line)) {
      std::vector<double> v;
      std::istringstream fields(line);
      std::string f;
      while (std::getline(fields, f, ',')) v.push_back(std::stod(f));
      REQUIRE(v.size() == 13);
      // bands widen with level around the mean
      for (std::size_t k = 3; k + 2 < v.size(); k += 2) {
        REQUIRE(v[k + 2] <= v[k]);
        REQUIRE(v[k + 3] >= v[k + 1]);
      }
      REQUIRE(v[3] <= v[2]);
      REQUIRE(v[4] >= v[2]);
    }
  }
  REQUIRE_THROWS_AS(export_plot(p, "NOPE"), ValidationError);
}

TEST_CASE("plot export with zero spread collapses the bands", "[artifacts][plot]") {
  const auto& d = small_dataset();
  const auto p = predict_split(init_params(9), d.scaler, d.test, "test", 5, {95}, 2, 0.0, 0.0, 1);
  const PlotSeries series = export_plot(p, p.samples.front().storm_id);
  std::istringstream in(series.lat_csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::vector<std::string> v;
  std::istringstream fields(line);
  std::string f;
  while (std::getline(fields, f, ',')) v.push_back(f);
  for (std::size_t k = 3; k < v.size(); ++k) REQUIRE(v[k] == v[2]);
}
