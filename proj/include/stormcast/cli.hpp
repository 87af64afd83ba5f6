#pragma once

// Command-line front end: ingest -> train -> predict -> evaluate -> export-plot.
//
// Exit codes: 0 success, 1 validation/data error (one line on stderr), 2 usage error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stormcast/dataset.hpp"
#include "stormcast/errors.hpp"
#include "stormcast/file_io.hpp"
#include "stormcast/model_io.hpp"
#include "stormcast/predictions.hpp"
#include "stormcast/storm_data.hpp"
#include "stormcast/trainer.hpp"

namespace stormcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct IngestArgs {
  std::string input, out;
  std::size_t min_start = 4, pred_len = 1, max_len = 0;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  std::string dataset, out, history;
  double dropout = 0.2, recurrent_dropout = 0.1, lr = 0.001;
  std::size_t epochs = 200, batch = 64;
  std::uint64_t seed = 0;
  bool verbose = false;
};

struct PredictArgs {
  std::string model, dataset, split = "test", out;
  std::size_t passes = 100;
  std::vector<double> levels{67, 90, 95, 98, 99};
  std::uint64_t seed = 0;
  double dropout = -1.0, recurrent_dropout = -1.0;  // negative: use the training rates
};

struct EvaluateArgs {
  std::string predictions, out;
};

struct ExportArgs {
  std::string predictions, storm, out_prefix;
};

inline void run_ingest(const IngestArgs& a, std::ostream& out) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + a.input + "'");
  const auto tracks = parse_track_csv(in);
  const DatasetArtifact d = build_dataset(tracks, SampleConfig{a.min_start, a.pred_len, a.max_len}, a.seed);
  write_file_atomic(a.out, dataset_to_json(d));
  out << "ingested " << tracks.size() << " storms: " << d.train.size() << " train / " << d.validation.size()
      << " validation / " << d.test.size() << " test samples, input length " << d.config.input_len() << "\n";
}

inline void run_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const DatasetArtifact d = dataset_from_json(read_file(a.dataset));
  TrainConfig config;
  config.epochs = a.epochs;
  config.batch_size = a.batch;
  config.learning_rate = a.lr;
  config.p_input = a.dropout;
  config.p_recurrent = a.recurrent_dropout;
  config.seed = a.seed;
  EpochCallback progress;
  if (a.verbose) {
    progress = [&](std::size_t epoch, const EpochLosses& l) {
      err << "epoch " << epoch << " train_mse " << l.train_mse << " val_mse " << l.val_mse << "\n";
    };
  }
  const TrainResult r = train(d.train, d.validation, config, Architecture{}, progress);
  std::filesystem::path history = a.history;
  if (history.empty()) history = std::filesystem::path(a.out).parent_path() / "history.csv";
  save_model(a.out, {r.params, d.scaler, config});
  write_file_atomic(history, history_to_csv(r.history));
  out << "trained " << config.epochs << " epochs";
  if (!r.history.empty()) out << ", final val_mse " << r.history.back().val_mse;
  out << "\n";
}

inline void run_predict(const PredictArgs& a, std::ostream& out) {
  const ModelFile m = load_model(a.model);
  const DatasetArtifact d = dataset_from_json(read_file(a.dataset));
  const double p_in = a.dropout >= 0.0 ? a.dropout : m.config.p_input;
  const double p_rec = a.recurrent_dropout >= 0.0 ? a.recurrent_dropout : m.config.p_recurrent;
  check_dropout_probability(p_in, "input");
  check_dropout_probability(p_rec, "recurrent");
  const auto& samples = d.split(a.split);
  if (samples.empty()) throw ValidationError("split '" + a.split + "' has no samples");
  const PredictionsArtifact p = predict_split(m.params, d.scaler, samples, a.split, a.passes, a.levels, a.seed, p_in,
                                              p_rec, d.config.pred_len);
  write_file_atomic(a.out, predictions_to_json(p));
  out << "predicted " << p.samples.size() << " samples x " << a.passes << " passes\n";
}

inline void run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const PredictionsArtifact p = predictions_from_json(read_file(a.predictions));
  if (p.samples.empty()) throw ValidationError("predictions file has no samples");
  const CoverageReport r = evaluate_predictions(p);
  const std::string csv = coverage_to_csv(r);
  write_file_atomic(a.out, csv);
  out << csv;
}

inline void run_export(const ExportArgs& a, std::ostream& out) {
  const PredictionsArtifact p = predictions_from_json(read_file(a.predictions));
  const PlotSeries s = export_plot(p, a.storm);
  write_file_atomic(a.out_prefix + "_lat.csv", s.lat_csv);
  write_file_atomic(a.out_prefix + "_lon.csv", s.lon_csv);
  out << "wrote " << s.rows << " rows to " << a.out_prefix << "_{lat,lon}.csv\n";
}

}  // namespace detail

/// Parses and runs one subcommand. `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Storm track forecasting with Monte Carlo dropout credible intervals", "stormcast"};
  app.require_subcommand(1);

  detail::IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a track CSV into a split, normalized sample dataset");
  ingest_cmd->add_option("--input", ingest.input, "Track CSV")->required();
  ingest_cmd->add_option("--out", ingest.out, "Dataset JSON to write")->required();
  ingest_cmd->add_option("--min-start", ingest.min_start, "Observed fixes before the first prediction")
      ->capture_default_str()->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--pred-length", ingest.pred_len, "Forecast horizon in 6-hour steps")
      ->capture_default_str()->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--max-len", ingest.max_len, "Padded storm length (0 = longest storm)")->capture_default_str();
  ingest_cmd->add_option("--seed", ingest.seed, "Shuffle seed")->required();

  detail::TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train the LSTM and write the model and history.csv");
  train_cmd->add_option("--dataset", tr.dataset, "Dataset JSON")->required();
  train_cmd->add_option("--out", tr.out, "Model JSON to write")->required();
  train_cmd->add_option("--history", tr.history, "History CSV (default: history.csv next to the model)");
  train_cmd->add_option("--dropout", tr.dropout, "Input-connection dropout rate")->capture_default_str();
  train_cmd->add_option("--recurrent-dropout", tr.recurrent_dropout, "Recurrent dropout rate")->capture_default_str();
  train_cmd->add_option("--epochs", tr.epochs)->capture_default_str();
  train_cmd->add_option("--batch", tr.batch)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
  train_cmd->add_option("--seed", tr.seed, "Initialization and training seed")->required();
  train_cmd->add_flag("--verbose", tr.verbose, "Print per-epoch losses to stderr");

  detail::PredictArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Monte Carlo dropout ensembles and credible bands for a split");
  predict_cmd->add_option("--model", pr.model)->required();
  predict_cmd->add_option("--dataset", pr.dataset)->required();
  predict_cmd->add_option("--split", pr.split)->capture_default_str()->check(
      CLI::IsMember({"train", "validation", "test"}));
  predict_cmd->add_option("--passes", pr.passes, "Stochastic forward passes per sample")
      ->capture_default_str()->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  predict_cmd->add_option("--levels", pr.levels, "Comma list of credible levels in percent")
      ->delimiter(',')->capture_default_str();
  predict_cmd->add_option("--seed", pr.seed)->required();
  predict_cmd->add_option("--dropout", pr.dropout, "Override the model's input dropout rate");
  predict_cmd->add_option("--recurrent-dropout", pr.recurrent_dropout, "Override the model's recurrent dropout rate");
  predict_cmd->add_option("--out", pr.out)->required();

  detail::EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Interval coverage per coordinate and level");
  evaluate_cmd->add_option("--predictions", ev.predictions)->required();
  evaluate_cmd->add_option("--out", ev.out, "Coverage CSV to write")->required();

  detail::ExportArgs ex;
  auto* export_cmd = app.add_subcommand("export-plot", "Per-timestep truth/mean/band series for one storm");
  export_cmd->add_option("--predictions", ex.predictions)->required();
  export_cmd->add_option("--storm", ex.storm, "Storm id")->required();
  export_cmd->add_option("--out-prefix", ex.out_prefix, "Writes <prefix>_lat.csv and <prefix>_lon.csv")->required();

  std::vector<const char*> argv{"stormcast"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << " (see --help)\n";
    return kExitUsage;
  }

  try {
    if (*ingest_cmd) detail::run_ingest(ingest, out);
    else if (*train_cmd) detail::run_train(tr, out, err);
    else if (*predict_cmd) detail::run_predict(pr, out);
    else if (*evaluate_cmd) detail::run_evaluate(ev, out);
    else if (*export_cmd) detail::run_export(ex, out);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    err << "error: " << msg << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace stormcast::cli
