// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_HARNESS_HPP
#define TEMPOGRAPH_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/analyzer.hpp"
#include "tempograph/dataset.hpp"
#include "tempograph/model.hpp"
#include "tempograph/nn/tensor.hpp"
#include "tempograph/scheduler.hpp"
#include "tempograph/split.hpp"
#include "tempograph/trainer.hpp"

namespace tempograph {

/// Parsed model name: "edgebank:{inf|tw|th|re}", "linear:{edge|node}",
/// "ldtgn" or "ldtgn_mem".
struct ModelSpec {
  std::string family;
  std::string variant;

  std::string name() const { return variant.empty() ? family : family + ":" + variant; }
  bool learnable() const { return family != "edgebank"; }
};

/// Throws ConfigError for unknown names.
ModelSpec parse_model_spec(std::string_view name);

enum class SpanMode { TimeSpan, EventCount };

struct ExperimentConfig {
  std::string dataset;
  std::string model = "ldtgn";
  /// Window, threshold or repeat count for EdgeBank rules.
  std::optional<double> model_param;
  DecoupledConfig schedule;
  /// False until a memory batch size is given; then the model default applies.
  bool memory_batch_set = false;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  /// "transductive", "inductive" or "both".
  std::string mode = "both";
  double new_node_fraction = 0.1;
  std::size_t max_epochs = 100;
  std::size_t patience = 20;
  double lr = 1e-4;
  SpanMode span_mode = SpanMode::TimeSpan;
  std::size_t tde_dim = 100;
  std::size_t state_dim = 100;
  std::size_t embed_dim = 100;
  std::size_t merge_hidden = 100;
  std::filesystem::path output = "results.jsonl";
  std::filesystem::path checkpoint_dir;
  std::filesystem::path epoch_log;

  /// Memory batch size after applying the model default (1, or 50 for ldtgn_mem).
  DecoupledConfig effective_schedule() const;
  std::vector<bool> inductive_modes() const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Reads a JSON object whose keys mirror the ExperimentConfig fields.
/// Unknown keys raise ConfigError.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
/// Applies one JSON config document onto `cfg`.
void apply_config_json(ExperimentConfig& cfg, std::string_view json_text);

/// "synthetic:<events>:<nodes>[:<seed>]", a dataset name under the data root,
/// or a file path. Throws DatasetNotFound when nothing matches.
Dataset load_dataset_spec(const std::string& spec);

/// Normalization span for the MLP time encoder, from the train partition.
double train_span(std::span<const Event> events, const DatasetSplit& split, SpanMode mode);

std::unique_ptr<LinkModel> make_model(const ExperimentConfig& cfg, const Dataset& data,
                                      const DatasetSplit& split, std::uint64_t seed);

std::size_t count_params(const nn::ParamSet& params);

/// One line of the results file.
struct ResultRow {
  std::string model, dataset, mode;
  std::uint64_t seed = 0;
  double test_ap = 0.0;
  double test_auc = 0.0;
  std::size_t param_count = 0;
  double edges_per_sec = 0.0;
  double wall_seconds = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

std::string to_json_line(const ResultRow& row);
/// Validates field presence, types and ranges; throws SchemaError.
ResultRow parse_result_row(std::string_view line);
std::string to_json_line(const EpochMetrics& m);

/// Appends one line; creates the file and its directory as needed.
void append_line(const std::filesystem::path& path, const std::string& line);
/// Reads every non-blank line; SchemaError names the bad line.
std::vector<ResultRow> read_results(const std::filesystem::path& path);

struct BenchRow {
  std::string model, dataset;
  std::size_t bs = 0, mbs = 0;
  double edges_per_sec = 0.0;
  double t_memory = 0.0, t_prediction = 0.0;
};
std::string to_json_line(const BenchRow& row);

struct SpeedupRow {
  std::string model, dataset;
  std::size_t bs_old = 0, bs_new = 0, mbs = 0;
  double measured = 0.0, estimated = 0.0;
};
std::string to_json_line(const SpeedupRow& row);

/// Percent with two decimals and population standard deviation: "97.00±0.00".
std::string format_mean_std(std::span<const double> fractions);

struct ReportEntry {
  std::string model, dataset, mode;
  std::size_t runs = 0;
  std::string ap, auc;
  double mean_params = 0.0;
  double mean_edges_per_sec = 0.0;
};

/// Groups rows by (dataset, mode, model) in first-appearance order.
std::vector<ReportEntry> aggregate_results(std::span<const ResultRow> rows);
/// Plain-text table with one line per entry.
std::string render_report(std::span<const ReportEntry> entries);

/// Trains (or loads from checkpoint_dir when a matching file exists) and
/// scores one seed in one mode.
struct RunHooks {
  std::function<void(const EpochMetrics&)> on_epoch;
  /// When set, a missing checkpoint raises CheckpointError instead of training.
  bool require_checkpoint = false;
  /// Write the trained parameters into checkpoint_dir.
  bool save_checkpoint = false;
};
ResultRow run_experiment(const ExperimentConfig& cfg, const Dataset& data, std::uint64_t seed,
                         bool inductive, const RunHooks& hooks = {});

std::filesystem::path checkpoint_path(const ExperimentConfig& cfg, const std::string& dataset,
                                      bool inductive, std::uint64_t seed);

/// CSV with header `dataset,batch_size,hop,ratio,avg,inputs`.
std::string analyzer_csv(const std::string& dataset, std::span<const MissingUpdateReport> reports,
                         bool header = true);

/// Stream of labeled queries and updates over a whole dataset, for benchmarks.
std::vector<Event> benchmark_stream(std::span<const Event> events, std::uint64_t seed);

}  // namespace tempograph

#endif  // TEMPOGRAPH_HARNESS_HPP
