// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

// tempograph: command-line front end for analysis, training, evaluation,
// benchmarking and reporting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempograph/analyzer.hpp"
#include "tempograph/errors.hpp"
#include "tempograph/harness.hpp"
#include "tempograph/runtime.hpp"
#include "tempograph/scheduler.hpp"

namespace tg = tempograph;
namespace fs = std::filesystem;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kDatasetMissing = 3,
  kCheckpointProblem = 4,
  kDataFormat = 5,
};

// Flags shared by train and evaluate; each one overrides the config file
// only when given.
struct ExperimentFlags {
  std::string config;
  std::optional<std::string> dataset, model, mode, checkpoint_dir, span_mode;
  std::optional<double> param, lr, new_node_fraction;
  std::optional<std::size_t> batch_size, memory_batch_size, hop, k_recent, epochs, patience;
  std::vector<std::uint64_t> seeds;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
    app->add_option("--dataset", dataset, "dataset name, path or synthetic:<events>:<nodes>[:<seed>]");
    app->add_option("--model", model, "edgebank:{inf|tw|th|re}, linear:{edge|node}, ldtgn, ldtgn_mem");
    app->add_option("--param", param, "EdgeBank window (tw), threshold (th) or count (re)");
    app->add_option("--mode", mode, "transductive, inductive or both");
    app->add_option("--seeds", seeds, "seed list")->delimiter(',');
    app->add_option("--batch-size", batch_size, "prediction batch size");
    app->add_option("--memory-batch-size", memory_batch_size, "memory batch size");
    app->add_option("--hop", hop, "neighborhood hops");
    app->add_option("--k-recent", k_recent, "recent neighbors per node");
    app->add_option("--epochs", epochs, "maximum epochs");
    app->add_option("--patience", patience, "early-stopping patience");
    app->add_option("--lr", lr, "Adam learning rate");
    app->add_option("--new-node-fraction", new_node_fraction, "inductive reserve fraction");
    app->add_option("--span-mode", span_mode, "time normalization span: span or events");
    app->add_option("--checkpoint-dir", checkpoint_dir, "checkpoint directory");
  }

  tg::ExperimentConfig resolve() const {
    tg::ExperimentConfig cfg;
    if (!config.empty()) cfg = tg::load_experiment_config(config);
    if (dataset) cfg.dataset = *dataset;
    if (model) cfg.model = *model;
    if (param) cfg.model_param = *param;
    if (mode) cfg.mode = *mode;
    if (!seeds.empty()) cfg.seeds = seeds;
    if (batch_size) cfg.schedule.prediction_batch_size = *batch_size;
    if (memory_batch_size) {
      cfg.schedule.memory_batch_size = *memory_batch_size;
      cfg.memory_batch_set = true;
    }
    if (hop) cfg.schedule.hop = *hop;
    if (k_recent) cfg.schedule.k_recent = *k_recent;
    if (epochs) cfg.max_epochs = *epochs;
    if (patience) cfg.patience = *patience;
    if (lr) cfg.lr = *lr;
    if (new_node_fraction) cfg.new_node_fraction = *new_node_fraction;
    if (span_mode) {
      if (*span_mode == "span") cfg.span_mode = tg::SpanMode::TimeSpan;
      else if (*span_mode == "events") cfg.span_mode = tg::SpanMode::EventCount;
      else throw tg::ConfigError("--span-mode must be 'span' or 'events'");
    }
    if (checkpoint_dir) cfg.checkpoint_dir = *checkpoint_dir;
    if (cfg.dataset.empty()) throw tg::ConfigError("no dataset given (--dataset or config)");
    cfg.validate();
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw tg::Error("cannot write " + path.string());
  out << text;
}

int analyze_missing(const std::string& dataset, const std::vector<std::size_t>& sizes,
                    std::size_t hop, const std::string& out) {
  const tg::Dataset data = tg::load_dataset_spec(dataset);
  const auto reports = tg::sweep(data.stream.events, sizes, hop);
  const std::string csv = tg::analyzer_csv(data.name, reports);
  if (out.empty())
    std::cout << csv;
  else
    write_text(out, csv);
  return kOk;
}

int train_cmd(const ExperimentFlags& flags, const std::string& epoch_log) {
  tg::ExperimentConfig cfg = flags.resolve();
  if (cfg.checkpoint_dir.empty()) cfg.checkpoint_dir = "checkpoints";
  const tg::Dataset data = tg::load_dataset_spec(cfg.dataset);
  for (bool inductive : cfg.inductive_modes()) {
    for (std::uint64_t seed : cfg.seeds) {
      const fs::path ckpt = tg::checkpoint_path(cfg, data.name, inductive, seed);
      fs::path log = epoch_log.empty() ? fs::path(ckpt.string() + ".epochs.jsonl") : fs::path(epoch_log);
      if (epoch_log.empty() && fs::exists(log)) fs::remove(log);
      fs::remove(ckpt);
      tg::RunHooks hooks;
      hooks.save_checkpoint = true;
      hooks.on_epoch = [&](const tg::EpochMetrics& m) {
        tg::append_line(log, tg::to_json_line(m));
        std::fprintf(stderr, "[%s seed %llu] epoch %zu loss %.4f val_ap %.4f\n",
                     inductive ? "inductive" : "transductive",
                     static_cast<unsigned long long>(seed), m.epoch, m.train_loss, m.val_ap);
      };
      const tg::ResultRow row = tg::run_experiment(cfg, data, seed, inductive, hooks);
      std::printf("%s\n", tg::to_json_line(row).c_str());
    }
  }
  return kOk;
}

int evaluate_cmd(const ExperimentFlags& flags, const std::string& out, bool require_checkpoint) {
  tg::ExperimentConfig cfg = flags.resolve();
  if (!out.empty()) cfg.output = out;
  const tg::Dataset data = tg::load_dataset_spec(cfg.dataset);
  tg::RunHooks hooks;
  hooks.require_checkpoint = require_checkpoint;
  if (require_checkpoint && cfg.checkpoint_dir.empty())
    throw tg::ConfigError("--require-checkpoint needs --checkpoint-dir");
  for (bool inductive : cfg.inductive_modes()) {
    for (std::uint64_t seed : cfg.seeds) {
      const tg::ResultRow row = tg::run_experiment(cfg, data, seed, inductive, hooks);
      const std::string line = tg::to_json_line(row);
      tg::append_line(cfg.output, line);
      std::printf("%s\n", line.c_str());
    }
  }
  return kOk;
}

int bench_cmd(const ExperimentFlags& flags, const std::vector<std::string>& models,
              const std::vector<std::size_t>& sizes, std::size_t warmup, const std::string& out) {
  if (sizes.empty()) throw tg::ConfigError("bench needs --batch-sizes");
  tg::ExperimentConfig base = flags.resolve();
  const tg::Dataset data = tg::load_dataset_spec(base.dataset);
  const std::vector<tg::Event> stream = tg::benchmark_stream(data.stream.events, 0);
  const tg::DatasetSplit split = tg::chronological_split(data.stream.events);
  std::vector<std::string> names = models;
  if (names.empty()) names.push_back(base.model);

  for (const std::string& name : names) {
    tg::ExperimentConfig cfg = base;
    cfg.model = name;
    auto model = tg::make_model(cfg, data, split, cfg.seeds.front());
    std::optional<tg::TimingBreakdown> baseline;
    std::optional<double> baseline_eps;
    for (std::size_t bs : sizes) {
      tg::DecoupledConfig sched = cfg.effective_schedule();
      sched.prediction_batch_size = bs;
      const tg::ThroughputResult r = tg::bench_throughput(*model, stream, sched, warmup);
      tg::BenchRow row{tg::parse_model_spec(name).name(), data.name, bs, sched.memory_batch_size,
                       r.edges_per_sec, r.timing.t_memory, r.timing.t_prediction};
      const std::string line = tg::to_json_line(row);
      if (!out.empty()) tg::append_line(out, line);
      std::printf("%s\n", line.c_str());
      if (!baseline) {
        baseline = r.timing;
        baseline_eps = r.edges_per_sec;
        continue;
      }
      tg::SpeedupRow sp{row.model, data.name, sizes.front(), bs, sched.memory_batch_size,
                        r.edges_per_sec / *baseline_eps,
                        tg::speedup_estimate(*baseline, sizes.front(), bs)};
      const std::string sline = tg::to_json_line(sp);
      if (!out.empty()) tg::append_line(out, sline);
      std::printf("%s\n", sline.c_str());
    }
  }
  return kOk;
}

int report_cmd(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<tg::ResultRow> rows;
  for (const std::string& in : inputs) {
    auto part = tg::read_results(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const auto entries = tg::aggregate_results(rows);
  const std::string table = tg::render_report(entries);
  if (out.empty())
    std::cout << table;
  else
    write_text(out, table);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  tg::tune_allocator();
  CLI::App app{"Streaming temporal-graph link prediction with decoupled memory batching"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze-missing", "count missing updates per batch size");
  std::string an_dataset, an_out;
  std::vector<std::size_t> an_sizes{1, 10, 25, 50, 100, 200};
  std::size_t an_hop = 1;
  analyze->add_option("--dataset", an_dataset, "dataset name, path or synthetic spec")->required();
  analyze->add_option("--batch-sizes", an_sizes, "comma-separated batch sizes")->delimiter(',');
  analyze->add_option("--hop", an_hop, "1 or 2");
  analyze->add_option("--out", an_out, "CSV output (stdout when omitted)");

  auto* train = app.add_subcommand("train", "train models and write checkpoints and epoch logs");
  ExperimentFlags train_flags;
  train_flags.attach(train);
  std::string epoch_log;
  train->add_option("--epoch-log", epoch_log, "append epoch metrics here instead of per-run files");

  auto* evaluate = app.add_subcommand("evaluate", "score the test split for every seed and mode");
  ExperimentFlags eval_flags;
  eval_flags.attach(evaluate);
  std::string eval_out;
  bool require_checkpoint = false;
  evaluate->add_option("--out", eval_out, "results JSONL (appended)");
  evaluate->add_flag("--require-checkpoint", require_checkpoint,
                     "fail instead of training when a checkpoint is missing");

  auto* bench = app.add_subcommand("bench", "measure throughput across prediction batch sizes");
  ExperimentFlags bench_flags;
  bench_flags.attach(bench);
  std::vector<std::string> bench_models;
  std::vector<std::size_t> bench_sizes{50, 400};
  std::size_t warmup = 0;
  std::string bench_out;
  bench->add_option("--models", bench_models, "models to compare")->delimiter(',');
  bench->add_option("--batch-sizes", bench_sizes, "prediction batch sizes; the first is the baseline")
      ->delimiter(',');
  bench->add_option("--warmup", warmup, "untimed leading updates");
  bench->add_option("--out", bench_out, "JSONL output (appended)");

  auto* report = app.add_subcommand("report", "aggregate result rows into mean±std tables");
  std::vector<std::string> report_in;
  std::string report_out;
  report->add_option("--in", report_in, "results JSONL files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "table output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return analyze_missing(an_dataset, an_sizes, an_hop, an_out);
    if (*train) return train_cmd(train_flags, epoch_log);
    if (*evaluate) return evaluate_cmd(eval_flags, eval_out, require_checkpoint);
    if (*bench) return bench_cmd(bench_flags, bench_models, bench_sizes, warmup, bench_out);
    if (*report) return report_cmd(report_in, report_out);
  } catch (const tg::DatasetNotFound& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kDatasetMissing;
  } catch (const tg::CheckpointError& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kCheckpointProblem;
  } catch (const tg::ParseError& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kDataFormat;
  } catch (const tg::SchemaError& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kDataFormat;
  } catch (const tg::ConfigError& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kUsage;
  } catch (const tg::UnsupportedError& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tempograph: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
