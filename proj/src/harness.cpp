// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "tempograph/edgebank.hpp"
#include "tempograph/errors.hpp"
#include "tempograph/ldtgn.hpp"
#include "tempograph/nn/checkpoint.hpp"
#include "tempograph/synthetic.hpp"

namespace tempograph {
namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = s.find(sep, begin);
    parts.emplace_back(s.substr(begin, end == std::string_view::npos ? s.npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

std::uint64_t parse_unsigned(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ':' || c == '/' || c == '\\' || c == ' ') c = '_';
  return s;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Field accessors that turn JSON type errors into SchemaError.
const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double number_field(const json& j, const char* key, double lo, double hi) {
  const json& v = field(j, key);
  if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!(x >= lo && x <= hi))
    throw SchemaError(std::string("field '") + key + "' out of range: " + v.dump());
  return x;
}

std::uint64_t unsigned_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw SchemaError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

// ---- models and configuration ----

ModelSpec parse_model_spec(std::string_view name) {
  const auto parts = split_on(name, ':');
  ModelSpec spec;
  spec.family = parts[0];
  if (parts.size() > 2) throw ConfigError("invalid model name '" + std::string(name) + "'");
  if (parts.size() == 2) spec.variant = parts[1];
  if (spec.family == "edgebank") {
    if (spec.variant.empty()) spec.variant = "inf";
    parse_edgebank_variant(spec.variant);
  } else if (spec.family == "linear") {
    if (spec.variant.empty()) spec.variant = "edge";
    if (spec.variant != "edge" && spec.variant != "node")
      throw ConfigError("linear model variant must be 'edge' or 'node'");
  } else if (spec.family == "ldtgn" || spec.family == "ldtgn_mem") {
    if (!spec.variant.empty()) throw ConfigError(spec.family + " takes no variant");
  } else {
    throw ConfigError("unknown model '" + std::string(name) +
                      "' (expected edgebank:*, linear:*, ldtgn or ldtgn_mem)");
  }
  return spec;
}

DecoupledConfig ExperimentConfig::effective_schedule() const {
  DecoupledConfig s = schedule;
  if (!memory_batch_set) s.memory_batch_size = parse_model_spec(model).family == "ldtgn_mem" ? 50 : 1;
  return s;
}

std::vector<bool> ExperimentConfig::inductive_modes() const {
  if (mode == "transductive") return {false};
  if (mode == "inductive") return {true};
  if (mode == "both") return {false, true};
  throw ConfigError("mode must be transductive, inductive or both, got '" + mode + "'");
}

void ExperimentConfig::validate() const {
  parse_model_spec(model);
  effective_schedule().validate();
  inductive_modes();
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(new_node_fraction > 0.0 && new_node_fraction < 1.0))
    throw ConfigError("new_node_fraction must lie in (0, 1)");
  if (max_epochs == 0) throw ConfigError("max_epochs must be positive");
  if (!(lr > 0.0)) throw ConfigError("lr must be positive");
  if (schedule.hop != 1) throw UnsupportedError("the prediction module reads 1-hop neighborhoods only");
}

void apply_config_json(ExperimentConfig& cfg, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "dataset") cfg.dataset = v.get<std::string>();
      else if (key == "model") cfg.model = v.get<std::string>();
      else if (key == "model_param") cfg.model_param = v.get<double>();
      else if (key == "batch_size") cfg.schedule.prediction_batch_size = v.get<std::size_t>();
      else if (key == "memory_batch_size") {
        cfg.schedule.memory_batch_size = v.get<std::size_t>();
        cfg.memory_batch_set = true;
      } else if (key == "hop") cfg.schedule.hop = v.get<std::size_t>();
      else if (key == "k_recent") cfg.schedule.k_recent = v.get<std::size_t>();
      else if (key == "seeds") cfg.seeds = v.get<std::vector<std::uint64_t>>();
      else if (key == "mode") cfg.mode = v.get<std::string>();
      else if (key == "new_node_fraction") cfg.new_node_fraction = v.get<double>();
      else if (key == "max_epochs") cfg.max_epochs = v.get<std::size_t>();
      else if (key == "patience") cfg.patience = v.get<std::size_t>();
      else if (key == "lr") cfg.lr = v.get<double>();
      else if (key == "span_mode") {
        const auto m = v.get<std::string>();
        if (m == "span") cfg.span_mode = SpanMode::TimeSpan;
        else if (m == "events") cfg.span_mode = SpanMode::EventCount;
        else throw ConfigError("config: span_mode must be 'span' or 'events'");
      } else if (key == "tde_dim") cfg.tde_dim = v.get<std::size_t>();
      else if (key == "state_dim") cfg.state_dim = v.get<std::size_t>();
      else if (key == "embed_dim") cfg.embed_dim = v.get<std::size_t>();
      else if (key == "merge_hidden") cfg.merge_hidden = v.get<std::size_t>();
      else if (key == "output") cfg.output = v.get<std::string>();
      else if (key == "checkpoint_dir") cfg.checkpoint_dir = v.get<std::string>();
      else if (key == "epoch_log") cfg.epoch_log = v.get<std::string>();
      else throw ConfigError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg;
  apply_config_json(cfg, ss.str());
  return cfg;
}

Dataset load_dataset_spec(const std::string& spec) {
  if (spec.rfind("synthetic:", 0) == 0) {
    const auto parts = split_on(spec, ':');
    if (parts.size() < 3 || parts.size() > 4)
      throw ConfigError("synthetic dataset must be synthetic:<events>:<nodes>[:<seed>]");
    SyntheticStreamConfig sc;
    sc.num_events = parse_unsigned(parts[1], "event count");
    sc.num_nodes = parse_unsigned(parts[2], "node count");
    if (parts.size() == 4) sc.seed = parse_unsigned(parts[3], "seed");
    Dataset d;
    d.name = spec;
    d.stream = make_synthetic_stream(sc);
    d.original_ids.resize(d.stream.num_nodes);
    for (std::size_t i = 0; i < d.original_ids.size(); ++i)
      d.original_ids[i] = static_cast<std::int64_t>(i);
    return d;
  }
  const auto manifest = locate_dataset(spec);
  if (!manifest)
    throw DatasetNotFound("dataset '" + spec + "' not found (looked under " +
                          data_root().string() + "; set TEMPOGRAPH_DATA_DIR)");
  return load_dataset(*manifest);
}

double train_span(std::span<const Event> events, const DatasetSplit& split, SpanMode mode) {
  if (mode == SpanMode::EventCount)
    return std::max(1.0, static_cast<double>(split.train.size()));
  if (split.train.size() == 0) return 1.0;
  const double span =
      events[split.train.end - 1].timestamp - events[split.train.begin].timestamp;
  return span > 0.0 ? span : 1.0;
}

std::unique_ptr<LinkModel> make_model(const ExperimentConfig& cfg, const Dataset& data,
                                      const DatasetSplit& split, std::uint64_t seed) {
  const ModelSpec spec = parse_model_spec(cfg.model);
  if (spec.family == "edgebank") {
    EdgeBankRule rule;
    rule.variant = parse_edgebank_variant(spec.variant);
    switch (rule.variant) {
      case EdgeBankVariant::Infinite: break;
      case EdgeBankVariant::TimeWindow:
        if (!cfg.model_param) throw ConfigError("edgebank:tw needs --param <window length>");
        rule.param = *cfg.model_param;
        break;
      case EdgeBankVariant::Threshold: rule.param = cfg.model_param.value_or(1000.0); break;
      case EdgeBankVariant::Repeat: rule.param = cfg.model_param.value_or(2.0); break;
    }
    return std::make_unique<EdgeBankModel>(rule);
  }
  const double span = train_span(data.stream.events, split, cfg.span_mode);
  if (spec.family == "linear")
    return std::make_unique<LinearTimeModel>(
        spec.variant == "edge" ? LinearVariant::EdgeOnly : LinearVariant::NodeAware, span,
        data.stream.features);
  LdtgnConfig lc;
  lc.variant = spec.family == "ldtgn_mem" ? LdtgnVariant::Mem : LdtgnVariant::Plain;
  lc.tde_dim = cfg.tde_dim;
  lc.state_dim = cfg.state_dim;
  lc.embed_dim = cfg.embed_dim;
  lc.merge_hidden = cfg.merge_hidden;
  lc.k_recent = cfg.schedule.k_recent;
  lc.span = span;
  lc.seed = seed;
  return std::make_unique<Ldtgn>(lc, data.stream.features);
}

std::size_t count_params(const nn::ParamSet& params) { return params.count(); }

// ---- JSONL ----

std::string to_json_line(const ResultRow& r) {
  json j;
  j["model"] = r.model;
  j["dataset"] = r.dataset;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["test_ap"] = r.test_ap;
  j["test_auc"] = r.test_auc;
  j["param_count"] = r.param_count;
  j["edges_per_sec"] = r.edges_per_sec;
  j["wall_seconds"] = r.wall_seconds;
  return j.dump();
}

ResultRow parse_result_row(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("result row is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("result row must be a JSON object");
  ResultRow r;
  r.model = string_field(j, "model");
  r.dataset = string_field(j, "dataset");
  r.mode = string_field(j, "mode");
  if (r.mode != "transductive" && r.mode != "inductive")
    throw SchemaError("field 'mode' must be transductive or inductive");
  r.seed = unsigned_field(j, "seed");
  r.test_ap = number_field(j, "test_ap", 0.0, 1.0);
  r.test_auc = number_field(j, "test_auc", 0.0, 1.0);
  r.param_count = unsigned_field(j, "param_count");
  r.edges_per_sec = number_field(j, "edges_per_sec", 0.0, HUGE_VAL);
  r.wall_seconds = number_field(j, "wall_seconds", 0.0, HUGE_VAL);
  return r;
}

std::string to_json_line(const EpochMetrics& m) {
  json j;
  j["epoch"] = m.epoch;
  j["train_loss"] = m.train_loss;
  j["val_ap"] = m.val_ap;
  j["val_auc"] = m.val_auc;
  return j.dump();
}

std::string to_json_line(const BenchRow& r) {
  json j;
  j["model"] = r.model;
  j["dataset"] = r.dataset;
  j["bs"] = r.bs;
  j["mbs"] = r.mbs;
  j["edges_per_sec"] = r.edges_per_sec;
  j["t_memory"] = r.t_memory;
  j["t_prediction"] = r.t_prediction;
  return j.dump();
}

std::string to_json_line(const SpeedupRow& r) {
  json j;
  j["kind"] = "speedup";
  j["model"] = r.model;
  j["dataset"] = r.dataset;
  j["bs_old"] = r.bs_old;
  j["bs_new"] = r.bs_new;
  j["mbs"] = r.mbs;
  j["measured"] = r.measured;
  j["estimated"] = r.estimated;
  return j.dump();
}

void append_line(const std::filesystem::path& path, const std::string& line) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open " + path.string() + " for appending");
  out << line << '\n';
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetNotFound("results file " + path.string() + " not found");
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(parse_result_row(line));
    } catch (const SchemaError& e) {
      throw SchemaError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return rows;
}

// ---- reporting ----

std::string format_mean_std(std::span<const double> fractions) {
  if (fractions.empty()) return "n/a";
  double mean = 0.0;
  for (double f : fractions) mean += f;
  mean /= static_cast<double>(fractions.size());
  double var = 0.0;
  for (double f : fractions) var += (f - mean) * (f - mean);
  var /= static_cast<double>(fractions.size());
  return fixed(100.0 * mean, 2) + "±" + fixed(100.0 * std::sqrt(var), 2);
}

std::vector<ReportEntry> aggregate_results(std::span<const ResultRow> rows) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const ResultRow& r : rows) {
    Key k{r.dataset, r.mode, r.model};
    auto [it, fresh] = groups.try_emplace(k);
    if (fresh) order.push_back(k);
    it->second.push_back(&r);
  }
  std::vector<ReportEntry> out;
  for (const Key& k : order) {
    const auto& g = groups.at(k);
    ReportEntry e;
    std::tie(e.dataset, e.mode, e.model) = k;
    e.runs = g.size();
    std::vector<double> ap, auc;
    for (const ResultRow* r : g) {
      ap.push_back(r->test_ap);
      auc.push_back(r->test_auc);
      e.mean_params += static_cast<double>(r->param_count);
      e.mean_edges_per_sec += r->edges_per_sec;
    }
    e.mean_params /= static_cast<double>(g.size());
    e.mean_edges_per_sec /= static_cast<double>(g.size());
    e.ap = format_mean_std(ap);
    e.auc = format_mean_std(auc);
    out.push_back(std::move(e));
  }
  return out;
}

std::string render_report(std::span<const ReportEntry> entries) {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-20s %-13s %-16s %4s %-14s %-14s %10s %12s\n", "dataset", "mode",
                "model", "runs", "AP", "AUC", "params", "edges/s");
  os << buf;
  for (const ReportEntry& e : entries) {
    std::snprintf(buf, sizeof buf, "%-20s %-13s %-16s %4zu %-14s %-14s %10.0f %12.0f\n",
                  e.dataset.c_str(), e.mode.c_str(), e.model.c_str(), e.runs, e.ap.c_str(),
                  e.auc.c_str(), e.mean_params, e.mean_edges_per_sec);
    os << buf;
  }
  return os.str();
}

// ---- experiments ----

std::filesystem::path checkpoint_path(const ExperimentConfig& cfg, const std::string& dataset,
                                      bool inductive, std::uint64_t seed) {
  const std::string file = sanitize(cfg.model) + "__" + sanitize(dataset) + "__" +
                           (inductive ? "inductive" : "transductive") + "__seed" +
                           std::to_string(seed) + ".ckpt.json";
  return cfg.checkpoint_dir / file;
}

ResultRow run_experiment(const ExperimentConfig& cfg, const Dataset& data, std::uint64_t seed,
                         bool inductive, const RunHooks& hooks) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::span<const Event> events = data.stream.events;
  const DatasetSplit split =
      chronological_split(events, {0.70, 0.15, 0.15}, inductive, cfg.new_node_fraction, 0);
  std::unique_ptr<LinkModel> model = make_model(cfg, data, split, seed);
  const DecoupledConfig schedule = cfg.effective_schedule();

  nn::ParamSet* params = model->params();
  const bool learnable = params != nullptr && params->count() > 0;
  bool loaded = false;
  if (learnable && !cfg.checkpoint_dir.empty()) {
    const auto path = checkpoint_path(cfg, data.name, inductive, seed);
    if (std::filesystem::exists(path)) {
      try {
        nn::load_checkpoint(*params, path);
      } catch (const SchemaError& e) {
        throw CheckpointError("checkpoint " + path.string() + " does not fit " + cfg.model + ": " +
                              e.what());
      }
      loaded = true;
    } else if (hooks.require_checkpoint) {
      throw CheckpointError("checkpoint " + path.string() + " not found");
    }
  }
  if (!loaded && learnable) {
    TrainConfig tc;
    tc.schedule = schedule;
    tc.max_epochs = cfg.max_epochs;
    tc.patience = cfg.patience;
    tc.lr = cfg.lr;
    tc.seed = seed;
    tc.on_epoch = hooks.on_epoch;
    train(*model, events, split, tc);
    if (hooks.save_checkpoint && !cfg.checkpoint_dir.empty()) {
      const auto path = checkpoint_path(cfg, data.name, inductive, seed);
      std::filesystem::create_directories(path.parent_path());
      nn::save_checkpoint(*params, model->name(), path);
    }
  }

  const EvalResult eval = evaluate_test(*model, events, split, schedule, seed);
  ResultRow row;
  row.model = parse_model_spec(cfg.model).name();
  row.dataset = data.name;
  row.mode = inductive ? "inductive" : "transductive";
  row.seed = seed;
  row.test_ap = eval.ap;
  row.test_auc = eval.auc;
  row.param_count = model->param_count();
  row.edges_per_sec = eval.edges_per_sec;
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string analyzer_csv(const std::string& dataset, std::span<const MissingUpdateReport> reports,
                         bool header) {
  std::ostringstream os;
  if (header) os << "dataset,batch_size,hop,ratio,avg,inputs\n";
  for (const MissingUpdateReport& r : reports)
    os << dataset << ',' << r.batch_size << ',' << r.hop << ',' << fixed(r.ratio_affected, 6)
       << ',' << fixed(r.avg_missing_per_input, 6) << ',' << r.inputs_counted << '\n';
  return os.str();
}

std::vector<Event> benchmark_stream(std::span<const Event> events, std::uint64_t seed) {
  NegativeSampler sampler(destination_universe(events), seed);
  std::vector<Event> out;
  out.reserve(events.size() * 3);
  for (const Event& e : events) {
    if (e.kind == EventKind::AddEdge) {
      Event pos = e;
      pos.kind = EventKind::PredictEdge;
      pos.label = 1;
      out.push_back(pos);
      out.push_back(sampler.sample(e));
    }
    if (is_update(e.kind)) out.push_back(e);
  }
  return out;
}

}  // namespace tempograph
