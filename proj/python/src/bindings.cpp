// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tempograph/analyzer.hpp"
#include "tempograph/dataset.hpp"
#include "tempograph/errors.hpp"
#include "tempograph/event.hpp"
#include "tempograph/harness.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/scheduler.hpp"
#include "tempograph/split.hpp"
#include "tempograph/synthetic.hpp"
#include "tempograph/time_encoder.hpp"

namespace py = pybind11;
namespace tg = tempograph;

namespace {

void register_errors(py::module_& m) {
  auto base = py::register_exception<tg::Error>(m, "Error", PyExc_RuntimeError);
  auto parse = py::register_exception<tg::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<tg::OrderingError>(m, "OrderingError", parse.ptr());
  py::register_exception<tg::SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<tg::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<tg::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<tg::ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<tg::MetricError>(m, "MetricError", base.ptr());
  py::register_exception<tg::UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<tg::DatasetNotFound>(m, "DatasetNotFound", base.ptr());
  py::register_exception<tg::CheckpointError>(m, "CheckpointError", base.ptr());
}

py::dict timing_dict(const tg::TimingBreakdown& t) {
  py::dict d;
  d["t_memory"] = t.t_memory;
  d["t_prediction"] = t.t_prediction;
  d["events_processed"] = t.events_processed;
  return d;
}

py::dict bench(const std::string& model, const std::string& dataset, std::size_t batch_size,
               std::optional<std::size_t> memory_batch_size, std::size_t warmup,
               std::optional<double> model_param) {
  tg::ExperimentConfig cfg;
  cfg.dataset = dataset;
  cfg.model = model;
  cfg.model_param = model_param;
  cfg.schedule.prediction_batch_size = batch_size;
  if (memory_batch_size) {
    cfg.schedule.memory_batch_size = *memory_batch_size;
    cfg.memory_batch_set = true;
  }
  const tg::Dataset data = tg::load_dataset_spec(dataset);
  const tg::DatasetSplit split = tg::chronological_split(data.stream.events);
  const std::vector<tg::Event> stream = tg::benchmark_stream(data.stream.events, 0);
  auto m = tg::make_model(cfg, data, split, 0);
  tg::ThroughputResult r;
  {
    py::gil_scoped_release release;
    r = tg::bench_throughput(*m, stream, cfg.effective_schedule(), warmup);
  }
  py::dict d = timing_dict(r.timing);
  d["model"] = tg::parse_model_spec(model).name();
  d["edges_per_sec"] = r.edges_per_sec;
  d["wall_seconds"] = r.wall_seconds;
  d["param_count"] = m->params() == nullptr ? 0 : tg::count_params(*m->params());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continuous-time dynamic graph link prediction";
  register_errors(m);

  py::enum_<tg::EventKind>(m, "EventKind")
      .value("AddEdge", tg::EventKind::AddEdge)
      .value("RemoveEdge", tg::EventKind::RemoveEdge)
      .value("AddNode", tg::EventKind::AddNode)
      .value("RemoveNode", tg::EventKind::RemoveNode)
      .value("PredictEdge", tg::EventKind::PredictEdge);

  py::class_<tg::Event>(m, "Event")
      .def(py::init<>())
      .def_readwrite("kind", &tg::Event::kind)
      .def_readwrite("src", &tg::Event::src)
      .def_readwrite("dst", &tg::Event::dst)
      .def_readwrite("timestamp", &tg::Event::timestamp)
      .def_readwrite("seq", &tg::Event::seq)
      .def_readwrite("label", &tg::Event::label)
      .def("__eq__", [](const tg::Event& a, const tg::Event& b) { return a == b; })
      .def("__repr__", [](const tg::Event& e) {
        return "Event(" + std::string(tg::to_string(e.kind)) + ", " + std::to_string(e.src) + ", " +
               std::to_string(e.dst) + ", t=" + std::to_string(e.timestamp) + ")";
      });

  py::class_<tg::EventStream>(m, "EventStream")
      .def(py::init<>())
      .def_readonly("events", &tg::EventStream::events)
      .def_readonly("num_nodes", &tg::EventStream::num_nodes)
      .def_property_readonly("feature_dim", &tg::EventStream::feature_dim)
      .def("__len__", &tg::EventStream::size)
      .def(
          "add_edge",
          [](tg::EventStream& s, tg::NodeId src, tg::NodeId dst, tg::Time t,
             const std::vector<double>& feats) { s.add_edge(src, dst, t, feats); },
          py::arg("src"), py::arg("dst"), py::arg("t"), py::arg("features") = std::vector<double>{})
      .def("features", [](const tg::EventStream& s, std::size_t i) {
        const auto row = s.features->row(s.events.at(i).feature_row);
        return std::vector<double>(row.begin(), row.end());
      });

  py::class_<tg::Dataset>(m, "Dataset")
      .def_readonly("name", &tg::Dataset::name)
      .def_readonly("stream", &tg::Dataset::stream)
      .def_readonly("original_ids", &tg::Dataset::original_ids)
      .def_readonly("bipartite", &tg::Dataset::bipartite);

  m.def("load_dataset", &tg::load_dataset_spec, py::arg("spec"),
        "Loads 'synthetic:<events>:<nodes>[:<seed>]', a dataset name or a file path.");
  m.def("data_root", &tg::data_root);

  m.def(
      "synthetic_stream",
      [](std::size_t num_events, std::size_t num_nodes, std::size_t feature_dim, std::uint64_t seed) {
        tg::SyntheticStreamConfig c;
        c.num_events = num_events;
        c.num_nodes = num_nodes;
        c.feature_dim = feature_dim;
        c.seed = seed;
        return tg::make_synthetic_stream(c);
      },
      py::arg("num_events") = 10000, py::arg("num_nodes") = 200, py::arg("feature_dim") = 0,
      py::arg("seed") = 0);
  m.def("star_stream", &tg::make_star_stream, py::arg("num_events"), py::arg("num_leaves"));

  py::class_<tg::MissingUpdateReport>(m, "MissingUpdateReport")
      .def_readonly("batch_size", &tg::MissingUpdateReport::batch_size)
      .def_readonly("hop", &tg::MissingUpdateReport::hop)
      .def_readonly("ratio_affected", &tg::MissingUpdateReport::ratio_affected)
      .def_readonly("avg_missing_per_input", &tg::MissingUpdateReport::avg_missing_per_input)
      .def_readonly("inputs_counted", &tg::MissingUpdateReport::inputs_counted);
  m.def(
      "count_missing_updates",
      [](const tg::EventStream& s, std::size_t batch_size, std::size_t hop) {
        return tg::count_missing_updates(s.events, batch_size, hop);
      },
      py::arg("stream"), py::arg("batch_size"), py::arg("hop") = 1);
  m.def(
      "sweep",
      [](const tg::EventStream& s, const std::vector<std::size_t>& sizes, std::size_t hop) {
        return tg::sweep(s.events, sizes, hop);
      },
      py::arg("stream"), py::arg("batch_sizes"), py::arg("hop") = 1);

  py::class_<tg::IndexRange>(m, "IndexRange")
      .def_readonly("begin", &tg::IndexRange::begin)
      .def_readonly("end", &tg::IndexRange::end)
      .def("__len__", &tg::IndexRange::size);
  py::class_<tg::DatasetSplit>(m, "DatasetSplit")
      .def_readonly("train", &tg::DatasetSplit::train)
      .def_readonly("val", &tg::DatasetSplit::val)
      .def_readonly("test", &tg::DatasetSplit::test)
      .def_readonly("train_events", &tg::DatasetSplit::train_events)
      .def_readonly("val_events", &tg::DatasetSplit::val_events)
      .def_readonly("test_events", &tg::DatasetSplit::test_events)
      .def_readonly("new_node_set", &tg::DatasetSplit::new_node_set)
      .def_readonly("inductive", &tg::DatasetSplit::inductive);
  m.def(
      "chronological_split",
      [](const tg::EventStream& s, std::array<double, 3> fractions, bool inductive,
         double new_node_fraction, std::uint64_t seed) {
        return tg::chronological_split(s.events, fractions, inductive, new_node_fraction, seed);
      },
      py::arg("stream"), py::arg("fractions") = std::array<double, 3>{0.70, 0.15, 0.15},
      py::arg("inductive") = false, py::arg("new_node_fraction") = 0.1, py::arg("seed") = 0);

  m.def(
      "average_precision",
      [](const std::vector<double>& s, const std::vector<double>& y) {
        return tg::average_precision(s, y);
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "auc_roc",
      [](const std::vector<double>& s, const std::vector<double>& y) { return tg::auc_roc(s, y); },
      py::arg("scores"), py::arg("labels"));
  m.def("normalize_time", &tg::normalize_time, py::arg("dt"), py::arg("span"));

  py::class_<tg::DecoupledConfig>(m, "DecoupledConfig")
      .def(py::init<>())
      .def_readwrite("prediction_batch_size", &tg::DecoupledConfig::prediction_batch_size)
      .def_readwrite("memory_batch_size", &tg::DecoupledConfig::memory_batch_size)
      .def_readwrite("hop", &tg::DecoupledConfig::hop)
      .def_readwrite("k_recent", &tg::DecoupledConfig::k_recent)
      .def("validate", &tg::DecoupledConfig::validate);
  py::class_<tg::TimingBreakdown>(m, "TimingBreakdown")
      .def(py::init([](double t_memory, double t_prediction) {
             tg::TimingBreakdown t;
             t.t_memory = t_memory;
             t.t_prediction = t_prediction;
             return t;
           }),
           py::arg("t_memory"), py::arg("t_prediction"))
      .def_readwrite("t_memory", &tg::TimingBreakdown::t_memory)
      .def_readwrite("t_prediction", &tg::TimingBreakdown::t_prediction)
      .def_readwrite("events_processed", &tg::TimingBreakdown::events_processed);
  m.def("speedup_estimate", &tg::speedup_estimate, py::arg("timing"), py::arg("bs_old"),
        py::arg("bs_new"));

  py::class_<tg::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("dataset", &tg::ExperimentConfig::dataset)
      .def_readwrite("model", &tg::ExperimentConfig::model)
      .def_readwrite("model_param", &tg::ExperimentConfig::model_param)
      .def_readwrite("schedule", &tg::ExperimentConfig::schedule)
      .def_readwrite("memory_batch_set", &tg::ExperimentConfig::memory_batch_set)
      .def_readwrite("seeds", &tg::ExperimentConfig::seeds)
      .def_readwrite("mode", &tg::ExperimentConfig::mode)
      .def_readwrite("new_node_fraction", &tg::ExperimentConfig::new_node_fraction)
      .def_readwrite("max_epochs", &tg::ExperimentConfig::max_epochs)
      .def_readwrite("patience", &tg::ExperimentConfig::patience)
      .def_readwrite("lr", &tg::ExperimentConfig::lr)
      .def_readwrite("output", &tg::ExperimentConfig::output)
      .def_readwrite("checkpoint_dir", &tg::ExperimentConfig::checkpoint_dir)
      .def("effective_schedule", &tg::ExperimentConfig::effective_schedule)
      .def("validate", &tg::ExperimentConfig::validate)
      .def("apply_json", [](tg::ExperimentConfig& c, const std::string& text) {
        tg::apply_config_json(c, text);
      });
  m.def("load_experiment_config", &tg::load_experiment_config, py::arg("path"));

  py::class_<tg::ResultRow>(m, "ResultRow")
      .def_readonly("model", &tg::ResultRow::model)
      .def_readonly("dataset", &tg::ResultRow::dataset)
      .def_readonly("mode", &tg::ResultRow::mode)
      .def_readonly("seed", &tg::ResultRow::seed)
      .def_readonly("test_ap", &tg::ResultRow::test_ap)
      .def_readonly("test_auc", &tg::ResultRow::test_auc)
      .def_readonly("param_count", &tg::ResultRow::param_count)
      .def_readonly("edges_per_sec", &tg::ResultRow::edges_per_sec)
      .def_readonly("wall_seconds", &tg::ResultRow::wall_seconds)
      .def("to_json", [](const tg::ResultRow& r) { return tg::to_json_line(r); });
  m.def("parse_result_row", &tg::parse_result_row, py::arg("line"));
  m.def("read_results", &tg::read_results, py::arg("path"));

  m.def(
      "run_experiment",
      [](const tg::ExperimentConfig& cfg, std::uint64_t seed, bool inductive) {
        const tg::Dataset data = tg::load_dataset_spec(cfg.dataset);
        py::gil_scoped_release release;
        return tg::run_experiment(cfg, data, seed, inductive);
      },
      py::arg("config"), py::arg("seed") = 0, py::arg("inductive") = false);
  m.def("bench", &bench, py::arg("model"), py::arg("dataset"), py::arg("batch_size") = 200,
        py::arg("memory_batch_size") = std::nullopt, py::arg("warmup") = 0,
        py::arg("model_param") = std::nullopt,
        "Inference throughput of one model over a labeled stream of the whole dataset.");
  m.def(
      "count_params",
      [](const tg::ExperimentConfig& cfg) {
        const tg::Dataset data = tg::load_dataset_spec(cfg.dataset);
        const tg::DatasetSplit split = tg::chronological_split(data.stream.events);
        auto model = tg::make_model(cfg, data, split, 0);
        return model->params() == nullptr ? std::size_t{0} : tg::count_params(*model->params());
      },
      py::arg("config"));
  m.def(
      "format_mean_std",
      [](const std::vector<double>& fractions) { return tg::format_mean_std(fractions); },
      py::arg("fractions"));
}
