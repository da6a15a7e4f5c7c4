// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: one PASS / FAIL / BLOCKED line per criterion.
//   tempograph_acceptance                 run every criterion
//   tempograph_acceptance --criterion 3   run one; exit 0 pass, 1 fail, 77 blocked

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempograph/analyzer.hpp"
#include "tempograph/dataset.hpp"
#include "tempograph/edgebank.hpp"
#include "tempograph/harness.hpp"
#include "tempograph/ldtgn.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/nn/grad_check.hpp"
#include "tempograph/nn/ops.hpp"
#include "tempograph/nn/optim.hpp"
#include "tempograph/runtime.hpp"
#include "tempograph/scheduler.hpp"
#include "tempograph/synthetic.hpp"
#include "tempograph/time_encoder.hpp"
#include "tempograph/trainer.hpp"

namespace tg = tempograph;
namespace nn = tempograph::nn;

namespace {

// ---- tolerances ----
constexpr double kRatioTol = 0.03;
constexpr double kUciAvgTol10 = 0.10;
constexpr double kUciAvgTol50 = 0.4;
constexpr double kOracleTol = 1e-9;
constexpr double kInvarianceTol = 1e-12;
constexpr double kGradTol = 1e-4;
constexpr double kThresholdRelTol = 0.10;
constexpr double kUciTransductiveAp = 95.0;
constexpr double kUciInductiveAp = 92.0;
constexpr double kUciFallbackMargin = 5.0;
constexpr double kEnronTarget = 98.10;
constexpr double kEnronTol = 3.0;
constexpr double kSpeedupRelTol = 0.25;
constexpr int kBenchRepeats = 3;
constexpr double kMetricTol = 1e-12;

enum class Status { Pass, Fail, Blocked };

struct Outcome {
  Status status;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- shared helpers ----

std::optional<tg::Dataset> find_dataset(std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (auto m = tg::locate_dataset(n)) return tg::load_dataset(*m);
  }
  return std::nullopt;
}

tg::EventStream synthetic(std::size_t events, std::size_t nodes, std::uint64_t seed,
                          std::size_t feature_dim = 0) {
  tg::SyntheticStreamConfig c;
  c.num_events = events;
  c.num_nodes = nodes;
  c.feature_dim = feature_dim;
  c.seed = seed;
  return tg::make_synthetic_stream(c);
}

std::vector<double> query_labels(std::span<const tg::Event> stream) {
  std::vector<double> y;
  for (const tg::Event& e : stream)
    if (!tg::is_update(e.kind)) y.push_back(e.label > 0 ? 1.0 : 0.0);
  return y;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double time_span(std::span<const tg::Event> events) {
  return std::max(1.0, events.back().timestamp - events.front().timestamp);
}

// ---- criterion 1: missing-update statistics on UCI / Wikipedia ----

Outcome missing_updates_reproduction() {
  auto uci = find_dataset({"uci", "UCI", "uci-msg"});
  if (!uci) return {Status::Blocked, "UCI not found under " + tg::data_root().string()};
  std::ostringstream os;
  bool ok = true;
  auto reports = tg::sweep(uci->stream.events, std::vector<std::size_t>{1, 10, 50}, 1);
  auto check = [&](const char* what, double got, double want, double tol) {
    const bool pass = std::abs(got - want) <= tol;
    ok = ok && pass;
    os << fmt(" %s=%.3f(want %.2f±%.2f)%s", what, got, want, tol, pass ? "" : "!");
  };
  ok = ok && reports[0].ratio_affected == 0.0 && reports[0].avg_missing_per_input == 0.0;
  os << fmt("uci bs1=(%g,%g)", reports[0].ratio_affected, reports[0].avg_missing_per_input);
  check("bs10.ratio", reports[1].ratio_affected, 0.70, kRatioTol);
  check("bs10.avg", reports[1].avg_missing_per_input, 0.95, kUciAvgTol10);
  check("bs50.ratio", reports[2].ratio_affected, 0.91, kRatioTol);
  check("bs50.avg", reports[2].avg_missing_per_input, 3.67, kUciAvgTol50);
  if (auto wiki = find_dataset({"wikipedia", "Wikipedia", "wiki"})) {
    auto w = tg::sweep(wiki->stream.events, std::vector<std::size_t>{10, 50}, 1);
    os << ";";
    check("wiki.bs10.ratio", w[0].ratio_affected, 0.23, kRatioTol);
    check("wiki.bs50.ratio", w[1].ratio_affected, 0.55, kRatioTol);
  } else {
    os << "; wikipedia not downloaded";
  }
  return {ok ? Status::Pass : Status::Fail, os.str()};
}

// ---- criterion 2: statistics non-decreasing in batch size ----

Outcome monotonicity() {
  const std::vector<std::size_t> sizes{1, 10, 25, 50, 100, 200};
  std::vector<std::pair<std::string, tg::EventStream>> streams;
  streams.emplace_back("synthetic:20000:500:0", synthetic(20000, 500, 0));
  streams.emplace_back("synthetic:20000:2000:1", synthetic(20000, 2000, 1));
  {
    tg::SyntheticStreamConfig c;
    c.num_events = 20000;
    c.num_nodes = 300;
    c.repeat_probability = 0.1;
    c.seed = 2;
    streams.emplace_back("synthetic-low-repeat", tg::make_synthetic_stream(c));
  }
  streams.emplace_back("star:5000:50", tg::make_star_stream(5000, 50));
  std::size_t real = 0;
  for (const char* name : {"uci", "wikipedia", "enron"}) {
    if (auto d = find_dataset({name})) {
      streams.emplace_back(name, std::move(d->stream));
      ++real;
    }
  }
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, s] : streams) {
    const auto r = tg::sweep(s.events, sizes, 1);
    bool mono = true;
    for (std::size_t i = 1; i < r.size(); ++i) {
      mono = mono && r[i].ratio_affected >= r[i - 1].ratio_affected &&
             r[i].avg_missing_per_input >= r[i - 1].avg_missing_per_input;
    }
    ok = ok && mono;
    os << name << (mono ? " ok" : " NOT monotone") << fmt("(r200=%.3f)", r.back().ratio_affected)
       << "; ";
  }
  os << (real == 0 ? "no real dataset on disk, synthetic streams only" : fmt("%zu real datasets", real));
  return {ok ? Status::Pass : Status::Fail, os.str()};
}

// ---- criterion 3: decoupled run equals the sequential oracle at m = 1 ----

Outcome oracle_equivalence() {
  const auto base = synthetic(5000, 300, 11, 4);
  const auto stream = tg::benchmark_stream(base.events, 3);
  const double span = time_span(base.events);
  std::vector<std::pair<std::string, std::unique_ptr<tg::LinkModel>>> models;
  models.emplace_back("edgebank:inf",
                      std::make_unique<tg::EdgeBankModel>(tg::EdgeBankRule{tg::EdgeBankVariant::Infinite, 0}));
  models.emplace_back("edgebank:th",
                      std::make_unique<tg::EdgeBankModel>(tg::EdgeBankRule{tg::EdgeBankVariant::Threshold, 1000}));
  tg::LdtgnConfig lc;
  lc.span = span;
  lc.seed = 5;
  models.emplace_back("ldtgn", std::make_unique<tg::Ldtgn>(lc, base.features));
  double worst = 0.0;
  std::ostringstream os;
  for (auto& [name, m] : models) {
    m->reset();
    const auto want = tg::sequential_oracle(*m, stream);
    for (std::size_t bs : {50u, 200u, 1000u}) {
      m->reset();
      const auto got = tg::run_stream(*m, stream, {.prediction_batch_size = bs, .memory_batch_size = 1});
      const double d = max_abs_diff(got, want);
      worst = std::max(worst, d);
      os << fmt("%s/bs%zu=%.1e ", name.c_str(), bs, d);
    }
  }
  os << fmt("max=%.2e (tol %.0e)", worst, kOracleTol);
  return {worst < kOracleTol ? Status::Pass : Status::Fail, os.str()};
}

// ---- criterion 4: prediction batch size does not change LDTGN-mem scores ----

Outcome prediction_batch_invariance() {
  const auto base = synthetic(5000, 300, 12);
  const auto stream = tg::benchmark_stream(base.events, 4);
  tg::LdtgnConfig lc;
  lc.variant = tg::LdtgnVariant::Mem;
  lc.seed = 6;
  tg::Ldtgn model(lc, base.features);
  std::vector<double> reference;
  double worst = 0.0;
  std::ostringstream os;
  for (std::size_t bs : {50u, 200u, 1000u}) {
    model.reset();
    const auto got = tg::run_stream(model, stream, {.prediction_batch_size = bs, .memory_batch_size = 50});
    if (reference.empty()) {
      reference = got;
      continue;
    }
    const double d = max_abs_diff(got, reference);
    worst = std::max(worst, d);
    os << fmt("bs%zu vs bs50: %.1e; ", bs, d);
  }
  os << fmt("%zu scores, max drift %.2e (tol %.0e)", reference.size(), worst, kInvarianceTol);
  return {worst < kInvarianceTol ? Status::Pass : Status::Fail, os.str()};
}

// ---- criterion 5: finite-difference gradient suite ----

struct GradSuite {
  std::mt19937_64 rng{2024};
  double worst = 0.0;
  std::string worst_name;
  std::vector<std::string> failures;

  nn::Matrix random(Eigen::Index r, Eigen::Index c, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    nn::Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    return m;
  }

  // Random linear functional of an op's output.
  nn::Var project(nn::Tape& t, nn::Var out, const nn::Matrix& weights) {
    return nn::mean(nn::mul(out, t.constant(weights)));
  }

  void check(const std::string& name, const std::function<nn::Var(nn::Tape&)>& fn, nn::ParamSet& ps) {
    const auto r = nn::grad_check(fn, ps);
    if (r.max_relative_error > worst) {
      worst = r.max_relative_error;
      worst_name = name;
    }
    if (!(r.max_relative_error < kGradTol)) failures.push_back(name);
  }

  // Single-output op check: params x_i feed `op`, result projected to a scalar.
  void op(const std::string& name, std::vector<nn::Matrix> inputs,
          const std::function<nn::Var(nn::Tape&, std::vector<nn::Var>&)>& f) {
    nn::ParamSet ps;
    for (std::size_t i = 0; i < inputs.size(); ++i) ps.add("x" + std::to_string(i), inputs[i]);
    nn::Matrix w;
    check(name,
          [&](nn::Tape& t) {
            std::vector<nn::Var> xs;
            for (std::size_t i = 0; i < ps.size(); ++i) xs.push_back(t.param(ps[i]));
            nn::Var out = f(t, xs);
            if (w.size() == 0) w = random(out.rows(), out.cols());
            return project(t, out, w);
          },
          ps);
  }
};

std::vector<tg::Event> labeled_small_stream(std::size_t updates, std::size_t nodes, std::uint64_t seed,
                                            std::size_t feature_dim, std::shared_ptr<tg::FeatureTable>& f) {
  auto base = synthetic(updates, nodes, seed, feature_dim);
  f = base.features;
  return tg::benchmark_stream(base.events, seed);
}

Outcome gradient_suite() {
  GradSuite g;
  const std::vector<std::size_t> seg{0, 2, 5, 6};
  const std::vector<std::uint32_t> idx{2, 0, 2, 1};
  g.op("linear", {g.random(4, 3), g.random(3, 5), g.random(1, 5)},
       [](nn::Tape&, auto& x) { return nn::linear(x[0], x[1], x[2]); });
  g.op("matmul", {g.random(4, 3), g.random(3, 2)}, [](nn::Tape&, auto& x) { return nn::matmul(x[0], x[1]); });
  g.op("add", {g.random(3, 4), g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::add(x[0], x[1]); });
  g.op("sub", {g.random(3, 4), g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::sub(x[0], x[1]); });
  g.op("mul", {g.random(3, 4), g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::mul(x[0], x[1]); });
  g.op("scale", {g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::scale(x[0], -2.5); });
  g.op("one_minus", {g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::one_minus(x[0]); });
  // Inputs stay clear of the kink at 0.
  g.op("relu", {g.random(3, 4, 0.05, 1.0), g.random(3, 4, -1.0, -0.05)},
       [](nn::Tape&, auto& x) { return nn::concat({nn::relu(x[0]), nn::relu(x[1])}); });
  g.op("leaky_relu", {g.random(3, 4, 0.05, 1.0), g.random(3, 4, -1.0, -0.05)},
       [](nn::Tape&, auto& x) { return nn::concat({nn::leaky_relu(x[0], 0.2), nn::leaky_relu(x[1], 0.2)}); });
  g.op("sigmoid", {g.random(3, 4, -3, 3)}, [](nn::Tape&, auto& x) { return nn::sigmoid(x[0]); });
  g.op("tanh", {g.random(3, 4, -2, 2)}, [](nn::Tape&, auto& x) { return nn::tanh(x[0]); });
  g.op("cosine", {g.random(3, 4, -3, 3)}, [](nn::Tape&, auto& x) { return nn::cosine(x[0]); });
  g.op("concat", {g.random(3, 2), g.random(3, 4)}, [](nn::Tape&, auto& x) { return nn::concat({x[0], x[1]}); });
  g.op("concat_rows", {g.random(2, 3), g.random(4, 3)},
       [](nn::Tape&, auto& x) { return nn::concat_rows(std::span<const nn::Var>(x)); });
  g.op("slice_cols", {g.random(3, 6)}, [](nn::Tape&, auto& x) { return nn::slice_cols(x[0], 1, 4); });
  g.op("gather_rows", {g.random(3, 4)}, [&](nn::Tape&, auto& x) { return nn::gather_rows(x[0], idx); });
  g.op("sum_rows", {g.random(5, 3)}, [](nn::Tape&, auto& x) { return nn::sum_rows(x[0]); });
  g.op("mean", {g.random(5, 3)}, [](nn::Tape&, auto& x) { return nn::mean(x[0]); });
  g.op("softmax_segments", {g.random(6, 1, -2, 2)}, [&](nn::Tape&, auto& x) { return nn::softmax(x[0], seg); });
  g.op("softmax", {g.random(5, 1, -2, 2)}, [](nn::Tape&, auto& x) { return nn::softmax(x[0]); });
  g.op("weighted_sum", {g.random(6, 3), g.random(6, 1, 0.1, 1.0)},
       [&](nn::Tape&, auto& x) { return nn::weighted_sum(x[0], x[1], seg); });
  {
    nn::ParamSet ps;
    ps.add("p", g.random(6, 1, 0.05, 0.95));
    const std::vector<double> y{1, 0, 0, 1, 1, 0};
    g.check("bce_loss", [&](nn::Tape& t) { return nn::bce_loss(t.param(ps[0]), y); }, ps);
  }
  // Composite building blocks.
  for (tg::TimeEncoderKind kind : {tg::TimeEncoderKind::MlpTde, tg::TimeEncoderKind::Time2Vec}) {
    nn::ParamSet ps;
    std::mt19937_64 rng(5);
    tg::TimeEncoder tde({kind, 6, 300.0}, ps, "tde", rng);
    if (kind == tg::TimeEncoderKind::Time2Vec)
      for (std::size_t i = 0; i < ps.size(); ++i) ps[i].value() = g.random(ps[i].value().rows(), ps[i].value().cols(), -0.5, 0.5);
    const std::vector<double> dts{0.5, 3.0, 77.0};
    g.check(kind == tg::TimeEncoderKind::Time2Vec ? "time2vec" : "mlp_tde",
            [&](nn::Tape& t) { return nn::mean(nn::sigmoid(tde.encode(t, dts))); }, ps);
  }
  {
    nn::ParamSet ps;
    std::mt19937_64 rng(8);
    tg::Gru gru(5, 4, ps, "gru", rng);
    const nn::Matrix m = g.random(3, 5), s = g.random(3, 4), w = g.random(3, 4);
    g.check("gru", [&](nn::Tape& t) { return g.project(t, gru.step(t.constant(m), t.constant(s)), w); }, ps);
  }
  // Full prediction pipelines at reduced dims, through the scheduler.
  for (tg::LdtgnVariant v : {tg::LdtgnVariant::Plain, tg::LdtgnVariant::Mem}) {
    std::shared_ptr<tg::FeatureTable> features;
    const auto stream = labeled_small_stream(30, 10, 21, v == tg::LdtgnVariant::Plain ? 2 : 0, features);
    const auto labels = query_labels(stream);
    tg::LdtgnConfig lc;
    lc.variant = v;
    lc.tde_dim = 4;
    lc.state_dim = 4;
    lc.embed_dim = 5;
    lc.merge_hidden = 6;
    lc.merge_mid = 4;
    lc.merge_low = 3;
    lc.k_recent = 3;
    lc.span = time_span(stream);
    lc.seed = 3;
    tg::Ldtgn model(lc, features);
    nn::ParamSet& ps = *model.params();
    for (std::size_t i = 0; i < ps.size(); ++i)
      ps[i].value() = g.random(ps[i].value().rows(), ps[i].value().cols(), -0.5, 0.5);
    const tg::DecoupledConfig sched{.prediction_batch_size = 100, .memory_batch_size = 4};
    g.check(v == tg::LdtgnVariant::Plain ? "ldtgn_pipeline" : "ldtgn_mem_pipeline",
            [&](nn::Tape& t) {
              model.reset();
              return nn::bce_loss(tg::run_batch(model, stream, sched, t), labels);
            },
            ps);
    model.end_batch();
  }
  {
    tg::LinearTimeModel m(tg::LinearVariant::NodeAware, 200.0);
    m.weights().value() = g.random(3, 1);
    std::shared_ptr<tg::FeatureTable> features;
    const auto stream = labeled_small_stream(40, 10, 22, 0, features);
    const auto labels = query_labels(stream);
    const tg::DecoupledConfig sched{.prediction_batch_size = 100, .memory_batch_size = 1};
    g.check("linear_pipeline",
            [&](nn::Tape& t) {
              m.reset();
              return nn::bce_loss(tg::run_batch(m, stream, sched, t), labels);
            },
            *m.params());
    m.end_batch();
  }
  std::string detail = fmt("worst relative error %.2e in %s (tol %.0e)", g.worst, g.worst_name.c_str(), kGradTol);
  for (const auto& f : g.failures) detail += "; failed " + f;
  return {g.failures.empty() ? Status::Pass : Status::Fail, detail};
}

// ---- criterion 6: linear model recovers a planted threshold ----

Outcome threshold_recovery() {
  bool ok = true;
  std::ostringstream os;
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    tg::PlantedThresholdConfig pc;
    pc.seed = seed;
    const auto stream = tg::make_planted_threshold_stream(pc);
    tg::LinearTimeModel model(tg::LinearVariant::EdgeOnly, pc.span);
    nn::Adam adam(nn::AdamOptions{.lr = 1e-2});
    const tg::DecoupledConfig sched{.prediction_batch_size = 200, .memory_batch_size = 1};
    for (int epoch = 0; epoch < 300; ++epoch) {
      model.reset();
      tg::train_epoch(model, stream.events, sched, adam);
    }
    const double w = model.weights().value()(0, 0);
    const double b = model.bias().value()(0, 0);
    const double boundary = w != 0.0 ? -b / w : INFINITY;
    const double rel = std::abs(boundary - pc.threshold) / pc.threshold;
    const bool pass = w < 0.0 && rel <= kThresholdRelTol;
    ok = ok && pass;
    os << fmt("seed %llu: w=%.2f b=%.2f boundary=%.4f (G=%.2f, rel err %.3f)%s; ",
              static_cast<unsigned long long>(seed), w, b, boundary, pc.threshold, rel, pass ? "" : " FAIL");
  }
  os << fmt("tol %.0f%%", 100 * kThresholdRelTol);
  return {ok ? Status::Pass : Status::Fail, os.str()};
}

// ---- criteria 7 and 8: end-to-end test AP ----

double mean_ap(const tg::ExperimentConfig& cfg, const tg::Dataset& d, bool inductive) {
  double sum = 0.0;
  for (std::uint64_t seed : cfg.seeds) sum += tg::run_experiment(cfg, d, seed, inductive).test_ap;
  return 100.0 * sum / static_cast<double>(cfg.seeds.size());
}

Outcome uci_end_to_end() {
  auto uci = find_dataset({"uci", "UCI", "uci-msg"});
  if (!uci) return {Status::Blocked, "UCI not found under " + tg::data_root().string()};
  tg::ExperimentConfig cfg;
  cfg.model = "ldtgn";
  const double trans = mean_ap(cfg, *uci, false);
  const double ind = mean_ap(cfg, *uci, true);
  std::string detail = fmt("ldtgn transductive %.2f (min %.1f), inductive %.2f (min %.1f)", trans,
                           kUciTransductiveAp, ind, kUciInductiveAp);
  if (trans >= kUciTransductiveAp && ind >= kUciInductiveAp) return {Status::Pass, detail};
  // Fallback gate: beat the best EdgeBank variant by a clear margin.
  const auto split = tg::chronological_split(uci->stream.events);
  const double window = tg::train_span(uci->stream.events, split, tg::SpanMode::TimeSpan) * 0.15 / 0.70;
  double best_eb = 0.0;
  for (const char* v : {"edgebank:inf", "edgebank:tw", "edgebank:th", "edgebank:re"}) {
    tg::ExperimentConfig eb;
    eb.model = v;
    if (std::string(v) == "edgebank:tw") eb.model_param = window;
    best_eb = std::max(best_eb, mean_ap(eb, *uci, false));
  }
  const bool pass = trans >= best_eb + kUciFallbackMargin;
  detail += fmt("; fallback: best edgebank %.2f, margin %.2f (min %.1f)", best_eb, trans - best_eb,
                kUciFallbackMargin);
  return {pass ? Status::Pass : Status::Fail, detail};
}

Outcome enron_end_to_end() {
  auto enron = find_dataset({"enron", "Enron"});
  if (!enron) return {Status::Blocked, "Enron not found under " + tg::data_root().string()};
  tg::ExperimentConfig cfg;
  cfg.model = "ldtgn";
  const double trans = mean_ap(cfg, *enron, false);
  return {std::abs(trans - kEnronTarget) <= kEnronTol ? Status::Pass : Status::Fail,
          fmt("ldtgn transductive %.2f (target %.2f±%.1f)", trans, kEnronTarget, kEnronTol)};
}

// ---- criterion 9: measured vs estimated speedup ----

Outcome throughput_speedup() {
  const auto base = synthetic(100000, 5000, 9);
  const auto stream = tg::benchmark_stream(base.events, 1);
  tg::LdtgnConfig lc;
  lc.variant = tg::LdtgnVariant::Mem;
  lc.span = time_span(base.events);
  tg::Ldtgn model(lc, base.features);
  const std::size_t warmup = 5000;
  // Best of interleaved repeats; single runs on a shared core vary by ~20%.
  tg::ThroughputResult r50, r400;
  for (int rep = 0; rep < kBenchRepeats; ++rep) {
    auto a = tg::bench_throughput(model, stream, {.prediction_batch_size = 50, .memory_batch_size = 50}, warmup);
    auto b = tg::bench_throughput(model, stream, {.prediction_batch_size = 400, .memory_batch_size = 50}, warmup);
    if (a.edges_per_sec > r50.edges_per_sec) r50 = a;
    if (b.edges_per_sec > r400.edges_per_sec) r400 = b;
  }
  const double estimate = tg::speedup_estimate(r50.timing, 50, 400);
  const double measured = r400.edges_per_sec / r50.edges_per_sec;
  const double rel = std::abs(measured - estimate) / estimate;
  const bool increasing = r400.edges_per_sec > r50.edges_per_sec;
  const bool pass = increasing && rel <= kSpeedupRelTol;
  return {pass ? Status::Pass : Status::Fail,
          fmt("bs50 %.0f edges/s (t_m %.2fs, t_p %.2fs), bs400 %.0f edges/s (t_m %.2fs, t_p %.2fs); "
              "measured speedup %.3f, estimate %.3f, rel err %.2f (tol %.2f)%s",
              r50.edges_per_sec, r50.timing.t_memory, r50.timing.t_prediction, r400.edges_per_sec,
              r400.timing.t_memory, r400.timing.t_prediction, measured, estimate, rel, kSpeedupRelTol,
              increasing ? "" : "; throughput not increasing")};
}

// ---- criterion 10: metrics vs definitional brute force ----

double brute_auc(const std::vector<double>& s, const std::vector<double>& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

double brute_ap(const std::vector<double>& s, const std::vector<double>& y) {
  double sum = 0, positives = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] == 0) continue;
    positives += 1;
    double above = 0, hits = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] >= s[i]) {
        above += 1;
        hits += y[j] != 0;
      }
    }
    sum += hits / above;
  }
  return sum / positives;
}

Outcome metric_oracles() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> size(2, 500);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    const double p = u(rng);
    const int levels = trial % 3 == 0 ? 5 : (trial % 3 == 1 ? 100 : 0);
    std::vector<double> s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = levels > 0 ? std::floor(u(rng) * levels) / levels : u(rng);
      y[i] = u(rng) < p;
    }
    y[0] = 1;
    y[1] = 0;
    worst = std::max(worst, std::abs(tg::auc_roc(s, y) - brute_auc(s, y)));
    worst = std::max(worst, std::abs(tg::average_precision(s, y) - brute_ap(s, y)));
  }
  return {worst <= kMetricTol ? Status::Pass : Status::Fail,
          fmt("1000 sets, max |diff| %.2e (tol %.0e)", worst, kMetricTol)};
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "missing-updates reproduction", missing_updates_reproduction},
    {2, "missing-updates monotonicity", monotonicity},
    {3, "decoupling oracle equivalence", oracle_equivalence},
    {4, "prediction-batch invariance", prediction_batch_invariance},
    {5, "gradient suite", gradient_suite},
    {6, "threshold recovery", threshold_recovery},
    {7, "UCI end-to-end", uci_end_to_end},
    {8, "Enron end-to-end", enron_end_to_end},
    {9, "throughput and speedup", throughput_speedup},
    {10, "metric oracles", metric_oracles},
};

}  // namespace

int main(int argc, char** argv) {
  tg::tune_allocator();
  CLI::App app{"tempograph acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool any_fail = false, any_blocked = false;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : (o.status == Status::Fail ? "FAIL" : "BLOCKED");
    std::printf("[%s] criterion %d (%s): %s\n", tag, c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
    any_fail = any_fail || o.status == Status::Fail;
    any_blocked = any_blocked || o.status == Status::Blocked;
  }
  if (any_fail) return 1;
  if (only != 0 && any_blocked) return 77;
  return 0;
}
