// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/trainer.hpp"

#include <chrono>
#include <limits>

#include "tempograph/errors.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/nn/ops.hpp"

namespace tempograph {
namespace {

constexpr std::uint64_t kValSalt = 0x76616c6964617465ULL;
constexpr std::uint64_t kTestSalt = 0x7465737473706c74ULL;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + salt + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Event positive_query(const Event& e) {
  Event q = e;
  q.kind = EventKind::PredictEdge;
  q.label = 1;
  return q;
}

std::vector<double> labels_of(std::span<const Event> batch) {
  std::vector<double> labels;
  for (const Event& e : batch)
    if (!is_update(e.kind)) labels.push_back(e.label > 0 ? 1.0 : 0.0);
  return labels;
}

}  // namespace

std::vector<Event> labeled_stream(std::span<const Event> events, IndexRange range,
                                  std::span<const std::size_t> scored, const DatasetSplit& split,
                                  NegativeSampler& sampler) {
  std::vector<Event> out;
  out.reserve(range.size() + 2 * scored.size());
  std::size_t next = 0;
  while (next < scored.size() && scored[next] < range.begin) ++next;
  for (std::size_t i = range.begin; i < range.end && i < events.size(); ++i) {
    const Event& e = events[i];
    const bool is_scored = next < scored.size() && scored[next] == i;
    if (is_scored) ++next;
    if (is_scored && e.kind == EventKind::AddEdge) {
      out.push_back(positive_query(e));
      out.push_back(sampler.sample(e));
    }
    if (is_update(e.kind) && split.is_replayable(i)) out.push_back(e);
  }
  return out;
}

std::vector<Event> update_stream(std::span<const Event> events, IndexRange range,
                                 const DatasetSplit& split) {
  std::vector<Event> out;
  out.reserve(range.size());
  for (std::size_t i = range.begin; i < range.end && i < events.size(); ++i)
    if (is_update(events[i].kind) && split.is_replayable(i)) out.push_back(events[i]);
  return out;
}

ScoredQueries score_stream(LinkModel& model, std::span<const Event> labeled,
                           const DecoupledConfig& schedule, TimingBreakdown* timing) {
  ScoredQueries out;
  out.scores = run_stream(model, labeled, schedule, timing);
  out.labels = labels_of(labeled);
  return out;
}

double train_epoch(LinkModel& model, std::span<const Event> labeled,
                   const DecoupledConfig& schedule, nn::Adam& adam) {
  nn::ParamSet* params = model.params();
  if (params == nullptr) throw ContractViolation("train_epoch: model has no parameters");
  nn::Tape tape(true);
  double loss_sum = 0.0;
  std::size_t loss_batches = 0;
  for (std::span<const Event> batch :
       split_into_memory_batches(labeled, schedule.prediction_batch_size)) {
    tape.clear();
    const nn::Var scores = run_batch(model, batch, schedule, tape);
    if (scores.rows() > 0) {
      const std::vector<double> labels = labels_of(batch);
      const nn::Var loss = nn::bce_loss(scores, labels);
      tape.backward(loss);
      adam.step(*params);
      loss_sum += loss.value()(0, 0);
      ++loss_batches;
    }
    model.end_batch();
  }
  return loss_batches ? loss_sum / static_cast<double>(loss_batches) : 0.0;
}

TrainResult train(LinkModel& model, std::span<const Event> events, const DatasetSplit& split,
                  const TrainConfig& cfg) {
  cfg.schedule.validate();
  if (split.train.size() == 0 || split.val.size() == 0 || split.test.size() == 0)
    throw ConfigError("train: empty split partition");
  const std::vector<NodeId> universe = destination_universe(events);
  const std::vector<Event> train_updates = update_stream(events, split.train, split);

  NegativeSampler val_sampler(universe, mix_seed(cfg.seed, kValSalt));
  const std::vector<Event> val_stream =
      labeled_stream(events, split.val, split.val_events, split, val_sampler);

  nn::ParamSet* params = model.params();
  const bool learnable = params != nullptr && params->count() > 0;
  TrainResult result;
  result.best_val_ap = -std::numeric_limits<double>::infinity();
  nn::Adam adam(nn::AdamOptions{cfg.lr});

  const std::size_t epochs = learnable ? cfg.max_epochs : 1;
  std::size_t since_best = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    model.reset();
    EpochMetrics m;
    m.epoch = epoch;
    if (learnable) {
      NegativeSampler sampler(universe, mix_seed(cfg.seed, epoch));
      const std::vector<Event> stream =
          labeled_stream(events, split.train, split.train_events, split, sampler);
      m.train_loss = train_epoch(model, stream, cfg.schedule, adam);
    } else {
      run_stream(model, train_updates, cfg.schedule);
    }

    const ScoredQueries val = score_stream(model, val_stream, cfg.schedule);
    m.val_ap = average_precision(val.scores, val.labels);
    m.val_auc = auc_roc(val.scores, val.labels);
    result.history.push_back(m);
    if (cfg.on_epoch) cfg.on_epoch(m);

    if (m.val_ap > result.best_val_ap) {
      result.best_val_ap = m.val_ap;
      result.best_epoch = epoch;
      if (learnable) result.best_params = params->snapshot();
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  if (learnable) params->restore(result.best_params);
  model.reset();
  return result;
}

EvalResult evaluate_test(LinkModel& model, std::span<const Event> events, const DatasetSplit& split,
                         const DecoupledConfig& schedule, std::uint64_t seed) {
  schedule.validate();
  const std::vector<NodeId> universe = destination_universe(events);
  NegativeSampler sampler(universe, mix_seed(seed, kTestSalt));
  const std::vector<Event> test_stream =
      labeled_stream(events, split.test, split.test_events, split, sampler);

  model.reset();
  std::vector<Event> warm = update_stream(events, split.train, split);
  const std::vector<Event> val_updates = update_stream(events, split.val, split);
  warm.insert(warm.end(), val_updates.begin(), val_updates.end());
  run_stream(model, warm, schedule);

  EvalResult r;
  std::size_t updates = 0;
  for (const Event& e : test_stream) updates += is_update(e.kind) ? 1 : 0;
  const auto start = std::chrono::steady_clock::now();
  const ScoredQueries test = score_stream(model, test_stream, schedule, &r.timing);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.edges_per_sec = r.wall_seconds > 0.0 ? static_cast<double>(updates) / r.wall_seconds : 0.0;
  r.queries = test.scores.size();
  r.ap = average_precision(test.scores, test.labels);
  r.auc = auc_roc(test.scores, test.labels);
  return r;
}

}  // namespace tempograph
