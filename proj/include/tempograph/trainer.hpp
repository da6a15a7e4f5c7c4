// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_TRAINER_HPP
#define TEMPOGRAPH_TRAINER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tempograph/event.hpp"
#include "tempograph/model.hpp"
#include "tempograph/nn/optim.hpp"
#include "tempograph/nn/tensor.hpp"
#include "tempograph/scheduler.hpp"
#include "tempograph/split.hpp"

namespace tempograph {

/// Interleaves scored queries into a partition: for each scored AddEdge a
/// positive query and one sampled negative precede the update itself. Every
/// replayable update of `range` is kept.
std::vector<Event> labeled_stream(std::span<const Event> events, IndexRange range,
                                  std::span<const std::size_t> scored, const DatasetSplit& split,
                                  NegativeSampler& sampler);

/// Replayable updates of `range` without queries.
std::vector<Event> update_stream(std::span<const Event> events, IndexRange range,
                                 const DatasetSplit& split);

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_ap = 0.0;
  double val_auc = 0.0;
};

struct TrainConfig {
  DecoupledConfig schedule;
  std::size_t max_epochs = 100;
  std::size_t patience = 20;
  double lr = 1e-4;
  std::uint64_t seed = 0;
  /// Called after every epoch.
  std::function<void(const EpochMetrics&)> on_epoch;
};

/// One pass of Adam over a labeled stream in prediction batches, continuing
/// from the model's current memory. Returns the mean batch loss.
double train_epoch(LinkModel& model, std::span<const Event> labeled,
                   const DecoupledConfig& schedule, nn::Adam& adam);

struct TrainResult {
  std::vector<EpochMetrics> history;
  std::size_t best_epoch = 0;
  double best_val_ap = 0.0;
  /// Parameter values of the best epoch, already restored into the model.
  std::vector<nn::Matrix> best_params;
};

/// Epochs of Adam on mean BCE over (positive, negative) query pairs, each
/// epoch replaying train from an empty memory with fresh negatives, then
/// scoring val from the end-of-train memory with fixed negatives. Stops after
/// `patience` epochs without a better val AP. Models without parameters only
/// get the validation pass.
TrainResult train(LinkModel& model, std::span<const Event> events, const DatasetSplit& split,
                  const TrainConfig& cfg);

struct EvalResult {
  double ap = 0.0;
  double auc = 0.0;
  std::size_t queries = 0;
  double wall_seconds = 0.0;
  double edges_per_sec = 0.0;
  TimingBreakdown timing;
};

/// Scores the test partition: resets the model, replays train and val
/// updates, then streams test queries with negatives drawn from `seed`.
/// Throughput covers the test stream only.
EvalResult evaluate_test(LinkModel& model, std::span<const Event> events, const DatasetSplit& split,
                         const DecoupledConfig& schedule, std::uint64_t seed);

/// Scores and labels of a labeled stream run through the scheduler.
struct ScoredQueries {
  std::vector<double> scores;
  std::vector<double> labels;
};
ScoredQueries score_stream(LinkModel& model, std::span<const Event> labeled,
                           const DecoupledConfig& schedule, TimingBreakdown* timing = nullptr);

}  // namespace tempograph

#endif  // TEMPOGRAPH_TRAINER_HPP
