// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_SCHEDULER_HPP
#define TEMPOGRAPH_SCHEDULER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tempograph/event.hpp"
#include "tempograph/model.hpp"
#include "tempograph/nn/tensor.hpp"

namespace tempograph {

/// Batch sizes count graph updates; queries travel with the update that
/// follows them.
struct DecoupledConfig {
  std::size_t prediction_batch_size = 200;
  std::size_t memory_batch_size = 1;
  std::size_t hop = 1;
  std::size_t k_recent = 20;

  /// Throws ConfigError unless 1 <= memory_batch_size <= prediction_batch_size.
  void validate() const;
};

struct TimingBreakdown {
  double t_memory = 0.0;
  double t_prediction = 0.0;
  std::size_t events_processed = 0;

  double total() const noexcept { return t_memory + t_prediction; }
  TimingBreakdown& operator+=(const TimingBreakdown& o) noexcept;
};

/// Consecutive chunks each closing right after its m-th update; queries after
/// the last update form a final chunk. Throws ConfigError for m < 1.
std::vector<std::span<const Event>> split_into_memory_batches(std::span<const Event> batch,
                                                              std::size_t m);

/// Decoupled execution of one batch of interleaved updates and queries. Every
/// memory batch first snapshots what its own queries read, then applies its
/// updates; one predict call then answers all queries. Returns a column of
/// scores in query order, recorded on `tape`.
nn::Var run_batch(LinkModel& model, std::span<const Event> batch, const DecoupledConfig& cfg,
                  nn::Tape& tape, TimingBreakdown* timing = nullptr);

/// run_batch over consecutive prediction batches, gradients off. The model is
/// not reset.
std::vector<double> run_stream(LinkModel& model, std::span<const Event> events,
                               const DecoupledConfig& cfg, TimingBreakdown* timing = nullptr);

/// One event at a time: every query is answered from a view that includes all
/// earlier updates. The model is not reset.
std::vector<double> sequential_oracle(LinkModel& model, std::span<const Event> events);

/// (bs_new (t_p + t_m)) / (bs_old t_p + bs_new t_m), from timings profiled at bs_old.
double speedup_estimate(const TimingBreakdown& t, std::size_t bs_old, std::size_t bs_new);

struct ThroughputResult {
  double edges_per_sec = 0.0;
  double wall_seconds = 0.0;
  TimingBreakdown timing;
};

/// Resets the model, streams the first `warmup` updates untimed, then times
/// the rest. Throughput counts timed updates per wall-clock second.
ThroughputResult bench_throughput(LinkModel& model, std::span<const Event> events,
                                  const DecoupledConfig& cfg, std::size_t warmup = 0);

}  // namespace tempograph

#endif  // TEMPOGRAPH_SCHEDULER_HPP
