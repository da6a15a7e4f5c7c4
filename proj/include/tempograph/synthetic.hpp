// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_SYNTHETIC_HPP
#define TEMPOGRAPH_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>

#include "tempograph/event.hpp"

namespace tempograph {

struct SyntheticStreamConfig {
  std::size_t num_events = 10000;
  std::size_t num_nodes = 200;
  std::size_t feature_dim = 0;
  /// Probability that an event repeats one of the recently seen pairs.
  double repeat_probability = 0.6;
  /// Recent pairs eligible for repetition.
  std::size_t repeat_window = 512;
  /// Mean of the exponential inter-event gap.
  double mean_gap = 10.0;
  /// Probability that two consecutive events carry the same timestamp.
  double tie_probability = 0.05;
  std::uint64_t seed = 0;
};

/// AddEdge-only stream with heavy-tailed node activity and edge recurrence,
/// so that memorization carries real signal.
EventStream make_synthetic_stream(const SyntheticStreamConfig& cfg);

/// Every event touches hub node 0; the other endpoint cycles through
/// 1..num_leaves. Timestamps are 1, 2, 3, ...
EventStream make_star_stream(std::size_t num_events, std::size_t num_leaves);

/// Stream with a planted recurrence rule. Query k asks about the fresh pair
/// (2k, 2k + 1), first seen once at time k * spacing and asked again after a
/// gap whose normalized value u = log(1 + gap) / log(1 + span) is uniform on
/// [0, 1]. The query is positive iff u < threshold. Events are time-sorted,
/// queries carry labels and updates precede queries at equal times.
struct PlantedThresholdConfig {
  std::size_t num_queries = 2000;
  double span = 1000.0;
  double threshold = 0.5;
  double spacing = 1.0;
  std::uint64_t seed = 0;
};

EventStream make_planted_threshold_stream(const PlantedThresholdConfig& cfg);

/// The raw gap matching cfg.threshold: (1 + span)^threshold - 1.
double planted_gap(const PlantedThresholdConfig& cfg);

}  // namespace tempograph

#endif  // TEMPOGRAPH_SYNTHETIC_HPP
