// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_SPLIT_HPP
#define TEMPOGRAPH_SPLIT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <unordered_set>
#include <vector>

#include "tempograph/event.hpp"

namespace tempograph {

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Chronological train/val/test partition of a stream.
///
/// The ranges always tile the stream. The `*_events` lists hold the indices
/// that are scored in each partition: every index of the range in
/// transductive mode, or the filtered subset in inductive mode. Train
/// events that touch a reserved node are left out of `train_events` and must
/// not be replayed as updates either.
struct DatasetSplit {
  IndexRange train, val, test;
  std::vector<std::size_t> train_events, val_events, test_events;
  /// Nodes held out of training: the sampled reserved nodes plus every node
  /// that never occurs in a kept train event.
  std::unordered_set<NodeId> new_node_set;
  std::unordered_set<NodeId> reserved_nodes;
  bool inductive = false;

  /// Per train-range offset: true when that train event touches a reserved node.
  std::vector<bool> train_dropped;

  /// True when event `i` may be applied as a memory update.
  bool is_replayable(std::size_t i) const;
};

/// Boundaries at floor(f0 * m) and floor((f0 + f1) * m). In inductive mode a
/// `new_node_fraction` share of the nodes seen after the train boundary is
/// reserved; val/test keep only events touching a node of new_node_set.
///
/// Throws ConfigError when fractions do not sum to 1 or a partition is empty.
DatasetSplit chronological_split(std::span<const Event> events,
                                 std::array<double, 3> fractions = {0.70, 0.15, 0.15},
                                 bool inductive = false, double new_node_fraction = 0.1,
                                 std::uint64_t rng_seed = 0);

/// Uniform random destinations for negative queries. Collisions with the
/// positive destination are kept.
class NegativeSampler {
 public:
  NegativeSampler(std::vector<NodeId> node_universe, std::uint64_t seed);

  /// PredictEdge with the positive's source and timestamp, label 0.
  Event sample(const Event& positive);

  std::span<const NodeId> universe() const noexcept { return universe_; }

 private:
  std::vector<NodeId> universe_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::size_t> pick_;
};

/// Free-function form kept for callers that manage their own generator.
Event sample_negative(const Event& positive, std::span<const NodeId> node_universe,
                      std::mt19937_64& rng);

/// Distinct destination nodes of the AddEdge events, ascending.
std::vector<NodeId> destination_universe(std::span<const Event> events);

}  // namespace tempograph

#endif  // TEMPOGRAPH_SPLIT_HPP
