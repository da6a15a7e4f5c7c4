// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_GRAPH_STORE_HPP
#define TEMPOGRAPH_GRAPH_STORE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <unordered_map>
#include <vector>

#include "tempograph/event.hpp"

namespace tempograph {

/// One adjacency entry: an interaction with `node` at `time`.
struct Neighbor {
  NodeId node = 0;
  Time time = 0.0;
  std::uint32_t feature_row = kNoFeatures;
  std::uint64_t seq = 0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Timestamps and adjacency of a continuous-time dynamic graph.
///
/// Single writer. Node and edge times default to 0 for never-seen entities.
/// Every AddEdge appends one adjacency entry in each direction, so a pair that
/// interacted three times contributes three entries.
class TemporalGraphStore {
 public:
  explicit TemporalGraphStore(std::shared_ptr<const FeatureTable> features = nullptr);

  /// Applies a graph update. Throws ContractViolation on PredictEdge or on a
  /// timestamp older than clock().
  void apply_update(const Event& e);

  Time node_time(NodeId i) const noexcept {
    return i < node_time_.size() ? node_time_[i] : 0.0;
  }
  Time edge_time(NodeId i, NodeId j) const noexcept;
  Time clock() const noexcept { return clock_; }

  std::size_t num_nodes() const noexcept { return node_time_.size(); }
  std::size_t num_edges() const noexcept { return edge_time_.size(); }
  std::size_t degree(NodeId i) const noexcept {
    return i < adjacency_.size() ? adjacency_[i].size() : 0;
  }

  /// Insertion-ordered entries of i (empty for unknown nodes).
  const std::vector<Neighbor>& adjacency(NodeId i) const noexcept;

  /// The k entries of i with the largest (time, seq), most recent first.
  std::vector<Neighbor> recent_neighbors(NodeId i, std::size_t k) const;

  const std::unordered_map<EdgeKey, Time>& edge_times() const noexcept { return edge_time_; }
  const std::shared_ptr<const FeatureTable>& features() const noexcept { return features_; }

  /// RemoveEdge calls that found no edge.
  std::size_t missing_removals() const noexcept { return missing_removals_; }

  void clear();

  friend bool operator==(const TemporalGraphStore& a, const TemporalGraphStore& b);

 private:
  void ensure_node(NodeId i);
  void erase_pair_entries(NodeId i, NodeId j);

  std::shared_ptr<const FeatureTable> features_;
  std::vector<Time> node_time_;
  std::unordered_map<EdgeKey, Time> edge_time_;
  std::vector<std::vector<Neighbor>> adjacency_;
  Time clock_ = 0.0;
  std::size_t missing_removals_ = 0;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_GRAPH_STORE_HPP
