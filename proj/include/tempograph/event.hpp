// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_EVENT_HPP
#define TEMPOGRAPH_EVENT_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace tempograph {

using NodeId = std::uint32_t;
using Time = double;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kNoFeatures = std::numeric_limits<std::uint32_t>::max();

/// Unordered edge key: (min, max) packed into 64 bits, so (i, j) and (j, i)
/// share one interaction history.
using EdgeKey = std::uint64_t;

constexpr EdgeKey edge_key(NodeId a, NodeId b) noexcept {
  const NodeId lo = a < b ? a : b;
  const NodeId hi = a < b ? b : a;
  return (static_cast<EdgeKey>(lo) << 32) | hi;
}

constexpr std::pair<NodeId, NodeId> edge_nodes(EdgeKey key) noexcept {
  return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)};
}

enum class EventKind : std::uint8_t { AddEdge, RemoveEdge, AddNode, RemoveNode, PredictEdge };

std::string_view to_string(EventKind kind) noexcept;

constexpr bool is_update(EventKind kind) noexcept { return kind != EventKind::PredictEdge; }

/// Row-major table of edge feature vectors, shared between a stream and the
/// stores that replay it. Immutable once handed out.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rows() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }

  /// Appends one row and returns its index, or kNoFeatures when dim() is 0.
  std::uint32_t append(std::span<const double> row);

  std::span<const double> row(std::uint32_t index) const noexcept {
    if (index == kNoFeatures || dim_ == 0) return {};
    return {values_.data() + static_cast<std::size_t>(index) * dim_, dim_};
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// One timestamped item of a stream: a graph update or a prediction query.
struct Event {
  EventKind kind = EventKind::AddEdge;
  NodeId src = 0;
  NodeId dst = kNoNode;
  Time timestamp = 0.0;
  std::uint32_t feature_row = kNoFeatures;
  std::uint64_t seq = 0;
  /// Ground truth for PredictEdge queries: 1 positive, 0 negative, -1 unknown.
  std::int8_t label = -1;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Events in stream order plus the feature table they index into.
struct EventStream {
  std::vector<Event> events;
  std::shared_ptr<FeatureTable> features = std::make_shared<FeatureTable>();
  std::size_t num_nodes = 0;

  std::size_t size() const noexcept { return events.size(); }
  std::size_t feature_dim() const noexcept { return features->dim(); }

  /// Appends an AddEdge with the next seq. Node count grows to cover src/dst.
  Event& add_edge(NodeId src, NodeId dst, Time t, std::span<const double> feats = {});
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_EVENT_HPP
