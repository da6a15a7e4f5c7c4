// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/analyzer.hpp"

#include <algorithm>
#include <unordered_set>

#include "tempograph/errors.hpp"

namespace tempograph {
namespace {

/// Undirected simple graph, updated only at batch boundaries.
class SnapshotGraph {
 public:
  bool adjacent(NodeId a, NodeId b) const { return edges_.contains(edge_key(a, b)); }

  void add(NodeId a, NodeId b) {
    if (!edges_.insert(edge_key(a, b)).second) return;
    grow(std::max(a, b));
    neighbors_[a].push_back(b);
    if (a != b) neighbors_[b].push_back(a);
  }

  const std::vector<NodeId>& neighbors(NodeId a) const {
    static const std::vector<NodeId> none;
    return a < neighbors_.size() ? neighbors_[a] : none;
  }

  std::size_t capacity() const { return neighbors_.size(); }

 private:
  void grow(NodeId n) {
    if (n >= neighbors_.size()) neighbors_.resize(static_cast<std::size_t>(n) + 1);
  }

  std::unordered_set<EdgeKey> edges_;
  std::vector<std::vector<NodeId>> neighbors_;
};

/// Membership marks for a <=2-hop neighborhood, reset by bumping a stamp.
class Marker {
 public:
  void reset(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
    ++current_;
  }
  void mark(NodeId v) {
    if (v >= stamp_.size()) stamp_.resize(static_cast<std::size_t>(v) + 1, 0);
    stamp_[v] = current_;
  }
  bool marked(NodeId v) const { return v < stamp_.size() && stamp_[v] == current_; }

 private:
  std::vector<std::uint64_t> stamp_;
  std::uint64_t current_ = 0;
};

}  // namespace

MissingUpdateReport count_missing_updates(std::span<const Event> events, std::size_t batch_size,
                                          std::size_t hop) {
  if (hop != 1 && hop != 2) throw UnsupportedError("missing-update analysis supports hop 1 or 2");
  if (batch_size == 0) throw ContractViolation("batch_size must be at least 1");

  MissingUpdateReport report;
  report.batch_size = batch_size;
  report.hop = hop;
  report.inputs_counted = events.size();
  if (events.empty()) return report;

  SnapshotGraph graph;
  Marker marker;
  std::size_t affected = 0;
  std::size_t missing_total = 0;

  auto in_hop1 = [&](NodeId x, NodeId a) { return x == a || graph.adjacent(x, a); };

  for (std::size_t begin = 0; begin < events.size(); begin += batch_size) {
    const std::size_t end = std::min(events.size(), begin + batch_size);
    for (std::size_t j = begin; j < end; ++j) {
      const Event& input = events[j];
      if (input.kind != EventKind::AddEdge)
        throw ContractViolation("missing-update analysis expects an AddEdge stream");
      if (j == begin) continue;
      const NodeId a = input.src;
      const NodeId b = input.dst;
      std::size_t missing = 0;
      if (hop == 1) {
        for (std::size_t i = begin; i < j; ++i) {
          const NodeId u = events[i].src;
          const NodeId v = events[i].dst;
          if (in_hop1(u, a) || in_hop1(u, b) || in_hop1(v, a) || in_hop1(v, b)) ++missing;
        }
      } else {
        marker.reset(graph.capacity());
        for (const NodeId root : {a, b}) {
          marker.mark(root);
          for (const NodeId n1 : graph.neighbors(root)) {
            marker.mark(n1);
            for (const NodeId n2 : graph.neighbors(n1)) marker.mark(n2);
          }
        }
        for (std::size_t i = begin; i < j; ++i)
          if (marker.marked(events[i].src) || marker.marked(events[i].dst)) ++missing;
      }
      if (missing > 0) ++affected;
      missing_total += missing;
    }
    for (std::size_t i = begin; i < end; ++i) graph.add(events[i].src, events[i].dst);
  }
  const auto n = static_cast<double>(events.size());
  report.ratio_affected = static_cast<double>(affected) / n;
  report.avg_missing_per_input = static_cast<double>(missing_total) / n;
  return report;
}

std::vector<MissingUpdateReport> sweep(std::span<const Event> events,
                                       std::span<const std::size_t> batch_sizes, std::size_t hop) {
  if (batch_sizes.empty()) throw ConfigError("sweep needs at least one batch size");
  std::vector<MissingUpdateReport> out;
  out.reserve(batch_sizes.size());
  for (const std::size_t bs : batch_sizes) out.push_back(count_missing_updates(events, bs, hop));
  return out;
}

}  // namespace tempograph
