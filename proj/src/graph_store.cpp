// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/graph_store.hpp"

#include <algorithm>

#include "tempograph/errors.hpp"

namespace tempograph {
namespace {
const std::vector<Neighbor> kNoNeighbors;
}

TemporalGraphStore::TemporalGraphStore(std::shared_ptr<const FeatureTable> features)
    : features_(std::move(features)) {}

void TemporalGraphStore::ensure_node(NodeId i) {
  if (i >= node_time_.size()) {
    node_time_.resize(static_cast<std::size_t>(i) + 1, 0.0);
    adjacency_.resize(static_cast<std::size_t>(i) + 1);
  }
}

Time TemporalGraphStore::edge_time(NodeId i, NodeId j) const noexcept {
  const auto it = edge_time_.find(edge_key(i, j));
  return it == edge_time_.end() ? 0.0 : it->second;
}

const std::vector<Neighbor>& TemporalGraphStore::adjacency(NodeId i) const noexcept {
  return i < adjacency_.size() ? adjacency_[i] : kNoNeighbors;
}

void TemporalGraphStore::erase_pair_entries(NodeId i, NodeId j) {
  auto& list = adjacency_[i];
  std::erase_if(list, [j](const Neighbor& n) { return n.node == j; });
}

void TemporalGraphStore::apply_update(const Event& e) {
  if (e.kind == EventKind::PredictEdge)
    throw ContractViolation("apply_update: PredictEdge is not a graph update");
  if (e.timestamp < clock_)
    throw ContractViolation("apply_update: timestamp " + std::to_string(e.timestamp) +
                            " older than store clock " + std::to_string(clock_));
  const Time t = e.timestamp;
  switch (e.kind) {
    case EventKind::AddEdge: {
      ensure_node(std::max(e.src, e.dst));
      edge_time_[edge_key(e.src, e.dst)] = t;
      node_time_[e.src] = t;
      node_time_[e.dst] = t;
      adjacency_[e.src].push_back({e.dst, t, e.feature_row, e.seq});
      if (e.src != e.dst) adjacency_[e.dst].push_back({e.src, t, e.feature_row, e.seq});
      break;
    }
    case EventKind::RemoveEdge: {
      const auto it = edge_time_.find(edge_key(e.src, e.dst));
      if (it == edge_time_.end()) {
        ++missing_removals_;
        break;
      }
      edge_time_.erase(it);
      erase_pair_entries(e.src, e.dst);
      erase_pair_entries(e.dst, e.src);
      node_time_[e.src] = t;
      node_time_[e.dst] = t;
      break;
    }
    case EventKind::AddNode: {
      ensure_node(e.src);
      node_time_[e.src] = t;
      break;
    }
    case EventKind::RemoveNode: {
      if (e.src >= node_time_.size()) break;
      node_time_[e.src] = 0.0;
      auto& own = adjacency_[e.src];
      for (const Neighbor& n : own) {
        edge_time_.erase(edge_key(e.src, n.node));
        if (n.node != e.src) erase_pair_entries(n.node, e.src);
      }
      own.clear();
      break;
    }
    case EventKind::PredictEdge: break;
  }
  clock_ = t;
}

std::vector<Neighbor> TemporalGraphStore::recent_neighbors(NodeId i, std::size_t k) const {
  const auto& list = adjacency(i);
  // Entries are appended in (time, seq) order, so the newest k are the tail.
  const std::size_t n = std::min(k, list.size());
  return {list.rbegin(), list.rbegin() + static_cast<std::ptrdiff_t>(n)};
}

void TemporalGraphStore::clear() {
  node_time_.clear();
  edge_time_.clear();
  adjacency_.clear();
  clock_ = 0.0;
  missing_removals_ = 0;
}

bool operator==(const TemporalGraphStore& a, const TemporalGraphStore& b) {
  return a.node_time_ == b.node_time_ && a.edge_time_ == b.edge_time_ &&
         a.adjacency_ == b.adjacency_ && a.clock_ == b.clock_;
}

}  // namespace tempograph
