// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/event.hpp"

#include <algorithm>

#include "tempograph/errors.hpp"

namespace tempograph {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::AddEdge: return "AddEdge";
    case EventKind::RemoveEdge: return "RemoveEdge";
    case EventKind::AddNode: return "AddNode";
    case EventKind::RemoveNode: return "RemoveNode";
    case EventKind::PredictEdge: return "PredictEdge";
  }
  return "?";
}

std::uint32_t FeatureTable::append(std::span<const double> row) {
  if (row.size() != dim_)
    throw SchemaError("feature row of width " + std::to_string(row.size()) + ", table is " +
                      std::to_string(dim_));
  if (dim_ == 0) return kNoFeatures;
  const auto index = static_cast<std::uint32_t>(rows());
  values_.insert(values_.end(), row.begin(), row.end());
  return index;
}

Event& EventStream::add_edge(NodeId src, NodeId dst, Time t, std::span<const double> feats) {
  Event e;
  e.kind = EventKind::AddEdge;
  e.src = src;
  e.dst = dst;
  e.timestamp = t;
  e.seq = events.size();
  e.feature_row = features->append(feats);
  num_nodes = std::max<std::size_t>(num_nodes, std::max(src, dst) + std::size_t{1});
  events.push_back(e);
  return events.back();
}

}  // namespace tempograph
