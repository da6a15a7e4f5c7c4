// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_MODEL_HPP
#define TEMPOGRAPH_MODEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tempograph/event.hpp"
#include "tempograph/nn/tensor.hpp"

namespace tempograph {

/// A prediction query paired with the memory view it is answered from.
struct ViewedQuery {
  Event query;
  std::size_t view = 0;
};

/// A streaming link predictor split into a memory module and a prediction
/// module, driven by the scheduler.
///
/// Per batch the scheduler calls begin_batch, then alternates
/// extract_view / process_memory_batch once per memory batch, then calls
/// predict once for every query of the batch. Views live until end_batch
/// or the next begin_batch.
class LinkModel {
 public:
  virtual ~LinkModel() = default;

  virtual std::string name() const = 0;

  /// Empties the memory (timestamps, adjacency, states).
  virtual void reset() = 0;

  /// Binds the tape used by this batch and drops the previous batch's views.
  virtual void begin_batch(nn::Tape& tape) = 0;

  /// Drops the batch's views and unbinds its tape. Call before the tape dies.
  virtual void end_batch() = 0;

  /// Snapshots what `queries` will read. Returns a view id.
  virtual std::size_t extract_view(std::span<const Event> queries) = 0;

  /// Applies a memory batch of graph updates in order.
  virtual void process_memory_batch(std::span<const Event> updates) = 0;

  /// Link probabilities, one row per query, recorded on the bound tape.
  virtual nn::Var predict(std::span<const ViewedQuery> queries) = 0;

  /// Learnable parameters, or nullptr for memorization models.
  virtual nn::ParamSet* params() { return nullptr; }

  std::size_t param_count() {
    const nn::ParamSet* p = params();
    return p == nullptr ? 0 : p->count();
  }
};

/// Endpoints and edge keys read by `queries`, each listed once in first-use order.
void collect_query_keys(std::span<const Event> queries, std::vector<NodeId>& nodes,
                        std::vector<EdgeKey>& edges);

}  // namespace tempograph

#endif  // TEMPOGRAPH_MODEL_HPP
