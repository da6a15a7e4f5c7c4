// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_MEMORY_HPP
#define TEMPOGRAPH_MEMORY_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tempograph/event.hpp"
#include "tempograph/graph_store.hpp"
#include "tempograph/nn/tensor.hpp"
#include "tempograph/time_encoder.hpp"

namespace tempograph {

/// Learned node states of the memory-carrying variant, zero for new nodes.
///
/// When a state was produced on the currently bound tape its tensor row is
/// remembered, so predictions in the same batch can backpropagate into the
/// GRU that wrote it.
class NodeStateTable {
 public:
  struct TapeRow {
    nn::Var var;
    std::uint32_t row = 0;
  };

  explicit NodeStateTable(std::size_t dim = 0) : dim_(dim), zeros_(dim, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> state(NodeId i) const;
  const TapeRow* tape_row(NodeId i) const;

  /// Stacks the states of `nodes` into (n x dim), linking tape-produced rows.
  nn::Var gather(nn::Tape& tape, std::span<const NodeId> nodes) const;

  void set(NodeId i, std::span<const double> values);
  void set_from_tape(NodeId i, nn::Var var, std::uint32_t row);
  void zero(NodeId i);
  /// Forgets tape rows; values stay.
  void detach() { tape_rows_.clear(); }
  void clear();

 private:
  std::size_t dim_;
  std::vector<double> values_;
  std::vector<double> zeros_;
  std::unordered_map<NodeId, TapeRow> tape_rows_;
};

/// A frozen state: the values plus, when live on the tape, where they came from.
struct StateSnapshot {
  std::vector<double> values;
  nn::Var source;
  std::uint32_t row = 0;
};

/// Immutable snapshot of the memory taken at a memory-batch boundary.
/// Lookups of entries that were not captured return the never-seen defaults.
struct MemoryView {
  Time view_time = 0.0;
  std::unordered_map<NodeId, Time> node_times;
  std::unordered_map<EdgeKey, Time> edge_times;
  std::unordered_map<NodeId, StateSnapshot> node_states;
  std::unordered_map<NodeId, std::vector<Neighbor>> frozen_neighbors;
  std::shared_ptr<const FeatureTable> features;
  std::size_t state_dim = 0;

  Time node_time(NodeId i) const;
  Time edge_time(NodeId i, NodeId j) const;
  std::span<const Neighbor> neighbors(NodeId i) const;
  /// Null when the node has no captured state.
  const StateSnapshot* state(NodeId i) const;
};

/// Deep-copies what the next queries need: timestamps of every node within
/// `hop` of `query_nodes`, the newest-k neighbor lists of nodes closer than
/// `hop`, the listed edge times and (when `states` is given) node states.
MemoryView extract_view(const TemporalGraphStore& store, const NodeStateTable* states,
                        std::span<const NodeId> query_nodes, std::span<const EdgeKey> query_edges,
                        std::size_t hop, std::size_t k);

/// Order-independent digest of a view's contents, for isolation checks.
std::uint64_t fingerprint(const MemoryView& view);

struct Message {
  NodeId target = 0;
  std::vector<double> payload;
  Time timestamp = 0.0;
  std::uint64_t seq = 0;
};

/// Messages of an AddEdge from the current (pre-event) memory:
/// src gets [s_src | s_dst | TDE(t - t_src)], dst gets [s_dst | s_src | TDE(t - t_dst)].
/// With `edge_features` set the edge's feature row is appended to both.
std::pair<Message, Message> build_messages(const TemporalGraphStore& store,
                                           const NodeStateTable& states, const Event& e,
                                           const TimeEncoder& tde, bool edge_features = false);

/// Keeps the message with the largest (timestamp, seq). Throws
/// ContractViolation on empty input or mixed targets.
Message aggregate_messages(std::span<const Message> messages);

/// GRU cell with update gate z as the write gate:
///   z = sigmoid([m, s] Wz + bz), r = sigmoid([m, s] Wr + br),
///   h = tanh([m, r * s] Wh + bh), s' = (1 - z) * s + z * h.
class Gru {
 public:
  Gru(std::size_t input_dim, std::size_t hidden_dim, nn::ParamSet& params,
      const std::string& prefix, std::mt19937_64& rng);

  /// Batched step: m (n x input_dim), s (n x hidden_dim) -> (n x hidden_dim).
  nn::Var step(nn::Var m, nn::Var s) const;

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t hidden_dim() const noexcept { return hidden_dim_; }

  nn::Parameter& wz() { return *wz_; }
  nn::Parameter& bz() { return *bz_; }
  nn::Parameter& wr() { return *wr_; }
  nn::Parameter& br() { return *br_; }
  nn::Parameter& wh() { return *wh_; }
  nn::Parameter& bh() { return *bh_; }

 private:
  std::size_t input_dim_, hidden_dim_;
  nn::Parameter *wz_, *bz_, *wr_, *br_, *wh_, *bh_;
};

/// Single-vector convenience form of Gru::step.
std::vector<double> gru_update(const Gru& gru, std::span<const double> state,
                               std::span<const double> payload);

/// Memory module for the timestamp-only model and the GRU-state variant.
class MemoryModule {
 public:
  struct Options {
    bool with_states = false;
    bool messages_include_edge_features = false;
  };

  /// `tde` and `gru` are required when with_states is set.
  MemoryModule(std::shared_ptr<const FeatureTable> features, Options options,
               const TimeEncoder* tde = nullptr, const Gru* gru = nullptr);

  /// Timestamp-only: apply_update per event. With states: build one message
  /// per endpoint from the batch-start memory, keep each node's latest, run
  /// one GRU step per touched node, then apply the timestamp updates.
  /// GRU ops go on `tape`.
  void process_memory_batch(std::span<const Event> batch, nn::Tape& tape);

  MemoryView view(std::span<const NodeId> nodes, std::span<const EdgeKey> edges, std::size_t hop,
                  std::size_t k) const;

  const TemporalGraphStore& store() const noexcept { return store_; }
  const NodeStateTable& states() const noexcept { return states_; }
  NodeStateTable& states() noexcept { return states_; }
  bool with_states() const noexcept { return options_.with_states; }

  void reset();
  /// Drops tape references held by the state table.
  void end_batch() { states_.detach(); }

 private:
  Options options_;
  TemporalGraphStore store_;
  NodeStateTable states_;
  const TimeEncoder* tde_;
  const Gru* gru_;
  std::size_t message_dim_ = 0;
};

/// Gathers the rows named by `snapshots` into one (n x dim) tensor, keeping
/// tape links for in-batch states when the tape records.
nn::Var gather_states(nn::Tape& tape, std::span<const StateSnapshot* const> snapshots,
                      std::size_t dim);

}  // namespace tempograph

#endif  // TEMPOGRAPH_MEMORY_HPP
