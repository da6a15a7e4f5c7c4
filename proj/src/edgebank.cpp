// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/edgebank.hpp"

#include <cmath>
#include <unordered_set>

#include "tempograph/errors.hpp"
#include "tempograph/nn/ops.hpp"
#include "tempograph/time_encoder.hpp"

namespace tempograph {

void collect_query_keys(std::span<const Event> queries, std::vector<NodeId>& nodes,
                        std::vector<EdgeKey>& edges) {
  std::unordered_set<NodeId> seen_nodes;
  std::unordered_set<EdgeKey> seen_edges;
  for (const Event& q : queries) {
    if (seen_nodes.insert(q.src).second) nodes.push_back(q.src);
    if (q.dst == kNoNode) continue;
    if (seen_nodes.insert(q.dst).second) nodes.push_back(q.dst);
    const EdgeKey key = edge_key(q.src, q.dst);
    if (seen_edges.insert(key).second) edges.push_back(key);
  }
}

// ---- memory ----

void EdgeBankMemory::update(const Event& e) {
  if (e.kind == EventKind::PredictEdge)
    throw ContractViolation("edgebank: prediction query passed as an update");
  ++update_count_;
  if (e.kind != EventKind::AddEdge) return;
  EdgeBankEntry& entry = entries_[edge_key(e.src, e.dst)];
  entry.last_seen_time = e.timestamp;
  entry.last_seen_ordinal = update_count_;
  ++entry.seen_count;
}

const EdgeBankEntry* EdgeBankMemory::find(EdgeKey key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void EdgeBankMemory::clear() {
  entries_.clear();
  update_count_ = 0;
}

void edgebank_update(EdgeBankMemory& mem, const Event& e) {
  if (e.kind != EventKind::AddEdge) throw ContractViolation("edgebank_update: AddEdge required");
  mem.update(e);
}

EdgeBankVariant parse_edgebank_variant(std::string_view name) {
  if (name == "inf") return EdgeBankVariant::Infinite;
  if (name == "tw") return EdgeBankVariant::TimeWindow;
  if (name == "th") return EdgeBankVariant::Threshold;
  if (name == "re") return EdgeBankVariant::Repeat;
  throw ConfigError("unknown EdgeBank variant '" + std::string(name) + "' (expected inf, tw, th or re)");
}

std::string_view to_string(EdgeBankVariant v) noexcept {
  switch (v) {
    case EdgeBankVariant::Infinite: return "inf";
    case EdgeBankVariant::TimeWindow: return "tw";
    case EdgeBankVariant::Threshold: return "th";
    case EdgeBankVariant::Repeat: return "re";
  }
  return "?";
}

bool edgebank_decide(const EdgeBankEntry* entry, const EdgeBankRule& rule, Time t,
                     std::uint64_t update_count) {
  if (entry == nullptr) return false;
  switch (rule.variant) {
    case EdgeBankVariant::Infinite:
      return true;
    case EdgeBankVariant::TimeWindow:
      return t - entry->last_seen_time <= rule.param;
    case EdgeBankVariant::Threshold: {
      // p = -elapsed + T, positive when p >= 0.
      const double elapsed = static_cast<double>(update_count - entry->last_seen_ordinal);
      return rule.param - elapsed >= 0.0;
    }
    case EdgeBankVariant::Repeat:
      return static_cast<double>(entry->seen_count) >= rule.param;
  }
  return false;
}

bool edgebank_predict(const EdgeBankMemory& mem, const EdgeBankRule& rule, NodeId i, NodeId j,
                      Time t) {
  return edgebank_decide(mem.find(edge_key(i, j)), rule, t, mem.update_count());
}

// ---- EdgeBankModel ----

std::string EdgeBankModel::name() const { return "edgebank:" + std::string(to_string(rule_.variant)); }

void EdgeBankModel::reset() {
  memory_.clear();
  views_.clear();
}

void EdgeBankModel::begin_batch(nn::Tape& tape) {
  tape_ = &tape;
  views_.clear();
}

void EdgeBankModel::end_batch() {
  tape_ = nullptr;
  views_.clear();
}

std::size_t EdgeBankModel::extract_view(std::span<const Event> queries) {
  View v;
  v.update_count = memory_.update_count();
  for (const Event& q : queries) {
    const EdgeKey key = edge_key(q.src, q.dst);
    if (const EdgeBankEntry* e = memory_.find(key)) v.entries.emplace(key, *e);
  }
  views_.push_back(std::move(v));
  return views_.size() - 1;
}

void EdgeBankModel::process_memory_batch(std::span<const Event> updates) {
  for (const Event& e : updates) memory_.update(e);
}

nn::Var EdgeBankModel::predict(std::span<const ViewedQuery> queries) {
  if (tape_ == nullptr) throw ContractViolation("edgebank: predict before begin_batch");
  nn::Matrix out(static_cast<Eigen::Index>(queries.size()), 1);
  for (std::size_t r = 0; r < queries.size(); ++r) {
    const ViewedQuery& vq = queries[r];
    const View& v = views_.at(vq.view);
    auto it = v.entries.find(edge_key(vq.query.src, vq.query.dst));
    const EdgeBankEntry* entry = it == v.entries.end() ? nullptr : &it->second;
    out(static_cast<Eigen::Index>(r), 0) =
        edgebank_decide(entry, rule_, vq.query.timestamp, v.update_count) ? 1.0 : 0.0;
  }
  return tape_->constant(std::move(out));
}

// ---- LinearTimeModel ----

LinearTimeModel::LinearTimeModel(LinearVariant variant, double span,
                                 std::shared_ptr<const FeatureTable> features)
    : variant_(variant), span_(span), memory_(std::move(features), MemoryModule::Options{}) {
  if (!(span > 0.0)) throw ConfigError("linear time model: span must be positive");
  const Eigen::Index inputs = variant == LinearVariant::EdgeOnly ? 1 : 3;
  w_ = &params_.add("linear.w", nn::Matrix::Zero(inputs, 1));
  b_ = &params_.add("linear.b", nn::Matrix::Zero(1, 1));
}

std::string LinearTimeModel::name() const {
  return variant_ == LinearVariant::EdgeOnly ? "linear:edge" : "linear:node";
}

void LinearTimeModel::reset() {
  memory_.reset();
  views_.clear();
}

void LinearTimeModel::begin_batch(nn::Tape& tape) {
  tape_ = &tape;
  views_.clear();
}

void LinearTimeModel::end_batch() {
  tape_ = nullptr;
  views_.clear();
}

std::size_t LinearTimeModel::extract_view(std::span<const Event> queries) {
  std::vector<NodeId> nodes;
  std::vector<EdgeKey> edges;
  collect_query_keys(queries, nodes, edges);
  views_.push_back(memory_.view(nodes, edges, 0, 0));
  return views_.size() - 1;
}

void LinearTimeModel::process_memory_batch(std::span<const Event> updates) {
  nn::Tape scratch(false);
  memory_.process_memory_batch(updates, scratch);
}

nn::Var LinearTimeModel::predict(std::span<const ViewedQuery> queries) {
  if (tape_ == nullptr) throw ContractViolation("linear time model: predict before begin_batch");
  const Eigen::Index inputs = w_->value().rows();
  nn::Matrix x(static_cast<Eigen::Index>(queries.size()), inputs);
  for (std::size_t r = 0; r < queries.size(); ++r) {
    const Event& q = queries[r].query;
    const MemoryView& v = views_.at(queries[r].view);
    const auto row = static_cast<Eigen::Index>(r);
    x(row, 0) = normalize_time(q.timestamp - v.edge_time(q.src, q.dst), span_);
    if (inputs == 3) {
      x(row, 1) = normalize_time(q.timestamp - v.node_time(q.src), span_);
      x(row, 2) = normalize_time(q.timestamp - v.node_time(q.dst), span_);
    }
  }
  nn::Tape& t = *tape_;
  return nn::sigmoid(nn::linear(t.constant(std::move(x)), t.param(*w_), t.param(*b_)));
}

double LinearTimeModel::probability(Time t, Time t_ij, Time t_i, Time t_j) const {
  const nn::Matrix& w = w_->value();
  double z = b_->value()(0, 0) + w(0, 0) * normalize_time(t - t_ij, span_);
  if (w.rows() == 3)
    z += w(1, 0) * normalize_time(t - t_i, span_) + w(2, 0) * normalize_time(t - t_j, span_);
  return 1.0 / (1.0 + std::exp(-z));
}

double linear_time_predict(const LinearTimeModel& model, Time t, Time t_ij, Time t_i, Time t_j) {
  return model.probability(t, t_ij, t_i, t_j);
}

}  // namespace tempograph
