// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/ldtgn.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <unordered_map>

#include "tempograph/errors.hpp"
#include "tempograph/nn/ops.hpp"

namespace tempograph {
namespace {

// Queries per forward pass. Bounds the candidate matrices so they stay in
// cache at any prediction batch size.
constexpr std::size_t kForwardBlock = 128;

struct SlotKey {
  std::size_t view;
  NodeId node;
  std::uint64_t time_bits;
  friend bool operator==(const SlotKey&, const SlotKey&) = default;
};

struct SlotKeyHash {
  std::size_t operator()(const SlotKey& k) const noexcept {
    std::uint64_t h = k.time_bits * 0x9e3779b97f4a7c15ULL;
    h ^= (static_cast<std::uint64_t>(k.node) << 20) ^ k.view;
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
  }
};

}  // namespace

Ldtgn::Ldtgn(const LdtgnConfig& cfg, std::shared_ptr<const FeatureTable> features)
    : cfg_(cfg), features_(std::move(features)), feature_dim_(features_ ? features_->dim() : 0) {
  if (cfg_.k_recent == 0) throw ConfigError("ldtgn: k_recent must be at least 1");
  if (cfg_.embed_dim == 0 || cfg_.merge_hidden == 0 || cfg_.merge_mid == 0 || cfg_.merge_low == 0)
    throw ConfigError("ldtgn: layer widths must be positive");
  const bool mem = cfg_.variant == LdtgnVariant::Mem;
  if (mem && cfg_.state_dim == 0) throw ConfigError("ldtgn: state_dim must be positive");

  std::mt19937_64 rng(cfg_.seed);
  TimeEncoderConfig tcfg;
  tcfg.kind = cfg_.resolved_tde_kind();
  tcfg.out_dim = cfg_.tde_dim;
  tcfg.span = cfg_.span;
  tde_ = std::make_unique<TimeEncoder>(tcfg, params_, "tde", rng);

  const std::size_t v = entity_dim();
  const std::size_t cand = 2 * v + feature_dim_;
  const auto h = static_cast<Eigen::Index>(cfg_.embed_dim);
  w_self_ = &params_.add("attn.w_self", uniform_init(static_cast<Eigen::Index>(v), h, cand, rng));
  w_nbr_ = &params_.add("attn.w_nbr", uniform_init(static_cast<Eigen::Index>(v), h, cand, rng));
  if (feature_dim_ > 0)
    w_edge_ = &params_.add("attn.w_edge",
                           uniform_init(static_cast<Eigen::Index>(feature_dim_), h, cand, rng));
  attn_ = &params_.add("attn.a", uniform_init(h, 1, cfg_.embed_dim, rng));

  std::size_t in = 2 * cfg_.embed_dim + cfg_.tde_dim;
  const std::size_t widths[] = {cfg_.merge_hidden, cfg_.merge_mid, cfg_.merge_low, 1};
  for (std::size_t l = 0; l < 4; ++l) {
    const std::string p = "merge." + std::to_string(l);
    const auto out = static_cast<Eigen::Index>(widths[l]);
    Layer layer;
    layer.w = &params_.add(p + ".w", uniform_init(static_cast<Eigen::Index>(in), out, in, rng));
    layer.b = &params_.add(p + ".b", uniform_init(1, out, in, rng));
    merge_.push_back(layer);
    in = widths[l];
  }

  MemoryModule::Options opts;
  opts.with_states = mem;
  opts.messages_include_edge_features = cfg_.messages_include_edge_features;
  if (mem) {
    const std::size_t msg_dim = 2 * cfg_.state_dim + cfg_.tde_dim +
                                (cfg_.messages_include_edge_features ? feature_dim_ : 0);
    gru_ = std::make_unique<Gru>(msg_dim, cfg_.state_dim, params_, "gru", rng);
  }
  memory_ = std::make_unique<MemoryModule>(features_, opts, tde_.get(), gru_.get());
}

std::size_t Ldtgn::entity_dim() const noexcept {
  return cfg_.tde_dim + (cfg_.variant == LdtgnVariant::Mem ? cfg_.state_dim : 0);
}

std::string Ldtgn::name() const {
  return cfg_.variant == LdtgnVariant::Mem ? "ldtgn_mem" : "ldtgn";
}

void Ldtgn::reset() {
  memory_->reset();
  views_.clear();
}

void Ldtgn::begin_batch(nn::Tape& tape) {
  tape_ = &tape;
  views_.clear();
  memory_->end_batch();
}

void Ldtgn::end_batch() {
  tape_ = nullptr;
  views_.clear();
  memory_->end_batch();
}

std::size_t Ldtgn::extract_view(std::span<const Event> queries) {
  std::vector<NodeId> nodes;
  std::vector<EdgeKey> edges;
  collect_query_keys(queries, nodes, edges);
  views_.push_back(memory_->view(nodes, edges, 1, cfg_.k_recent));
  return views_.size() - 1;
}

void Ldtgn::process_memory_batch(std::span<const Event> updates) {
  if (tape_ != nullptr) {
    memory_->process_memory_batch(updates, *tape_);
    return;
  }
  nn::Tape scratch(false);
  memory_->process_memory_batch(updates, scratch);
  memory_->end_batch();
}

nn::Var Ldtgn::predict(std::span<const ViewedQuery> queries) {
  if (tape_ == nullptr) throw ContractViolation("ldtgn: predict before begin_batch");
  std::vector<const MemoryView*> views;
  views.reserve(views_.size());
  for (const MemoryView& v : views_) views.push_back(&v);
  if (queries.size() <= kForwardBlock) return forward(*tape_, views, queries).probability;
  std::vector<nn::Var> blocks;
  for (std::size_t b = 0; b < queries.size(); b += kForwardBlock) {
    const auto block = queries.subspan(b, std::min(kForwardBlock, queries.size() - b));
    blocks.push_back(forward(*tape_, views, block).probability);
  }
  return nn::concat_rows(blocks);
}

LdtgnTrace Ldtgn::forward(nn::Tape& tape, std::span<const MemoryView* const> views,
                          std::span<const ViewedQuery> queries) const {
  LdtgnTrace trace;
  if (queries.empty()) {
    trace.probability = tape.constant(nn::Matrix(0, 1));
    return trace;
  }
  const bool mem = cfg_.variant == LdtgnVariant::Mem;

  // One slot per distinct (view, node, time); positives and their negatives
  // share the source slot.
  struct Slot {
    const MemoryView* view;
    NodeId node;
    Time t;
  };
  std::vector<Slot> slots;
  std::unordered_map<SlotKey, std::uint32_t, SlotKeyHash> slot_index;
  auto slot_of = [&](std::size_t v, NodeId node, Time t) {
    if (v >= views.size()) throw ContractViolation("ldtgn: query refers to an unknown view");
    const SlotKey key{v, node, std::bit_cast<std::uint64_t>(t)};
    auto [it, fresh] = slot_index.emplace(key, static_cast<std::uint32_t>(slots.size()));
    if (fresh) slots.push_back({views[v], node, t});
    return it->second;
  };
  trace.src_slot.reserve(queries.size());
  trace.dst_slot.reserve(queries.size());
  for (const ViewedQuery& q : queries) {
    trace.src_slot.push_back(slot_of(q.view, q.query.src, q.query.timestamp));
    trace.dst_slot.push_back(slot_of(q.view, q.query.dst, q.query.timestamp));
  }

  const std::size_t ns = slots.size();
  std::vector<double> dts;
  dts.reserve(ns * (cfg_.k_recent + 1) + queries.size());
  std::vector<const StateSnapshot*> self_states, nbr_states;
  for (const Slot& s : slots) {
    dts.push_back(s.t - s.view->node_time(s.node));
    if (mem) self_states.push_back(s.view->state(s.node));
  }

  std::vector<std::uint32_t> row_slot, nbr_tde_row, feat_rows;
  trace.offsets.reserve(ns + 1);
  trace.offsets.push_back(0);
  for (std::uint32_t s = 0; s < ns; ++s) {
    const Slot& slot = slots[s];
    auto nbrs = slot.view->neighbors(slot.node);
    if (nbrs.size() > cfg_.k_recent) nbrs = nbrs.first(cfg_.k_recent);
    if (nbrs.empty()) {
      row_slot.push_back(s);
      nbr_tde_row.push_back(s);
      if (mem) nbr_states.push_back(self_states[s]);
      feat_rows.push_back(kNoFeatures);
    }
    for (const Neighbor& nb : nbrs) {
      row_slot.push_back(s);
      nbr_tde_row.push_back(static_cast<std::uint32_t>(dts.size()));
      dts.push_back(slot.t - slot.view->node_time(nb.node));
      if (mem) nbr_states.push_back(slot.view->state(nb.node));
      feat_rows.push_back(nb.feature_row);
    }
    trace.offsets.push_back(row_slot.size());
  }
  const auto edge_base = static_cast<std::uint32_t>(dts.size());
  std::vector<std::uint32_t> edge_rows(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Event& e = queries[q].query;
    dts.push_back(e.timestamp - views[queries[q].view]->edge_time(e.src, e.dst));
    edge_rows[q] = edge_base + static_cast<std::uint32_t>(q);
  }

  const nn::Var enc = tde_->encode(tape, dts);
  std::vector<std::uint32_t> self_rows(ns);
  std::iota(self_rows.begin(), self_rows.end(), 0u);
  nn::Var v_self = nn::gather_rows(enc, self_rows);
  nn::Var v_nbr = nn::gather_rows(enc, nbr_tde_row);
  if (mem) {
    v_self = nn::concat({v_self, gather_states(tape, self_states, cfg_.state_dim)});
    v_nbr = nn::concat({v_nbr, gather_states(tape, nbr_states, cfg_.state_dim)});
  }

  // W c = W_self v_i + W_nbr v_k + W_edge f_ik, with the v_i term computed once per slot.
  nn::Var hidden = nn::add(nn::gather_rows(nn::matmul(v_self, tape.param(*w_self_)), row_slot),
                           nn::matmul(v_nbr, tape.param(*w_nbr_)));
  if (w_edge_ != nullptr) {
    nn::Matrix f = nn::Matrix::Zero(static_cast<Eigen::Index>(feat_rows.size()),
                                    static_cast<Eigen::Index>(feature_dim_));
    for (std::size_t r = 0; r < feat_rows.size(); ++r) {
      const auto row = features_->row(feat_rows[r]);
      for (std::size_t c = 0; c < row.size(); ++c)
        f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
    hidden = nn::add(hidden, nn::matmul(tape.constant(std::move(f)), tape.param(*w_edge_)));
  }

  const nn::Var logits = nn::leaky_relu(nn::matmul(hidden, tape.param(*attn_)), cfg_.leaky_slope);
  trace.attention = nn::softmax(logits, trace.offsets);
  trace.node_embeddings = nn::weighted_sum(hidden, trace.attention, trace.offsets);
  trace.edge_embeddings = nn::gather_rows(enc, edge_rows);

  nn::Var x = nn::concat({nn::gather_rows(trace.node_embeddings, trace.src_slot),
                          nn::gather_rows(trace.node_embeddings, trace.dst_slot),
                          trace.edge_embeddings});
  for (std::size_t l = 0; l < merge_.size(); ++l) {
    x = nn::linear(x, tape.param(*merge_[l].w), tape.param(*merge_[l].b));
    x = l + 1 < merge_.size() ? nn::relu(x) : nn::sigmoid(x);
  }
  trace.probability = x;
  return trace;
}

namespace {

std::vector<double> row_values(const nn::Matrix& m, Eigen::Index row) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(c)] = m(row, c);
  return out;
}

ViewedQuery single_query(NodeId i, NodeId j, Time t) {
  ViewedQuery q;
  q.query.kind = EventKind::PredictEdge;
  q.query.src = i;
  q.query.dst = j;
  q.query.timestamp = t;
  return q;
}

}  // namespace

std::vector<double> Ldtgn::node_embedding(const MemoryView& view, NodeId i, Time t) const {
  nn::Tape tape(false);
  const MemoryView* views[] = {&view};
  const ViewedQuery q[] = {single_query(i, i, t)};
  const LdtgnTrace tr = forward(tape, views, q);
  return row_values(tr.node_embeddings.value(), tr.src_slot[0]);
}

std::vector<double> Ldtgn::attention_weights(const MemoryView& view, NodeId i, Time t) const {
  nn::Tape tape(false);
  const MemoryView* views[] = {&view};
  const ViewedQuery q[] = {single_query(i, i, t)};
  const LdtgnTrace tr = forward(tape, views, q);
  const nn::Matrix& a = tr.attention.value();
  const std::size_t s = tr.src_slot[0];
  std::vector<double> out;
  for (std::size_t r = tr.offsets[s]; r < tr.offsets[s + 1]; ++r)
    out.push_back(a(static_cast<Eigen::Index>(r), 0));
  return out;
}

std::vector<double> Ldtgn::edge_embedding(const MemoryView& view, NodeId i, NodeId j,
                                          Time t) const {
  nn::Tape tape(false);
  const MemoryView* views[] = {&view};
  const ViewedQuery q[] = {single_query(i, j, t)};
  return row_values(forward(tape, views, q).edge_embeddings.value(), 0);
}

double Ldtgn::predict_one(const MemoryView& view, NodeId i, NodeId j, Time t) const {
  nn::Tape tape(false);
  const MemoryView* views[] = {&view};
  const ViewedQuery q[] = {single_query(i, j, t)};
  return forward(tape, views, q).probability.value()(0, 0);
}

}  // namespace tempograph
