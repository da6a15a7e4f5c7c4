// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/memory.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "tempograph/errors.hpp"
#include "tempograph/nn/ops.hpp"

namespace tempograph {
namespace {

struct Link {
  std::uint32_t out_row;
  nn::Var source;
  std::uint32_t source_row;
};

bool linkable(const nn::Tape& tape, const nn::Var& v) {
  return tape.recording() && v.valid() && v.tape() == &tape && v.requires_grad();
}

// Stacks n rows of width dim. Rows whose origin lives on `tape` route their
// gradient back to that origin.
template <class RowFn>
nn::Var stack_linked(nn::Tape& tape, std::size_t n, std::size_t dim, RowFn row_of) {
  nn::Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  std::vector<Link> links;
  for (std::size_t r = 0; r < n; ++r) {
    auto [values, source, source_row] = row_of(r);
    for (std::size_t c = 0; c < dim; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = c < values.size() ? values[c] : 0.0;
    if (source != nullptr && linkable(tape, *source))
      links.push_back({static_cast<std::uint32_t>(r), *source, source_row});
  }
  if (links.empty()) return tape.constant(std::move(out));
  std::stable_sort(links.begin(), links.end(),
                   [](const Link& a, const Link& b) { return a.source.id() < b.source.id(); });
  return tape.record(std::move(out), true, [links = std::move(links)](nn::Tape& t, const nn::Matrix& g) {
    std::size_t i = 0;
    while (i < links.size()) {
      const nn::Var src = links[i].source;
      nn::Matrix acc = nn::Matrix::Zero(src.rows(), src.cols());
      for (; i < links.size() && links[i].source.id() == src.id(); ++i)
        acc.row(links[i].source_row) += g.row(links[i].out_row);
      t.accumulate(src, acc);
    }
  });
}

void mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

void mix_double(std::uint64_t& h, double v) { mix(h, std::bit_cast<std::uint64_t>(v)); }

template <class Map>
std::vector<typename Map::key_type> sorted_keys(const Map& m) {
  std::vector<typename Map::key_type> keys;
  keys.reserve(m.size());
  for (const auto& kv : m) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

// ---- NodeStateTable ----

std::span<const double> NodeStateTable::state(NodeId i) const {
  const std::size_t begin = static_cast<std::size_t>(i) * dim_;
  if (begin + dim_ > values_.size()) return zeros_;
  return {values_.data() + begin, dim_};
}

const NodeStateTable::TapeRow* NodeStateTable::tape_row(NodeId i) const {
  auto it = tape_rows_.find(i);
  return it == tape_rows_.end() ? nullptr : &it->second;
}

nn::Var NodeStateTable::gather(nn::Tape& tape, std::span<const NodeId> nodes) const {
  return stack_linked(tape, nodes.size(), dim_, [&](std::size_t r) {
    const TapeRow* link = tape_row(nodes[r]);
    return std::tuple{state(nodes[r]), link ? &link->var : nullptr, link ? link->row : 0u};
  });
}

void NodeStateTable::set(NodeId i, std::span<const double> values) {
  if (values.size() != dim_)
    throw DimensionError("node state: expected width " + std::to_string(dim_) + ", got " +
                         std::to_string(values.size()));
  const std::size_t begin = static_cast<std::size_t>(i) * dim_;
  if (begin + dim_ > values_.size()) values_.resize(begin + dim_, 0.0);
  std::copy(values.begin(), values.end(), values_.begin() + static_cast<std::ptrdiff_t>(begin));
  tape_rows_.erase(i);
}

void NodeStateTable::set_from_tape(NodeId i, nn::Var var, std::uint32_t row) {
  const nn::Matrix& v = var.value();
  if (static_cast<std::size_t>(v.cols()) != dim_ || row >= v.rows())
    throw DimensionError("node state: tape row out of shape");
  set(i, std::span<const double>(v.data() + static_cast<std::size_t>(row) * dim_, dim_));
  if (var.requires_grad()) tape_rows_[i] = {var, row};
}

void NodeStateTable::zero(NodeId i) {
  const std::size_t begin = static_cast<std::size_t>(i) * dim_;
  if (begin + dim_ <= values_.size())
    std::fill_n(values_.begin() + static_cast<std::ptrdiff_t>(begin), dim_, 0.0);
  tape_rows_.erase(i);
}

void NodeStateTable::clear() {
  values_.clear();
  tape_rows_.clear();
}

// ---- MemoryView ----

Time MemoryView::node_time(NodeId i) const {
  auto it = node_times.find(i);
  return it == node_times.end() ? 0.0 : it->second;
}

Time MemoryView::edge_time(NodeId i, NodeId j) const {
  auto it = edge_times.find(edge_key(i, j));
  return it == edge_times.end() ? 0.0 : it->second;
}

std::span<const Neighbor> MemoryView::neighbors(NodeId i) const {
  auto it = frozen_neighbors.find(i);
  if (it == frozen_neighbors.end()) return {};
  return it->second;
}

const StateSnapshot* MemoryView::state(NodeId i) const {
  auto it = node_states.find(i);
  return it == node_states.end() ? nullptr : &it->second;
}

MemoryView extract_view(const TemporalGraphStore& store, const NodeStateTable* states,
                        std::span<const NodeId> query_nodes, std::span<const EdgeKey> query_edges,
                        std::size_t hop, std::size_t k) {
  MemoryView view;
  view.view_time = store.clock();
  view.features = store.features();
  view.state_dim = states ? states->dim() : 0;

  auto capture = [&](NodeId i) {
    if (!view.node_times.emplace(i, store.node_time(i)).second) return false;
    if (states != nullptr) {
      StateSnapshot snap;
      const auto s = states->state(i);
      snap.values.assign(s.begin(), s.end());
      if (const auto* link = states->tape_row(i)) {
        snap.source = link->var;
        snap.row = link->row;
      }
      view.node_states.emplace(i, std::move(snap));
    }
    return true;
  };

  std::vector<NodeId> frontier;
  for (NodeId i : query_nodes)
    if (capture(i)) frontier.push_back(i);
  for (std::size_t depth = 0; depth < hop && !frontier.empty(); ++depth) {
    std::vector<NodeId> next;
    for (NodeId i : frontier) {
      if (view.frozen_neighbors.count(i)) continue;
      auto list = store.recent_neighbors(i, k);
      for (const Neighbor& nb : list)
        if (capture(nb.node)) next.push_back(nb.node);
      view.frozen_neighbors.emplace(i, std::move(list));
    }
    frontier = std::move(next);
  }
  for (EdgeKey key : query_edges) {
    const auto [a, b] = edge_nodes(key);
    view.edge_times.emplace(key, store.edge_time(a, b));
  }
  return view;
}

std::uint64_t fingerprint(const MemoryView& view) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  mix_double(h, view.view_time);
  for (NodeId i : sorted_keys(view.node_times)) {
    mix(h, i);
    mix_double(h, view.node_times.at(i));
  }
  for (EdgeKey e : sorted_keys(view.edge_times)) {
    mix(h, e);
    mix_double(h, view.edge_times.at(e));
  }
  for (NodeId i : sorted_keys(view.node_states)) {
    mix(h, i);
    for (double v : view.node_states.at(i).values) mix_double(h, v);
  }
  for (NodeId i : sorted_keys(view.frozen_neighbors)) {
    mix(h, i);
    for (const Neighbor& nb : view.frozen_neighbors.at(i)) {
      mix(h, nb.node);
      mix_double(h, nb.time);
      mix(h, nb.feature_row);
      mix(h, nb.seq);
    }
  }
  return h;
}

nn::Var gather_states(nn::Tape& tape, std::span<const StateSnapshot* const> snapshots,
                      std::size_t dim) {
  return stack_linked(tape, snapshots.size(), dim, [&](std::size_t r) {
    const StateSnapshot* s = snapshots[r];
    if (s == nullptr) return std::tuple{std::span<const double>{}, static_cast<const nn::Var*>(nullptr), 0u};
    return std::tuple{std::span<const double>(s->values), &s->source, s->row};
  });
}

// ---- messages ----

std::pair<Message, Message> build_messages(const TemporalGraphStore& store,
                                           const NodeStateTable& states, const Event& e,
                                           const TimeEncoder& tde, bool edge_features) {
  if (e.kind != EventKind::AddEdge) throw ContractViolation("build_messages: AddEdge required");
  nn::Tape tape(false);
  const double dts[2] = {e.timestamp - store.node_time(e.src), e.timestamp - store.node_time(e.dst)};
  const nn::Matrix enc = tde.encode(tape, dts).value();
  std::span<const double> feats;
  if (edge_features && store.features()) feats = store.features()->row(e.feature_row);
  const std::size_t fdim = edge_features && store.features() ? store.features()->dim() : 0;

  auto make = [&](NodeId self, NodeId other, Eigen::Index row) {
    Message m;
    m.target = self;
    m.timestamp = e.timestamp;
    m.seq = e.seq;
    const auto s_self = states.state(self);
    const auto s_other = states.state(other);
    m.payload.assign(s_self.begin(), s_self.end());
    m.payload.insert(m.payload.end(), s_other.begin(), s_other.end());
    for (Eigen::Index c = 0; c < enc.cols(); ++c) m.payload.push_back(enc(row, c));
    for (std::size_t c = 0; c < fdim; ++c) m.payload.push_back(c < feats.size() ? feats[c] : 0.0);
    return m;
  };
  return {make(e.src, e.dst, 0), make(e.dst, e.src, 1)};
}

Message aggregate_messages(std::span<const Message> messages) {
  if (messages.empty()) throw ContractViolation("aggregate_messages: no messages");
  const Message* best = &messages.front();
  for (const Message& m : messages) {
    if (m.target != best->target)
      throw ContractViolation("aggregate_messages: messages target different nodes");
    if (std::tie(m.timestamp, m.seq) > std::tie(best->timestamp, best->seq)) best = &m;
  }
  return *best;
}

// ---- GRU ----

Gru::Gru(std::size_t input_dim, std::size_t hidden_dim, nn::ParamSet& params,
         const std::string& prefix, std::mt19937_64& rng)
    : input_dim_(input_dim), hidden_dim_(hidden_dim) {
  if (hidden_dim == 0) throw ConfigError("gru: hidden_dim must be at least 1");
  const auto in = static_cast<Eigen::Index>(input_dim + hidden_dim);
  const auto h = static_cast<Eigen::Index>(hidden_dim);
  wz_ = &params.add(prefix + ".wz", uniform_init(in, h, hidden_dim, rng));
  bz_ = &params.add(prefix + ".bz", uniform_init(1, h, hidden_dim, rng));
  wr_ = &params.add(prefix + ".wr", uniform_init(in, h, hidden_dim, rng));
  br_ = &params.add(prefix + ".br", uniform_init(1, h, hidden_dim, rng));
  wh_ = &params.add(prefix + ".wh", uniform_init(in, h, hidden_dim, rng));
  bh_ = &params.add(prefix + ".bh", uniform_init(1, h, hidden_dim, rng));
}

nn::Var Gru::step(nn::Var m, nn::Var s) const {
  if (static_cast<std::size_t>(m.cols()) != input_dim_ ||
      static_cast<std::size_t>(s.cols()) != hidden_dim_ || m.rows() != s.rows())
    throw DimensionError("gru: message " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " and state " + std::to_string(s.rows()) +
                         "x" + std::to_string(s.cols()) + " do not match the cell");
  nn::Tape& tape = *m.tape();
  const nn::Var x = nn::concat({m, s});
  const nn::Var z = nn::sigmoid(nn::linear(x, tape.param(*wz_), tape.param(*bz_)));
  const nn::Var r = nn::sigmoid(nn::linear(x, tape.param(*wr_), tape.param(*br_)));
  const nn::Var h =
      nn::tanh(nn::linear(nn::concat({m, nn::mul(r, s)}), tape.param(*wh_), tape.param(*bh_)));
  return nn::add(nn::mul(nn::one_minus(z), s), nn::mul(z, h));
}

std::vector<double> gru_update(const Gru& gru, std::span<const double> state,
                               std::span<const double> payload) {
  nn::Tape tape(false);
  nn::Matrix s(1, static_cast<Eigen::Index>(state.size()));
  nn::Matrix m(1, static_cast<Eigen::Index>(payload.size()));
  std::copy(state.begin(), state.end(), s.data());
  std::copy(payload.begin(), payload.end(), m.data());
  const nn::Matrix out = gru.step(tape.constant(std::move(m)), tape.constant(std::move(s))).value();
  return {out.data(), out.data() + out.size()};
}

// ---- MemoryModule ----

MemoryModule::MemoryModule(std::shared_ptr<const FeatureTable> features, Options options,
                           const TimeEncoder* tde, const Gru* gru)
    : options_(options),
      store_(features),
      states_(options.with_states && gru ? gru->hidden_dim() : 0),
      tde_(tde),
      gru_(gru) {
  if (!options_.with_states) return;
  if (tde_ == nullptr || gru_ == nullptr)
    throw ConfigError("memory: stateful memory needs a time encoder and a GRU");
  const std::size_t fdim =
      options_.messages_include_edge_features && features ? features->dim() : 0;
  message_dim_ = 2 * gru_->hidden_dim() + tde_->out_dim() + fdim;
  if (gru_->input_dim() != message_dim_)
    throw ConfigError("memory: GRU input width " + std::to_string(gru_->input_dim()) +
                      " does not match message width " + std::to_string(message_dim_));
}

void MemoryModule::process_memory_batch(std::span<const Event> batch, nn::Tape& tape) {
  if (options_.with_states) {
    struct Pending {
      NodeId node, other;
      Time t;
      std::uint32_t feature_row;
    };
    std::unordered_map<NodeId, std::size_t> slot;
    std::vector<Pending> latest;
    for (const Event& e : batch) {
      if (e.kind != EventKind::AddEdge) continue;
      for (const auto& [self, other] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}}) {
        const Pending p{self, other, e.timestamp, e.feature_row};
        auto [it, fresh] = slot.emplace(self, latest.size());
        if (fresh)
          latest.push_back(p);
        else
          latest[it->second] = p;
      }
    }
    if (!latest.empty()) {
      std::vector<NodeId> own, other;
      std::vector<double> dts;
      own.reserve(latest.size());
      other.reserve(latest.size());
      dts.reserve(latest.size());
      for (const Pending& p : latest) {
        own.push_back(p.node);
        other.push_back(p.other);
        dts.push_back(std::max(0.0, p.t - store_.node_time(p.node)));
      }
      const nn::Var s_own = states_.gather(tape, own);
      std::vector<nn::Var> parts{s_own, states_.gather(tape, other), tde_->encode(tape, dts)};
      if (options_.messages_include_edge_features && store_.features()) {
        const FeatureTable& ft = *store_.features();
        nn::Matrix f = nn::Matrix::Zero(static_cast<Eigen::Index>(latest.size()),
                                        static_cast<Eigen::Index>(ft.dim()));
        for (std::size_t r = 0; r < latest.size(); ++r) {
          const auto row = ft.row(latest[r].feature_row);
          for (std::size_t c = 0; c < row.size(); ++c)
            f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
        }
        parts.push_back(tape.constant(std::move(f)));
      }
      const nn::Var next = gru_->step(nn::concat(parts), s_own);
      for (std::size_t r = 0; r < own.size(); ++r)
        states_.set_from_tape(own[r], next, static_cast<std::uint32_t>(r));
    }
  }
  for (const Event& e : batch) {
    store_.apply_update(e);
    if (options_.with_states && e.kind == EventKind::RemoveNode) states_.zero(e.src);
  }
}

MemoryView MemoryModule::view(std::span<const NodeId> nodes, std::span<const EdgeKey> edges,
                              std::size_t hop, std::size_t k) const {
  return extract_view(store_, options_.with_states ? &states_ : nullptr, nodes, edges, hop, k);
}

void MemoryModule::reset() {
  store_.clear();
  states_.clear();
}

}  // namespace tempograph
