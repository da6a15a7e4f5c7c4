// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/split.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tempograph/errors.hpp"

namespace tempograph {

bool DatasetSplit::is_replayable(std::size_t i) const {
  if (train.contains(i)) return !train_dropped[i - train.begin];
  return true;
}

DatasetSplit chronological_split(std::span<const Event> events, std::array<double, 3> fractions,
                                 bool inductive, double new_node_fraction,
                                 std::uint64_t rng_seed) {
  const double total = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(total - 1.0) > 1e-9 || fractions[0] < 0 || fractions[1] < 0 || fractions[2] < 0)
    throw ConfigError("split fractions must be non-negative and sum to 1");
  if (new_node_fraction < 0.0 || new_node_fraction > 1.0)
    throw ConfigError("new_node_fraction must lie in [0, 1]");

  const std::size_t m = events.size();
  const auto b1 = static_cast<std::size_t>(std::floor(fractions[0] * static_cast<double>(m)));
  const auto b2 =
      static_cast<std::size_t>(std::floor((fractions[0] + fractions[1]) * static_cast<double>(m)));

  DatasetSplit split;
  split.inductive = inductive;
  split.train = {0, b1};
  split.val = {b1, b2};
  split.test = {b2, m};
  split.train_dropped.assign(b1, false);
  if (split.train.size() == 0 || split.val.size() == 0 || split.test.size() == 0)
    throw ConfigError("chronological split of " + std::to_string(m) +
                      " events leaves an empty partition");

  auto touches = [](const Event& e, const std::unordered_set<NodeId>& set) {
    return set.contains(e.src) || (e.dst != kNoNode && set.contains(e.dst));
  };

  if (!inductive) {
    for (std::size_t i = 0; i < b1; ++i) split.train_events.push_back(i);
    for (std::size_t i = b1; i < b2; ++i) split.val_events.push_back(i);
    for (std::size_t i = b2; i < m; ++i) split.test_events.push_back(i);
    return split;
  }

  // Candidates: every node seen at or after the train boundary, in id order
  // so the draw depends only on the seed.
  std::set<NodeId> later;
  for (std::size_t i = b1; i < m; ++i) {
    later.insert(events[i].src);
    if (events[i].dst != kNoNode) later.insert(events[i].dst);
  }
  std::vector<NodeId> candidates(later.begin(), later.end());
  std::mt19937_64 rng(rng_seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const auto reserve = static_cast<std::size_t>(
      std::floor(new_node_fraction * static_cast<double>(candidates.size())));
  split.reserved_nodes.insert(candidates.begin(),
                              candidates.begin() + static_cast<std::ptrdiff_t>(reserve));

  std::unordered_set<NodeId> train_nodes;
  for (std::size_t i = 0; i < b1; ++i) {
    if (touches(events[i], split.reserved_nodes)) {
      split.train_dropped[i] = true;
      continue;
    }
    split.train_events.push_back(i);
    train_nodes.insert(events[i].src);
    if (events[i].dst != kNoNode) train_nodes.insert(events[i].dst);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Event& e = events[i];
    if (!train_nodes.contains(e.src)) split.new_node_set.insert(e.src);
    if (e.dst != kNoNode && !train_nodes.contains(e.dst)) split.new_node_set.insert(e.dst);
  }
  for (std::size_t i = b1; i < b2; ++i)
    if (touches(events[i], split.new_node_set)) split.val_events.push_back(i);
  for (std::size_t i = b2; i < m; ++i)
    if (touches(events[i], split.new_node_set)) split.test_events.push_back(i);
  if (split.train_events.empty() || split.val_events.empty() || split.test_events.empty())
    throw ConfigError("inductive split leaves an empty partition");
  return split;
}

NegativeSampler::NegativeSampler(std::vector<NodeId> node_universe, std::uint64_t seed)
    : universe_(std::move(node_universe)), rng_(seed) {
  if (universe_.empty()) throw ContractViolation("NegativeSampler: empty node universe");
  pick_ = std::uniform_int_distribution<std::size_t>(0, universe_.size() - 1);
}

Event NegativeSampler::sample(const Event& positive) {
  Event neg = positive;
  neg.kind = EventKind::PredictEdge;
  neg.dst = universe_[pick_(rng_)];
  neg.feature_row = kNoFeatures;
  neg.label = 0;
  return neg;
}

Event sample_negative(const Event& positive, std::span<const NodeId> node_universe,
                      std::mt19937_64& rng) {
  if (node_universe.empty()) throw ContractViolation("sample_negative: empty node universe");
  std::uniform_int_distribution<std::size_t> pick(0, node_universe.size() - 1);
  Event neg = positive;
  neg.kind = EventKind::PredictEdge;
  neg.dst = node_universe[pick(rng)];
  neg.feature_row = kNoFeatures;
  neg.label = 0;
  return neg;
}

std::vector<NodeId> destination_universe(std::span<const Event> events) {
  std::vector<NodeId> out;
  for (const Event& e : events)
    if (e.kind == EventKind::AddEdge) out.push_back(e.dst);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tempograph
