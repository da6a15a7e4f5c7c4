// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tempograph/errors.hpp"

namespace tempograph {

EventStream make_synthetic_stream(const SyntheticStreamConfig& cfg) {
  if (cfg.num_nodes < 2) throw ConfigError("synthetic stream needs at least two nodes");
  EventStream stream;
  stream.features = std::make_shared<FeatureTable>(cfg.feature_dim);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> gap(1.0 / cfg.mean_gap);
  std::normal_distribution<double> noise(0.0, 1.0);

  // Zipf-like activity: node r is picked with weight 1 / (r + 1).
  std::vector<double> weights(cfg.num_nodes);
  for (std::size_t r = 0; r < cfg.num_nodes; ++r) weights[r] = 1.0 / static_cast<double>(r + 1);
  std::discrete_distribution<std::size_t> active(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> any(0, cfg.num_nodes - 1);

  std::vector<std::pair<NodeId, NodeId>> recent;
  recent.reserve(cfg.repeat_window);
  std::size_t ring = 0;
  std::vector<double> feats(cfg.feature_dim);
  Time t = 0.0;
  for (std::size_t n = 0; n < cfg.num_events; ++n) {
    if (n > 0 && unit(rng) >= cfg.tie_probability) t += gap(rng);
    NodeId src = 0, dst = 0;
    if (!recent.empty() && unit(rng) < cfg.repeat_probability) {
      std::uniform_int_distribution<std::size_t> pick(0, recent.size() - 1);
      std::tie(src, dst) = recent[pick(rng)];
    } else {
      src = static_cast<NodeId>(active(rng));
      do {
        dst = static_cast<NodeId>(any(rng));
      } while (dst == src);
    }
    for (double& f : feats) f = noise(rng);
    stream.add_edge(src, dst, t, feats);
    if (recent.size() < cfg.repeat_window) {
      recent.emplace_back(src, dst);
    } else {
      recent[ring] = {src, dst};
      ring = (ring + 1) % cfg.repeat_window;
    }
  }
  stream.num_nodes = cfg.num_nodes;
  return stream;
}

EventStream make_star_stream(std::size_t num_events, std::size_t num_leaves) {
  if (num_leaves == 0) throw ConfigError("star stream needs at least one leaf");
  EventStream stream;
  for (std::size_t n = 0; n < num_events; ++n)
    stream.add_edge(0, static_cast<NodeId>(1 + n % num_leaves), static_cast<Time>(n + 1));
  return stream;
}

EventStream make_planted_threshold_stream(const PlantedThresholdConfig& cfg) {
  if (!(cfg.span > 0.0)) throw ConfigError("planted stream: span must be positive");
  if (cfg.num_queries == 0) throw ConfigError("planted stream: need at least one query");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Event> events;
  events.reserve(2 * cfg.num_queries);
  for (std::size_t k = 0; k < cfg.num_queries; ++k) {
    const auto a = static_cast<NodeId>(2 * k);
    const Time first = static_cast<double>(k) * cfg.spacing;
    const double u = unit(rng);
    Event add;
    add.kind = EventKind::AddEdge;
    add.src = a;
    add.dst = a + 1;
    add.timestamp = first;
    Event q = add;
    q.kind = EventKind::PredictEdge;
    q.timestamp = first + std::expm1(u * std::log1p(cfg.span));
    q.label = u < cfg.threshold ? 1 : 0;
    events.push_back(add);
    events.push_back(q);
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
    if (x.timestamp != y.timestamp) return x.timestamp < y.timestamp;
    return is_update(x.kind) && !is_update(y.kind);
  });
  EventStream stream;
  for (std::size_t i = 0; i < events.size(); ++i) events[i].seq = i;
  stream.events = std::move(events);
  stream.num_nodes = 2 * cfg.num_queries;
  return stream;
}

double planted_gap(const PlantedThresholdConfig& cfg) {
  return std::expm1(cfg.threshold * std::log1p(cfg.span));
}

}  // namespace tempograph
