// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "tempograph/errors.hpp"

namespace tempograph {
namespace {

std::size_t check(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size())
    throw MetricError("metric: " + std::to_string(scores.size()) + " scores for " +
                      std::to_string(labels.size()) + " labels");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw MetricError("metric: NaN score");
    pos += labels[i] != 0.0 ? 1 : 0;
  }
  if (pos == 0 || pos == labels.size())
    throw MetricError("metric: labels need at least one positive and one negative");
  return pos;
}

std::vector<std::size_t> order_by_score_desc(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

double average_precision(std::span<const double> scores, std::span<const double> labels) {
  const std::size_t positives = check(scores, labels);
  const auto order = order_by_score_desc(scores);
  double sum = 0.0;
  std::size_t seen = 0, hits = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i, group_hits = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      group_hits += labels[order[j]] != 0.0 ? 1 : 0;
      ++j;
    }
    seen += j - i;
    hits += group_hits;
    sum += static_cast<double>(group_hits) * static_cast<double>(hits) / static_cast<double>(seen);
    i = j;
  }
  return sum / static_cast<double>(positives);
}

double auc_roc(std::span<const double> scores, std::span<const double> labels) {
  const std::size_t positives = check(scores, labels);
  const std::size_t negatives = scores.size() - positives;
  const auto order = order_by_score_desc(scores);
  // Walk from the top: each positive beats every negative below its tie group.
  double wins = 0.0;
  std::size_t negatives_above = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i, group_pos = 0, group_neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] != 0.0 ? group_pos : group_neg) += 1;
      ++j;
    }
    const double below = static_cast<double>(negatives - negatives_above - group_neg);
    wins += static_cast<double>(group_pos) * (below + 0.5 * static_cast<double>(group_neg));
    negatives_above += group_neg;
    i = j;
  }
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

}  // namespace tempograph
