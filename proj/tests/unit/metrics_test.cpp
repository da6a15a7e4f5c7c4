// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tempograph/errors.hpp"
#include "tempograph/metrics.hpp"

namespace tempograph {
namespace {

using Vec = std::vector<double>;

// O(n^2) pairwise AUC.
double brute_auc(const Vec& s, const Vec& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

// Precision at each positive's score threshold, averaged.
double brute_ap(const Vec& s, const Vec& y) {
  double sum = 0, positives = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] == 0) continue;
    positives += 1;
    double above = 0, hits = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] >= s[i]) {
        above += 1;
        hits += y[j] != 0;
      }
    }
    sum += hits / above;
  }
  return sum / positives;
}

TEST(Metrics, HandExamples) {
  const Vec s{0.9, 0.8, 0.7, 0.1};
  const Vec y{1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(average_precision(s, y), (1.0 + 2.0 / 3.0) / 2.0);
  EXPECT_DOUBLE_EQ(auc_roc(s, y), 3.0 / 4.0);
  EXPECT_NEAR(average_precision(s, y), 5.0 / 6.0, 1e-15);
}

TEST(Metrics, PerfectRankingScoresOne) {
  const Vec s{0.1, 0.95, 0.3, 0.99};
  const Vec y{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(average_precision(s, y), 1.0);
  EXPECT_DOUBLE_EQ(auc_roc(s, y), 1.0);
}

TEST(Metrics, AllTiedScores) {
  const Vec s(10, 0.5);
  Vec y(10, 0);
  y[0] = y[3] = y[7] = 1;
  EXPECT_DOUBLE_EQ(auc_roc(s, y), 0.5);
  EXPECT_DOUBLE_EQ(average_precision(s, y), 0.3);
}

TEST(Metrics, MatchBruteForceWithTies) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(2, 300);
  std::uniform_int_distribution<int> level(0, 20);
  std::bernoulli_distribution pos(0.4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    Vec s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = level(rng) / 20.0;
      y[i] = pos(rng);
    }
    y[0] = 1;
    y[1] = 0;
    ASSERT_NEAR(auc_roc(s, y), brute_auc(s, y), 1e-12) << trial;
    ASSERT_NEAR(average_precision(s, y), brute_ap(s, y), 1e-12) << trial;
  }
}

TEST(Metrics, AreInvariantToMonotoneRescaling) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  Vec s(200), t(200), y(200);
  for (int i = 0; i < 200; ++i) {
    s[i] = u(rng);
    t[i] = std::exp(3 * s[i]) - 7;
    y[i] = u(rng) < s[i];
  }
  EXPECT_DOUBLE_EQ(auc_roc(s, y), auc_roc(t, y));
  EXPECT_DOUBLE_EQ(average_precision(s, y), average_precision(t, y));
}

TEST(Metrics, RejectDegenerateInputs) {
  EXPECT_THROW(auc_roc(Vec{0.1, 0.2}, Vec{1}), MetricError);
  EXPECT_THROW(auc_roc(Vec{0.1, 0.2}, Vec{1, 1}), MetricError);
  EXPECT_THROW(average_precision(Vec{0.1, 0.2}, Vec{0, 0}), MetricError);
  EXPECT_THROW(average_precision(Vec{}, Vec{}), MetricError);
}

}  // namespace
}  // namespace tempograph
