// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_METRICS_HPP
#define TEMPOGRAPH_METRICS_HPP

#include <span>

namespace tempograph {

// Ranking metrics over binary labels (nonzero = positive). Both throw
// MetricError on length mismatch or when a class is missing.

/// Mean over positives of the precision among all items scoring at least as
/// high as that positive. Tied scores form one threshold.
double average_precision(std::span<const double> scores, std::span<const double> labels);

/// Probability that a random positive outscores a random negative; ties count 1/2.
double auc_roc(std::span<const double> scores, std::span<const double> labels);

}  // namespace tempograph

#endif  // TEMPOGRAPH_METRICS_HPP
