// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_ANALYZER_HPP
#define TEMPOGRAPH_ANALYZER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tempograph/event.hpp"

namespace tempograph {

/// Missing-update statistics for one (batch size, hop) setting.
struct MissingUpdateReport {
  std::size_t batch_size = 0;
  std::size_t hop = 0;
  /// Share of inputs with at least one missing update.
  double ratio_affected = 0.0;
  /// Missing updates per input, averaged over every input of the stream.
  double avg_missing_per_input = 0.0;
  std::size_t inputs_counted = 0;
};

/// Replays an AddEdge stream in consecutive batches. Inside a batch every
/// event is first an input and then an update; update i is missing for input
/// j > i when an endpoint of i lies in the <=hop neighborhood (node itself
/// included) of either endpoint of j, on the graph as it stood at the batch
/// start. Edges are undirected. The final partial batch counts.
///
/// Throws UnsupportedError for hop outside {1, 2} and ContractViolation for
/// batch_size 0 or non-AddEdge events.
MissingUpdateReport count_missing_updates(std::span<const Event> events, std::size_t batch_size,
                                          std::size_t hop);

/// One independent report per batch size.
std::vector<MissingUpdateReport> sweep(std::span<const Event> events,
                                       std::span<const std::size_t> batch_sizes, std::size_t hop);

}  // namespace tempograph

#endif  // TEMPOGRAPH_ANALYZER_HPP
