// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_TESTS_TEST_UTIL_HPP
#define TEMPOGRAPH_TESTS_TEST_UTIL_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tempograph/event.hpp"

namespace tempograph::testing {

// AddEdge stream over `nodes` nodes with non-decreasing integer-ish times and
// frequent ties.
inline EventStream random_add_stream(std::size_t n, std::size_t nodes, std::uint64_t seed,
                                     std::size_t feature_dim = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(nodes - 1));
  std::uniform_int_distribution<int> gap(0, 3);
  std::normal_distribution<double> feat(0.0, 1.0);
  EventStream s;
  s.features = std::make_shared<FeatureTable>(feature_dim);
  double t = 1.0;
  std::vector<double> row(feature_dim);
  for (std::size_t i = 0; i < n; ++i) {
    t += gap(rng);
    NodeId a = node(rng);
    NodeId b = node(rng);
    if (a == b) b = static_cast<NodeId>((b + 1) % nodes);
    for (double& x : row) x = feat(rng);
    s.add_edge(a, b, t, row);
  }
  s.num_nodes = nodes;
  return s;
}

// For every update: a positive query for it, a query to a random
// destination, then the update itself. Labels are set; seq is the position.
inline std::vector<Event> with_queries(std::span<const Event> updates, std::size_t nodes,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(nodes - 1));
  std::vector<Event> out;
  out.reserve(3 * updates.size());
  for (const Event& e : updates) {
    Event q = e;
    q.kind = EventKind::PredictEdge;
    q.label = 1;
    out.push_back(q);
    q.dst = node(rng);
    q.label = 0;
    out.push_back(q);
    out.push_back(e);
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].seq = i;
  return out;
}

// Directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("tempograph_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace tempograph::testing

#endif  // TEMPOGRAPH_TESTS_TEST_UTIL_HPP
