// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_EDGEBANK_HPP
#define TEMPOGRAPH_EDGEBANK_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempograph/event.hpp"
#include "tempograph/memory.hpp"
#include "tempograph/model.hpp"
#include "tempograph/nn/tensor.hpp"

namespace tempograph {

struct EdgeBankEntry {
  Time last_seen_time = 0.0;
  /// Value of the update counter right after the last sighting.
  std::uint64_t last_seen_ordinal = 0;
  std::uint64_t seen_count = 0;

  friend bool operator==(const EdgeBankEntry&, const EdgeBankEntry&) = default;
};

/// Interaction history of every observed edge key.
class EdgeBankMemory {
 public:
  /// Records an AddEdge. Other update kinds advance the update counter only.
  void update(const Event& e);

  const EdgeBankEntry* find(EdgeKey key) const;
  std::uint64_t update_count() const noexcept { return update_count_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<EdgeKey, EdgeBankEntry>& entries() const noexcept { return entries_; }
  void clear();

 private:
  std::unordered_map<EdgeKey, EdgeBankEntry> entries_;
  std::uint64_t update_count_ = 0;
};

/// Throws ContractViolation unless e is AddEdge.
void edgebank_update(EdgeBankMemory& mem, const Event& e);

enum class EdgeBankVariant { Infinite, TimeWindow, Threshold, Repeat };

/// `param` is the window length in time units (tw), the number of elapsed
/// updates (th) or the minimum sighting count (re); unused by inf.
struct EdgeBankRule {
  EdgeBankVariant variant = EdgeBankVariant::Infinite;
  double param = 1000.0;
};

/// Parses "inf", "tw", "th" or "re". Throws ConfigError otherwise.
EdgeBankVariant parse_edgebank_variant(std::string_view name);
std::string_view to_string(EdgeBankVariant v) noexcept;

/// Decision for one edge given its history (null when never seen), the query
/// time and the update counter at query time.
bool edgebank_decide(const EdgeBankEntry* entry, const EdgeBankRule& rule, Time t,
                     std::uint64_t update_count);

bool edgebank_predict(const EdgeBankMemory& mem, const EdgeBankRule& rule, NodeId i, NodeId j,
                      Time t);

/// EdgeBank as a streaming link model. Scores are 1 or 0.
class EdgeBankModel final : public LinkModel {
 public:
  explicit EdgeBankModel(EdgeBankRule rule) : rule_(rule) {}

  std::string name() const override;
  void reset() override;
  void begin_batch(nn::Tape& tape) override;
  void end_batch() override;
  std::size_t extract_view(std::span<const Event> queries) override;
  void process_memory_batch(std::span<const Event> updates) override;
  nn::Var predict(std::span<const ViewedQuery> queries) override;

  const EdgeBankMemory& memory() const noexcept { return memory_; }

 private:
  struct View {
    std::uint64_t update_count = 0;
    std::unordered_map<EdgeKey, EdgeBankEntry> entries;
  };

  EdgeBankRule rule_;
  EdgeBankMemory memory_;
  std::vector<View> views_;
  nn::Tape* tape_ = nullptr;
};

enum class LinearVariant { EdgeOnly, NodeAware };

/// Learnable relaxation of the threshold rule over normalized time differences:
///   EdgeOnly:  sigmoid(w dt_ij + b)
///   NodeAware: sigmoid(w1 dt_ij + w2 dt_i + w3 dt_j + b)
/// Parameters start at zero.
class LinearTimeModel final : public LinkModel {
 public:
  LinearTimeModel(LinearVariant variant, double span,
                  std::shared_ptr<const FeatureTable> features = nullptr);

  std::string name() const override;
  void reset() override;
  void begin_batch(nn::Tape& tape) override;
  void end_batch() override;
  std::size_t extract_view(std::span<const Event> queries) override;
  void process_memory_batch(std::span<const Event> updates) override;
  nn::Var predict(std::span<const ViewedQuery> queries) override;
  nn::ParamSet* params() override { return &params_; }

  /// Probability for one query from raw timestamps.
  double probability(Time t, Time t_ij, Time t_i, Time t_j) const;

  LinearVariant variant() const noexcept { return variant_; }
  double span() const noexcept { return span_; }
  /// Weights as a column: 1 x 1 for EdgeOnly, 3 x 1 for NodeAware.
  nn::Parameter& weights() noexcept { return *w_; }
  nn::Parameter& bias() noexcept { return *b_; }
  const nn::Parameter& weights() const noexcept { return *w_; }
  const nn::Parameter& bias() const noexcept { return *b_; }

 private:
  LinearVariant variant_;
  double span_;
  nn::ParamSet params_;
  nn::Parameter* w_;
  nn::Parameter* b_;
  MemoryModule memory_;
  std::vector<MemoryView> views_;
  nn::Tape* tape_ = nullptr;
};

double linear_time_predict(const LinearTimeModel& model, Time t, Time t_ij, Time t_i, Time t_j);

}  // namespace tempograph

#endif  // TEMPOGRAPH_EDGEBANK_HPP
