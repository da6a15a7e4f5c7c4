// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_LDTGN_HPP
#define TEMPOGRAPH_LDTGN_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tempograph/memory.hpp"
#include "tempograph/model.hpp"
#include "tempograph/nn/tensor.hpp"
#include "tempograph/time_encoder.hpp"

namespace tempograph {

enum class LdtgnVariant { Plain, Mem };

struct LdtgnConfig {
  LdtgnVariant variant = LdtgnVariant::Plain;
  /// Defaults to MlpTde for Plain and Time2Vec for Mem.
  std::optional<TimeEncoderKind> tde_kind;
  std::size_t tde_dim = 100;
  std::size_t state_dim = 100;
  /// Output width of the attention map W, i.e. the node embedding width.
  std::size_t embed_dim = 100;
  /// Width of the first merge layer.
  std::size_t merge_hidden = 100;
  std::size_t merge_mid = 80;
  std::size_t merge_low = 10;
  std::size_t k_recent = 20;
  double leaky_slope = 0.2;
  /// Normalization span of the MLP time encoder.
  double span = 1.0;
  bool messages_include_edge_features = false;
  std::uint64_t seed = 0;

  TimeEncoderKind resolved_tde_kind() const noexcept {
    if (tde_kind) return *tde_kind;
    return variant == LdtgnVariant::Mem ? TimeEncoderKind::Time2Vec : TimeEncoderKind::MlpTde;
  }
};

/// Intermediate tensors of one batched forward pass.
struct LdtgnTrace {
  nn::Var probability;          // queries x 1
  nn::Var node_embeddings;      // slots x embed_dim
  nn::Var attention;            // candidate rows x 1
  nn::Var edge_embeddings;      // queries x tde_dim
  std::vector<std::size_t> offsets;  // candidate rows of slot s: [offsets[s], offsets[s + 1])
  std::vector<std::uint32_t> src_slot, dst_slot;
};

/// Attention-weighted recent-neighbor embeddings of both endpoints, merged with
/// the encoded edge age into a link probability. The Mem variant adds a GRU
/// state per node, updated from the latest message of each memory batch.
///
/// Entity vector of node i at time t: [TDE(t - t_i)] for Plain and
/// [TDE(t - t_i) | s_i] for Mem. A neighbor k of i contributes the candidate
/// [v_i | v_k | f_ik]; an isolated node uses [v_i | v_i | 0].
class Ldtgn final : public LinkModel {
 public:
  explicit Ldtgn(const LdtgnConfig& cfg, std::shared_ptr<const FeatureTable> features = nullptr);

  std::string name() const override;
  void reset() override;
  void begin_batch(nn::Tape& tape) override;
  void end_batch() override;
  std::size_t extract_view(std::span<const Event> queries) override;
  void process_memory_batch(std::span<const Event> updates) override;
  nn::Var predict(std::span<const ViewedQuery> queries) override;
  nn::ParamSet* params() override { return &params_; }

  /// Batched forward over caller-provided views.
  LdtgnTrace forward(nn::Tape& tape, std::span<const MemoryView* const> views,
                     std::span<const ViewedQuery> queries) const;

  // Single-query conveniences evaluated without gradients.
  std::vector<double> node_embedding(const MemoryView& view, NodeId i, Time t) const;
  std::vector<double> attention_weights(const MemoryView& view, NodeId i, Time t) const;
  std::vector<double> edge_embedding(const MemoryView& view, NodeId i, NodeId j, Time t) const;
  double predict_one(const MemoryView& view, NodeId i, NodeId j, Time t) const;

  const LdtgnConfig& config() const noexcept { return cfg_; }
  const TimeEncoder& time_encoder() const noexcept { return *tde_; }
  const Gru* gru() const noexcept { return gru_.get(); }
  const MemoryModule& memory() const noexcept { return *memory_; }
  const MemoryView& view(std::size_t id) const { return views_.at(id); }
  std::size_t entity_dim() const noexcept;
  std::size_t feature_dim() const noexcept { return feature_dim_; }

 private:
  LdtgnConfig cfg_;
  std::shared_ptr<const FeatureTable> features_;
  std::size_t feature_dim_;
  nn::ParamSet params_;
  std::unique_ptr<TimeEncoder> tde_;
  std::unique_ptr<Gru> gru_;
  nn::Parameter* w_self_ = nullptr;
  nn::Parameter* w_nbr_ = nullptr;
  nn::Parameter* w_edge_ = nullptr;
  nn::Parameter* attn_ = nullptr;
  struct Layer {
    nn::Parameter* w;
    nn::Parameter* b;
  };
  std::vector<Layer> merge_;
  std::unique_ptr<MemoryModule> memory_;
  std::vector<MemoryView> views_;
  nn::Tape* tape_ = nullptr;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_LDTGN_HPP
