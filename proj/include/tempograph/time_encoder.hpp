// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_TIME_ENCODER_HPP
#define TEMPOGRAPH_TIME_ENCODER_HPP

#include <cstddef>
#include <random>
#include <span>
#include <string>

#include "tempograph/event.hpp"
#include "tempograph/nn/tensor.hpp"

namespace tempograph {

/// log(1 + dt) / log(1 + span). Throws ContractViolation for dt < 0 or span <= 0.
double normalize_time(double dt, double span);

enum class TimeEncoderKind { MlpTde, Time2Vec };

struct TimeEncoderConfig {
  TimeEncoderKind kind = TimeEncoderKind::MlpTde;
  std::size_t out_dim = 100;
  /// Dataset span used by normalize_time (MlpTde only).
  double span = 1.0;
};

/// Time-difference encoder.
///
/// MlpTde: normalized dt -> Linear(1, d) -> ReLU -> Linear(d, d) -> ReLU.
/// Time2Vec: raw dt -> [w0 dt + p0, cos(w1 dt + p1), ..., cos(w_{d-1} dt + p_{d-1})].
class TimeEncoder {
 public:
  /// Registers parameters named "<prefix>.*" in `params`.
  TimeEncoder(const TimeEncoderConfig& cfg, nn::ParamSet& params, const std::string& prefix,
              std::mt19937_64& rng);

  /// Encodes a column of time differences into a (n x out_dim) tensor.
  nn::Var encode(nn::Tape& tape, std::span<const double> dts) const;

  const TimeEncoderConfig& config() const noexcept { return cfg_; }
  std::size_t out_dim() const noexcept { return cfg_.out_dim; }

 private:
  TimeEncoderConfig cfg_;
  nn::Parameter* w1_ = nullptr;
  nn::Parameter* b1_ = nullptr;
  nn::Parameter* w2_ = nullptr;
  nn::Parameter* b2_ = nullptr;
  nn::Parameter* omega_ = nullptr;
  nn::Parameter* phi_ = nullptr;
};

/// PyTorch-style default init: U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
nn::Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, std::size_t fan_in,
                        std::mt19937_64& rng);

}  // namespace tempograph

#endif  // TEMPOGRAPH_TIME_ENCODER_HPP
