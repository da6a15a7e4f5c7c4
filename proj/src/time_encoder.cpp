// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/time_encoder.hpp"

#include <cmath>
#include <string>

#include "tempograph/errors.hpp"
#include "tempograph/nn/ops.hpp"

namespace tempograph {

double normalize_time(double dt, double span) {
  if (!(span > 0.0)) throw ContractViolation("normalize_time: span must be positive");
  if (dt < 0.0) throw ContractViolation("normalize_time: negative time difference");
  return std::log1p(dt) / std::log1p(span);
}

nn::Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, std::size_t fan_in,
                        std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in == 0 ? 1 : fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  nn::Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

TimeEncoder::TimeEncoder(const TimeEncoderConfig& cfg, nn::ParamSet& params,
                         const std::string& prefix, std::mt19937_64& rng)
    : cfg_(cfg) {
  const auto d = static_cast<Eigen::Index>(cfg.out_dim);
  if (d < 1) throw ConfigError("time encoder: out_dim must be at least 1");
  if (cfg.kind == TimeEncoderKind::MlpTde) {
    if (!(cfg.span > 0.0)) throw ConfigError("time encoder: span must be positive");
    w1_ = &params.add(prefix + ".w1", uniform_init(1, d, 1, rng));
    b1_ = &params.add(prefix + ".b1", uniform_init(1, d, 1, rng));
    w2_ = &params.add(prefix + ".w2", uniform_init(d, d, cfg.out_dim, rng));
    b2_ = &params.add(prefix + ".b2", uniform_init(1, d, cfg.out_dim, rng));
    return;
  }
  // Periodic frequencies fall geometrically from 1 to 1e-9; the linear term starts flat.
  nn::Matrix omega = nn::Matrix::Zero(1, d);
  for (Eigen::Index k = 1; k < d; ++k) {
    const double denom = d > 2 ? static_cast<double>(d - 2) : 1.0;
    omega(0, k) = std::pow(10.0, -9.0 * static_cast<double>(k - 1) / denom);
  }
  omega_ = &params.add(prefix + ".omega", std::move(omega));
  phi_ = &params.add(prefix + ".phi", nn::Matrix::Zero(1, d));
}

nn::Var TimeEncoder::encode(nn::Tape& tape, std::span<const double> dts) const {
  const auto n = static_cast<Eigen::Index>(dts.size());
  nn::Matrix column(n, 1);
  if (cfg_.kind == TimeEncoderKind::MlpTde) {
    for (Eigen::Index i = 0; i < n; ++i) column(i, 0) = normalize_time(dts[i], cfg_.span);
    nn::Var x = tape.constant(std::move(column));
    nn::Var h = nn::relu(nn::linear(x, tape.param(*w1_), tape.param(*b1_)));
    return nn::relu(nn::linear(h, tape.param(*w2_), tape.param(*b2_)));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dts[i] < 0.0) throw ContractViolation("time encoder: negative time difference");
    column(i, 0) = dts[i];
  }
  nn::Var x = tape.constant(std::move(column));
  nn::Var lin = nn::linear(x, tape.param(*omega_), tape.param(*phi_));
  const auto d = static_cast<Eigen::Index>(cfg_.out_dim);
  if (d == 1) return lin;
  return nn::concat({nn::slice_cols(lin, 0, 1), nn::cosine(nn::slice_cols(lin, 1, d))});
}

}  // namespace tempograph
