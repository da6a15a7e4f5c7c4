// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tempograph/errors.hpp"
#include "tempograph/nn/grad_check.hpp"
#include "tempograph/nn/ops.hpp"
#include "tempograph/time_encoder.hpp"

namespace tempograph {
namespace {

TEST(NormalizeTime, ClosedForms) {
  const double c = 5000.0;
  EXPECT_EQ(normalize_time(0.0, c), 0.0);
  EXPECT_DOUBLE_EQ(normalize_time(c, c), 1.0);
  EXPECT_NEAR(normalize_time(std::sqrt(1.0 + c) - 1.0, c), 0.5, 1e-14);
}

TEST(NormalizeTime, RejectsBadInputs) {
  EXPECT_THROW(normalize_time(-1e-9, 10.0), ContractViolation);
  EXPECT_THROW(normalize_time(1.0, 0.0), ContractViolation);
}

TEST(Time2Vec, ZeroFrequenciesAreConstantInDt) {
  nn::ParamSet ps;
  std::mt19937_64 rng(0);
  TimeEncoder tde({TimeEncoderKind::Time2Vec, 6, 1.0}, ps, "tde", rng);
  ps.find("tde.omega")->value().setZero();
  ps.find("tde.phi")->value() << 0.3, 0.1, -0.4, 1.2, 2.0, -3.0;
  nn::Tape t(false);
  const std::vector<double> dts{0.0, 1.0, 17.5, 1e6};
  const nn::Matrix out = tde.encode(t, dts).value();
  for (int r = 0; r < 4; ++r) {
    EXPECT_DOUBLE_EQ(out(r, 0), 0.3);
    EXPECT_DOUBLE_EQ(out(r, 1), std::cos(0.1));
    EXPECT_DOUBLE_EQ(out(r, 5), std::cos(-3.0));
  }
}

TEST(Time2Vec, MatchesScalarFormula) {
  nn::ParamSet ps;
  std::mt19937_64 rng(0);
  TimeEncoder tde({TimeEncoderKind::Time2Vec, 5, 1.0}, ps, "tde", rng);
  std::normal_distribution<double> n(0, 1);
  auto& omega = ps.find("tde.omega")->value();
  auto& phi = ps.find("tde.phi")->value();
  for (int k = 0; k < 5; ++k) omega(0, k) = n(rng), phi(0, k) = n(rng);
  nn::Tape t(false);
  const double dt = 3.25;
  const nn::Matrix out = tde.encode(t, std::vector<double>{dt}).value();
  EXPECT_DOUBLE_EQ(out(0, 0), omega(0, 0) * dt + phi(0, 0));
  for (int k = 1; k < 5; ++k) EXPECT_NEAR(out(0, k), std::cos(omega(0, k) * dt + phi(0, k)), 1e-14);
}

TEST(Time2Vec, RejectsNegativeDt) {
  nn::ParamSet ps;
  std::mt19937_64 rng(0);
  TimeEncoder tde({TimeEncoderKind::Time2Vec, 4, 1.0}, ps, "tde", rng);
  nn::Tape t(false);
  EXPECT_THROW(tde.encode(t, std::vector<double>{-1.0}), ContractViolation);
}

TEST(MlpTde, OutputWidthIsHundred) {
  nn::ParamSet ps;
  std::mt19937_64 rng(1);
  TimeEncoder tde({TimeEncoderKind::MlpTde, 100, 1000.0}, ps, "tde", rng);
  nn::Tape t(false);
  const nn::Matrix out = tde.encode(t, std::vector<double>{0.0, 3.0, 999.0, 5e4}).value();
  EXPECT_EQ(out.rows(), 4);
  EXPECT_EQ(out.cols(), 100);
  EXPECT_TRUE((out.array() >= 0.0).all());
  EXPECT_EQ(ps.count(), 100u + 100u + 100u * 100u + 100u);
}

TEST(MlpTde, ZeroWeightsGiveZeroOutput) {
  nn::ParamSet ps;
  std::mt19937_64 rng(1);
  TimeEncoder tde({TimeEncoderKind::MlpTde, 8, 50.0}, ps, "tde", rng);
  for (std::size_t i = 0; i < ps.size(); ++i) ps[i].value().setZero();
  nn::Tape t(false);
  EXPECT_TRUE(tde.encode(t, std::vector<double>{0.0, 10.0, 400.0}).value().isZero());
}

TEST(MlpTde, MatchesScalarMlp) {
  nn::ParamSet ps;
  std::mt19937_64 rng(9);
  const double span = 120.0;
  TimeEncoder tde({TimeEncoderKind::MlpTde, 4, span}, ps, "tde", rng);
  const auto& w1 = ps.find("tde.w1")->value();
  const auto& b1 = ps.find("tde.b1")->value();
  const auto& w2 = ps.find("tde.w2")->value();
  const auto& b2 = ps.find("tde.b2")->value();
  const double dt = 42.0;
  const double x = std::log(1 + dt) / std::log(1 + span);
  std::vector<double> h(4), out(4);
  for (int c = 0; c < 4; ++c) h[c] = std::max(0.0, x * w1(0, c) + b1(0, c));
  for (int c = 0; c < 4; ++c) {
    double s = b2(0, c);
    for (int r = 0; r < 4; ++r) s += h[r] * w2(r, c);
    out[c] = std::max(0.0, s);
  }
  nn::Tape t(false);
  const nn::Matrix got = tde.encode(t, std::vector<double>{dt}).value();
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(got(0, c), out[c], 1e-14);
}

TEST(TimeEncoder, GradientsMatchFiniteDifferences) {
  for (TimeEncoderKind kind : {TimeEncoderKind::MlpTde, TimeEncoderKind::Time2Vec}) {
    nn::ParamSet ps;
    std::mt19937_64 rng(5);
    TimeEncoder tde({kind, 6, 300.0}, ps, "tde", rng);
    if (kind == TimeEncoderKind::Time2Vec) {
      std::uniform_real_distribution<double> u(-0.5, 0.5);
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (Eigen::Index k = 0; k < ps[i].value().size(); ++k) ps[i].value().data()[k] = u(rng);
    }
    const std::vector<double> dts{0.5, 3.0, 77.0};
    const auto r = nn::grad_check(
        [&](nn::Tape& t) { return nn::mean(nn::sigmoid(tde.encode(t, dts))); }, ps);
    EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_param;
  }
}

TEST(TimeEncoder, ConfigValidation) {
  nn::ParamSet ps;
  std::mt19937_64 rng(1);
  EXPECT_THROW(TimeEncoder({TimeEncoderKind::MlpTde, 0, 1.0}, ps, "a", rng), ConfigError);
  EXPECT_THROW(TimeEncoder({TimeEncoderKind::MlpTde, 4, 0.0}, ps, "b", rng), ConfigError);
}

TEST(UniformInit, RespectsFanInBound) {
  std::mt19937_64 rng(3);
  const nn::Matrix m = uniform_init(50, 40, 25, rng);
  EXPECT_LE(m.cwiseAbs().maxCoeff(), 0.2);
  EXPECT_GT(m.cwiseAbs().maxCoeff(), 0.15);
}

}  // namespace
}  // namespace tempograph
