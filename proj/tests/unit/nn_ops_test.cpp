// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tempograph/errors.hpp"
#include "tempograph/nn/grad_check.hpp"
#include "tempograph/nn/ops.hpp"
#include "tempograph/nn/tensor.hpp"

namespace tempograph::nn {
namespace {

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng, double lo = -1.0,
                     double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

// Reduces an op output to a scalar through fixed random weights, so every
// output entry gets a distinct upstream gradient.
Var project(Tape& tape, Var out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return mean(mul(out, tape.constant(random_matrix(out.rows(), out.cols(), rng))));
}

void expect_gradients_match(const std::string& op, ParamSet& params,
                            const std::function<Var(Tape&)>& build) {
  const GradCheckResult r = grad_check(
      [&](Tape& tape) { return project(tape, build(tape), 99); }, params);
  EXPECT_GT(r.checked, 0u) << op;
  EXPECT_LT(r.max_relative_error, 1e-4) << op << " worst " << r.worst_param << "[" << r.worst_index
                                        << "]";
}

class OpGradients : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2024};
};

TEST_F(OpGradients, Linear) {
  ParamSet ps;
  auto& x = ps.add("x", random_matrix(4, 3, rng));
  auto& w = ps.add("w", random_matrix(3, 5, rng));
  auto& b = ps.add("b", random_matrix(1, 5, rng));
  expect_gradients_match("linear", ps, [&](Tape& t) {
    return linear(t.param(x), t.param(w), t.param(b));
  });
}

TEST_F(OpGradients, MatmulAddSubMulScale) {
  ParamSet ps;
  auto& x = ps.add("x", random_matrix(3, 4, rng));
  auto& w = ps.add("w", random_matrix(4, 2, rng));
  auto& y = ps.add("y", random_matrix(3, 2, rng));
  expect_gradients_match("matmul/add/sub/mul/scale", ps, [&](Tape& t) {
    Var m = matmul(t.param(x), t.param(w));
    return scale(mul(sub(add(m, t.param(y)), one_minus(t.param(y))), m), 1.7);
  });
}

TEST_F(OpGradients, Activations) {
  ParamSet ps;
  // Keep inputs away from the kinks of relu and leaky_relu.
  Matrix v = random_matrix(5, 4, rng, 0.05, 1.0);
  for (Eigen::Index i = 0; i < v.size(); i += 2) v.data()[i] = -v.data()[i];
  auto& x = ps.add("x", v);
  expect_gradients_match("relu", ps, [&](Tape& t) { return relu(t.param(x)); });
  expect_gradients_match("leaky_relu", ps, [&](Tape& t) { return leaky_relu(t.param(x), 0.2); });
  expect_gradients_match("sigmoid", ps, [&](Tape& t) { return sigmoid(t.param(x)); });
  expect_gradients_match("tanh", ps, [&](Tape& t) { return tanh(t.param(x)); });
  expect_gradients_match("cosine", ps, [&](Tape& t) { return cosine(t.param(x)); });
}

TEST_F(OpGradients, ConcatSliceGather) {
  ParamSet ps;
  auto& a = ps.add("a", random_matrix(3, 2, rng));
  auto& b = ps.add("b", random_matrix(3, 4, rng));
  auto& c = ps.add("c", random_matrix(2, 6, rng));
  const std::vector<std::uint32_t> idx{2, 0, 0, 1, 2};
  expect_gradients_match("concat", ps, [&](Tape& t) {
    return concat({t.param(a), t.param(b)});
  });
  expect_gradients_match("concat_rows", ps, [&](Tape& t) {
    Var ab = concat({t.param(a), t.param(b)});
    const Var rows[] = {ab, t.param(c)};
    return concat_rows(rows);
  });
  expect_gradients_match("slice_cols", ps, [&](Tape& t) { return slice_cols(t.param(b), 1, 3); });
  expect_gradients_match("gather_rows", ps, [&](Tape& t) { return gather_rows(t.param(b), idx); });
}

TEST_F(OpGradients, Reductions) {
  ParamSet ps;
  auto& x = ps.add("x", random_matrix(6, 3, rng));
  expect_gradients_match("sum_rows", ps, [&](Tape& t) { return sum_rows(t.param(x)); });
  expect_gradients_match("mean", ps, [&](Tape& t) { return mean(t.param(x)); });
}

TEST_F(OpGradients, SegmentSoftmaxAndWeightedSum) {
  ParamSet ps;
  auto& logits = ps.add("logits", random_matrix(7, 1, rng, -2, 2));
  auto& xs = ps.add("xs", random_matrix(7, 3, rng));
  const std::vector<std::size_t> offsets{0, 3, 4, 7};
  expect_gradients_match("softmax", ps, [&](Tape& t) { return softmax(t.param(logits), offsets); });
  expect_gradients_match("softmax_single", ps, [&](Tape& t) { return softmax(t.param(logits)); });
  expect_gradients_match("weighted_sum", ps, [&](Tape& t) {
    return weighted_sum(t.param(xs), softmax(t.param(logits), offsets), offsets);
  });
}

TEST_F(OpGradients, BceLoss) {
  ParamSet ps;
  auto& z = ps.add("z", random_matrix(8, 1, rng, -3, 3));
  const std::vector<double> labels{1, 0, 0, 1, 1, 0, 1, 0};
  const GradCheckResult r =
      grad_check([&](Tape& t) { return bce_loss(sigmoid(t.param(z)), labels); }, ps);
  EXPECT_LT(r.max_relative_error, 1e-4);
}

TEST(Ops, SigmoidOfZeroIsHalf) {
  Tape t;
  EXPECT_DOUBLE_EQ(sigmoid(t.constant(Matrix::Zero(1, 1))).value()(0, 0), 0.5);
}

TEST(Ops, SoftmaxOfEqualLogitsIsUniform) {
  Tape t;
  for (int n : {1, 3, 10}) {
    const Matrix p = softmax(t.constant(Matrix::Constant(n, 1, 2.5))).value();
    for (int i = 0; i < n; ++i) EXPECT_NEAR(p(i, 0), 1.0 / n, 1e-15);
  }
}

TEST(Ops, SegmentSoftmaxNormalizesEachSegment) {
  std::mt19937_64 rng(3);
  Tape t;
  const std::vector<std::size_t> offsets{0, 2, 2, 6};
  const Matrix p = softmax(t.constant(random_matrix(6, 1, rng, -5, 5)), offsets).value();
  EXPECT_NEAR(p(0, 0) + p(1, 0), 1.0, 1e-14);
  EXPECT_NEAR(p.block(2, 0, 4, 1).sum(), 1.0, 1e-14);
}

TEST(Ops, LinearWithIdentityIsIdentity) {
  std::mt19937_64 rng(4);
  Tape t;
  const Matrix x = random_matrix(3, 4, rng);
  const Matrix y =
      linear(t.constant(x), t.constant(Matrix::Identity(4, 4)), t.constant(Matrix::Zero(1, 4)))
          .value();
  EXPECT_EQ(y, x);
}

TEST(Ops, ShapeMismatchNamesTheOp) {
  Tape t;
  Var a = t.constant(Matrix::Zero(2, 3));
  Var b = t.constant(Matrix::Zero(4, 2));
  auto message_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const DimensionError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message_of([&] { matmul(b, b); }).find("matmul"), std::string::npos);
  EXPECT_NE(message_of([&] { add(a, b); }).find("add"), std::string::npos);
  EXPECT_NE(message_of([&] { linear(a, t.constant(Matrix::Zero(3, 2)), a); }).find("linear"),
            std::string::npos);
  EXPECT_NE(message_of([&] { concat({a, b}); }).find("concat"), std::string::npos);
  EXPECT_NE(message_of([&] { softmax(a); }).find("softmax"), std::string::npos);
}

TEST(Bce, ClosedForms) {
  EXPECT_NEAR(bce(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce(1.0 - 1e-12, 1), 0.0, 1e-6);
  EXPECT_TRUE(std::isfinite(bce(0.0, 1)));
  EXPECT_NEAR(bce(0.0, 1), -std::log(kBceEpsilon), 1e-9);
}

TEST(Bce, BatchMeanMatchesScalarLoop) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix p(16, 1);
  std::vector<double> y(16);
  double want = 0;
  for (int i = 0; i < 16; ++i) {
    p(i, 0) = u(rng);
    y[i] = u(rng) < 0.5 ? 1.0 : 0.0;
    const double pi = std::clamp(p(i, 0), kBceEpsilon, 1 - kBceEpsilon);
    want += -(y[i] * std::log(pi) + (1 - y[i]) * std::log(1 - pi));
  }
  Tape t;
  EXPECT_NEAR(bce_loss(t.constant(p), y).value()(0, 0), want / 16, 1e-14);
}

TEST(Backward, SumOfLinearMapGradientIsOuterStructure) {
  ParamSet ps;
  auto& w = ps.add("w", Matrix::Random(3, 2));
  Matrix x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  Tape t;
  // loss = sum over all entries of x W, so dL/dW[k][c] = sum_r x[r][k].
  Var out = matmul(t.constant(x), t.param(w));
  t.backward(scale(mean(out), static_cast<double>(out.value().size())));
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 2; ++c) EXPECT_DOUBLE_EQ(w.grad()(k, c), x(0, k) + x(1, k));
}

TEST(Backward, UnusedParameterHasZeroGradient) {
  ParamSet ps;
  auto& used = ps.add("used", Matrix::Constant(1, 2, 0.3));
  auto& unused = ps.add("unused", Matrix::Constant(2, 2, 0.7));
  Tape t;
  t.backward(mean(sigmoid(t.param(used))));
  EXPECT_TRUE(unused.grad().isZero());
  EXPECT_FALSE(used.grad().isZero());
}

TEST(Backward, GradientsAccumulateAcrossUses) {
  ParamSet ps;
  auto& w = ps.add("w", Matrix::Constant(1, 1, 2.0));
  Tape t;
  Var a = t.param(w);
  Var b = t.param(w);
  EXPECT_EQ(a.id(), b.id());
  t.backward(add(mul(a, b), a));  // w^2 + w
  EXPECT_DOUBLE_EQ(w.grad()(0, 0), 5.0);
}

TEST(Backward, NonScalarLossIsAContractViolation) {
  Tape t;
  Var v = t.constant(Matrix::Zero(2, 1));
  EXPECT_THROW(t.backward(v), ContractViolation);
}

TEST(Backward, ConstantsNeverReceiveGradients) {
  ParamSet ps;
  auto& w = ps.add("w", Matrix::Constant(2, 2, 0.5));
  Tape t;
  Var c = t.constant(Matrix::Constant(2, 2, 1.5));
  Var out = mul(c, t.param(w));
  t.backward(mean(out));
  EXPECT_FALSE(c.requires_grad());
  EXPECT_EQ(c.grad().size(), 0);
  EXPECT_TRUE(out.requires_grad());
}

TEST(Backward, NonRecordingTapeTreatsParametersAsConstants) {
  ParamSet ps;
  auto& w = ps.add("w", Matrix::Constant(1, 1, 0.5));
  Tape t(false);
  Var out = sigmoid(t.param(w));
  EXPECT_FALSE(out.requires_grad());
  EXPECT_DOUBLE_EQ(out.value()(0, 0), 1.0 / (1.0 + std::exp(-0.5)));
}

TEST(Determinism, IdenticalInputsGiveBitwiseIdenticalValues) {
  auto run = [] {
    std::mt19937_64 rng(77);
    Tape t;
    Var x = t.constant(random_matrix(9, 4, rng));
    Var w = t.constant(random_matrix(4, 4, rng));
    const std::vector<std::size_t> off{0, 4, 9};
    Var h = leaky_relu(matmul(x, w), 0.2);
    return weighted_sum(h, softmax(slice_cols(h, 0, 1), off), off).value();
  };
  EXPECT_EQ(run(), run());
}

TEST(ParamSet, CountsSnapshotsAndRestores) {
  ParamSet ps;
  ps.add("a", Matrix::Constant(2, 3, 1.0));
  ps.add("b", Matrix::Constant(1, 4, 2.0));
  EXPECT_EQ(ps.count(), 10u);
  EXPECT_NE(ps.find("b"), nullptr);
  EXPECT_EQ(ps.find("c"), nullptr);
  const auto snap = ps.snapshot();
  ps[0].value().setZero();
  ps.restore(snap);
  EXPECT_EQ(ps[0].value()(1, 2), 1.0);
}

}  // namespace
}  // namespace tempograph::nn
