// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_NN_OPS_HPP
#define TEMPOGRAPH_NN_OPS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tempograph/nn/tensor.hpp"

namespace tempograph::nn {

// Differentiable ops over 2-D tensors. Rows are batch items. Each op throws
// DimensionError naming itself on a shape mismatch.

/// x (n x in) * W (in x out) + b (1 x out), b broadcast over rows.
Var linear(Var x, Var w, Var b);
/// x (n x in) * W (in x out).
Var matmul(Var x, Var w);

Var add(Var a, Var b);
Var sub(Var a, Var b);
/// Elementwise product.
Var mul(Var a, Var b);
Var scale(Var a, double factor);
/// 1 - a, elementwise.
Var one_minus(Var a);

Var relu(Var x);
Var leaky_relu(Var x, double slope);
Var sigmoid(Var x);
Var tanh(Var x);
Var cosine(Var x);

/// Side-by-side concatenation; all inputs share the row count. Inputs with
/// zero columns are allowed.
Var concat(std::span<const Var> xs);
Var concat(std::initializer_list<Var> xs);
/// Vertical stacking; all inputs share the column count.
Var concat_rows(std::span<const Var> xs);

/// Columns [begin, end).
Var slice_cols(Var x, Eigen::Index begin, Eigen::Index end);
/// out.row(r) = x.row(index[r]); backward scatter-adds.
Var gather_rows(Var x, std::span<const std::uint32_t> index);

/// Column sums: (n x d) -> (1 x d).
Var sum_rows(Var x);
/// Mean of all entries -> 1 x 1.
Var mean(Var x);

/// Softmax of a column vector (n x 1) within each segment
/// [offsets[s], offsets[s + 1]). A single segment gives the plain softmax.
Var softmax(Var logits, std::span<const std::size_t> offsets);
Var softmax(Var logits);

/// Per segment s: sum over rows r in s of weights[r] * xs.row(r).
/// xs is (n x d), weights (n x 1), result (segments x d).
Var weighted_sum(Var xs, Var weights, std::span<const std::size_t> offsets);

/// Mean binary cross-entropy of probabilities p (n x 1) against 0/1 labels,
/// with p clamped to [kBceEpsilon, 1 - kBceEpsilon].
inline constexpr double kBceEpsilon = 1e-7;
Var bce_loss(Var p, std::span<const double> labels);

/// Scalar form, for oracles and reporting.
double bce(double p, double y);

}  // namespace tempograph::nn

#endif  // TEMPOGRAPH_NN_OPS_HPP
