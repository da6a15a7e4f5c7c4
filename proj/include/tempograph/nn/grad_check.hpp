// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_NN_GRAD_CHECK_HPP
#define TEMPOGRAPH_NN_GRAD_CHECK_HPP

#include <functional>
#include <string>

#include "tempograph/nn/tensor.hpp"

namespace tempograph::nn {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_param;
  Eigen::Index worst_index = -1;
  std::size_t checked = 0;
};

/// Denominator floor of the relative error, so exact zeros compare by
/// absolute difference.
inline constexpr double kGradCheckFloor = 1e-6;

/// Compares backward() gradients of `loss_fn` against central differences.
/// `loss_fn` must build a fresh scalar loss on the tape it is given and be a
/// pure function of the parameter values.
GradCheckResult grad_check(const std::function<Var(Tape&)>& loss_fn, ParamSet& params,
                           double step = 1e-5);

}  // namespace tempograph::nn

#endif  // TEMPOGRAPH_NN_GRAD_CHECK_HPP
