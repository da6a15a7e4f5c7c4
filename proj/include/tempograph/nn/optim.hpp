// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_NN_OPTIM_HPP
#define TEMPOGRAPH_NN_OPTIM_HPP

#include <cstddef>
#include <vector>

#include "tempograph/nn/tensor.hpp"

namespace tempograph::nn {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam with bias correction. Moments are allocated lazily to match the
/// parameter set on the first step.
class Adam {
 public:
  explicit Adam(AdamOptions options = {}) : options_(options) {}

  /// Applies one update from the accumulated gradients, then zeroes them.
  void step(ParamSet& params);

  std::size_t steps() const noexcept { return step_; }
  const AdamOptions& options() const noexcept { return options_; }
  void set_lr(double lr) noexcept { options_.lr = lr; }

 private:
  AdamOptions options_;
  std::size_t step_ = 0;
  std::vector<Matrix> m_, v_;
};

}  // namespace tempograph::nn

#endif  // TEMPOGRAPH_NN_OPTIM_HPP
