// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempograph/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace tempograph::nn {

GradCheckResult grad_check(const std::function<Var(Tape&)>& loss_fn, ParamSet& params,
                           double step) {
  params.zero_grad();
  {
    Tape tape;
    tape.backward(loss_fn(tape));
  }
  std::vector<Matrix> analytic;
  for (std::size_t i = 0; i < params.size(); ++i) analytic.push_back(params[i].grad());
  params.zero_grad();

  auto evaluate = [&] {
    Tape tape(false);
    return loss_fn(tape).value()(0, 0);
  };

  GradCheckResult result;
  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter& p = params[i];
    for (Eigen::Index k = 0; k < p.value().size(); ++k) {
      double& w = p.value().data()[k];
      const double saved = w;
      w = saved + step;
      const double up = evaluate();
      w = saved - step;
      const double down = evaluate();
      w = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double a = analytic[i].data()[k];
      const double rel =
          std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), kGradCheckFloor});
      ++result.checked;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_param = p.name();
        result.worst_index = k;
      }
    }
  }
  return result;
}

}  // namespace tempograph::nn
