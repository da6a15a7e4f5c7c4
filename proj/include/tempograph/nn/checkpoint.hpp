// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_NN_CHECKPOINT_HPP
#define TEMPOGRAPH_NN_CHECKPOINT_HPP

#include <filesystem>
#include <string>

#include "tempograph/nn/tensor.hpp"

namespace tempograph::nn {

inline constexpr int kCheckpointVersion = 1;

/// Writes every parameter as {name, shape, values} into a JSON document
/// tagged with format "tempograph-checkpoint" and kCheckpointVersion.
/// `model` is stored for the reader's benefit.
void save_checkpoint(const ParamSet& params, const std::string& model,
                     const std::filesystem::path& path);

/// Overwrites parameter values from a checkpoint. The file must hold exactly
/// the same names with the same shapes; otherwise SchemaError. Returns the
/// stored model tag.
std::string load_checkpoint(ParamSet& params, const std::filesystem::path& path);

}  // namespace tempograph::nn

#endif  // TEMPOGRAPH_NN_CHECKPOINT_HPP
