// Copyright 2026 The Tempograph Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPOGRAPH_RUNTIME_HPP
#define TEMPOGRAPH_RUNTIME_HPP

namespace tempograph {

/// Keeps large freed blocks in the heap instead of returning them to the OS.
/// Meant for executables; a no-op off glibc.
void tune_allocator() noexcept;

}  // namespace tempograph

#endif  // TEMPOGRAPH_RUNTIME_HPP
