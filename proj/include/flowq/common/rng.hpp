// Copyright 2026 The FlowQ-Net Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace flowq {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream coordinates so that every trajectory or
/// evaluation gets an independent, reproducible generator.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

inline Rng make_rng(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0)
{
    return Rng(derive_seed(master, a, b));
}

} // namespace flowq
