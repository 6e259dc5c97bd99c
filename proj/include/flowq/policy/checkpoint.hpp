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

#include <string>

#include <json.hpp>

#include "flowq/common/adam.hpp"
#include "flowq/policy/transformer.hpp"

namespace flowq {

/// Everything needed to resume or sample: the policy, both optimizer states
/// and free-form metadata (action space, budgets, task) as JSON.
struct Checkpoint {
    TransformerPolicy policy;
    AdamState adam;
    AdamState adam_log_z;
    nlohmann::json meta = nlohmann::json::object();
};

/**
 * Binary layout (little-endian host order):
 *   "FQCK" | u32 version | u64 json length | JSON {config, meta}
 *   | u64 n | n doubles (params) | double log_z
 *   | adam: i64 step | n doubles m | n doubles v
 *   | adam_log_z: i64 step | double m | double v
 * Doubles are written bit-for-bit, so a round trip is exact.
 */
void save_checkpoint(const std::string &path, const Checkpoint &ckpt);
/// Throws std::runtime_error on a missing file, bad magic, unsupported
/// version or truncated data.
Checkpoint load_checkpoint(const std::string &path);

} // namespace flowq
