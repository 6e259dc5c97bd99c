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

#include "flowq/common/log.hpp"

#include <cstdlib>
#include <string>

namespace flowq {

void init_logging_from_env()
{
    const char *level = std::getenv("FLOWQ_LOG");
    if (level == nullptr || *level == '\0') {
        return;
    }
    spdlog::set_level(spdlog::level::from_str(level));
}

} // namespace flowq
