// Copyright 2026 The sbcast Authors
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

#include <json.hpp>

#include "sbcast/compiler.hpp"

namespace sbcast {

/// {n_qubits, scheme, n_slots, timing{slot_ns, pulse_ns, buffer_ns},
///  events[{slot, pulse, mask[0/1...]}]}
nlohmann::ordered_json schedule_to_json(const Schedule& schedule);

/// Inverse of schedule_to_json. Throws std::invalid_argument on unknown
/// keys, unknown pulse or scheme names, or masks of the wrong width.
Schedule schedule_from_json(const nlohmann::ordered_json& j);

}  // namespace sbcast
