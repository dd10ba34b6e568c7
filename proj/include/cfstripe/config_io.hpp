/*
 * Copyright 2026 The cfstripe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Scenario files are flat JSON objects whose keys are the ScenarioConfig field
// names. Missing keys keep their defaults; unknown keys are rejected.
// "pilot_length" accepts either an integer or the string "K" (tau_p = K).
// "correlation_model" is "uncorrelated" or "local_scattering".

#include "cfstripe/scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cfstripe {

ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(std::string_view json_text);
std::string config_to_json(const ScenarioConfig& config);

/// Sets one field from its textual value, with the same rules as the file format.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);
std::string get_config_value(const ScenarioConfig& config, std::string_view key);

std::vector<std::string> config_keys();

}  // namespace cfstripe
