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

#include "cfstripe/config_io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cfstripe {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad_value(std::string_view key, std::string_view text) {
    fail(ErrorCode::invalid_argument,
         "invalid value '" + std::string(text) + "' for key '" + std::string(key) + "'");
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) bad_value(key, text);
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        bad_value(key, text);
    }
    if (used != s.size()) bad_value(key, text);
    return value;
}

std::string format_real(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

struct Field {
    std::function<void(ScenarioConfig&, std::string_view)> set;
    std::function<std::string(const ScenarioConfig&)> get;
    bool numeric = true;
};

#define CFS_REAL_FIELD(name)                                                                      \
    {#name, Field{[](ScenarioConfig& c, std::string_view t) { c.name = parse_real(#name, t); },   \
                  [](const ScenarioConfig& c) { return format_real(c.name); }}}
#define CFS_INT_FIELD(name)                                                                       \
    {#name, Field{[](ScenarioConfig& c, std::string_view t) { c.name = parse_integer<int>(#name, t); }, \
                  [](const ScenarioConfig& c) { return std::to_string(c.name); }}}

const std::map<std::string, Field, std::less<>>& fields() {
    static const std::map<std::string, Field, std::less<>> table{
        CFS_REAL_FIELD(room_length_m),
        CFS_REAL_FIELD(room_width_m),
        CFS_REAL_FIELD(room_height_m),
        CFS_REAL_FIELD(stripe_length_m),
        CFS_INT_FIELD(ap_count),
        CFS_INT_FIELD(antennas_per_ap),
        CFS_INT_FIELD(user_count),
        CFS_INT_FIELD(coherence_block),
        {"pilot_length",
         Field{[](ScenarioConfig& c, std::string_view t) {
                   if (t == "K" || t == "k") {
                       c.pilot_length_follows_users = true;
                   } else {
                       c.pilot_length = parse_integer<int>("pilot_length", t);
                       c.pilot_length_follows_users = false;
                   }
               },
               [](const ScenarioConfig& c) {
                   return c.pilot_length_follows_users ? std::string("K") : std::to_string(c.pilot_length);
               },
               false}},
        CFS_REAL_FIELD(tx_power_w),
        CFS_REAL_FIELD(noise_power_w),
        CFS_REAL_FIELD(activation_ratio),
        {"correlation_model",
         Field{[](ScenarioConfig& c, std::string_view t) { c.correlation_model = parse_correlation(t); },
               [](const ScenarioConfig& c) { return std::string(to_string(c.correlation_model)); },
               false}},
        CFS_REAL_FIELD(angle_spread_deg),
        {"rng_seed",
         Field{[](ScenarioConfig& c, std::string_view t) {
                   c.rng_seed = parse_integer<std::uint64_t>("rng_seed", t);
               },
               [](const ScenarioConfig& c) { return std::to_string(c.rng_seed); }}},
        CFS_INT_FIELD(drops),
        CFS_INT_FIELD(realizations_per_drop),
        {"symbols",
         Field{[](ScenarioConfig& c, std::string_view t) { c.symbols = parse_alphabet(t); },
               [](const ScenarioConfig& c) { return std::string(to_string(c.symbols)); }, false}},
        {"drzf_regularizer",
         Field{[](ScenarioConfig& c, std::string_view t) { c.drzf_regularizer = parse_regularizer_mode(t); },
               [](const ScenarioConfig& c) { return std::string(to_string(c.drzf_regularizer)); },
               false}},
        {"drzf_sum",
         Field{[](ScenarioConfig& c, std::string_view t) { c.drzf_sum = parse_regularizer_sum(t); },
               [](const ScenarioConfig& c) { return std::string(to_string(c.drzf_sum)); }, false}},
    };
    return table;
}

#undef CFS_REAL_FIELD
#undef CFS_INT_FIELD

const Field& field(std::string_view key) {
    const auto& table = fields();
    const auto it = table.find(key);
    if (it == table.end()) fail(ErrorCode::invalid_argument, "unknown config key '" + std::string(key) + "'");
    return it->second;
}

}  // namespace

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
    field(key).set(config, value);
}

std::string get_config_value(const ScenarioConfig& config, std::string_view key) {
    return field(key).get(config);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : fields()) keys.push_back(k);
    return keys;
}

ScenarioConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorCode::invalid_argument, "config must be a JSON object");

    ScenarioConfig config;
    for (const auto& [key, value] : doc.items()) {
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_number_integer() || value.is_number_unsigned()) {
            text = value.dump();
        } else if (value.is_number_float()) {
            text = format_real(value.get<double>());
        } else {
            fail(ErrorCode::invalid_argument, "config key '" + key + "' must be a number or string");
        }
        set_config_value(config, key, text);
    }
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const ScenarioConfig& config) {
    json doc = json::object();
    for (const auto& [key, f] : fields()) {
        const std::string text = f.get(config);
        if (!f.numeric) {
            doc[key] = text;
        } else if (text.find_first_of(".eEn") != std::string::npos) {
            doc[key] = parse_real(key, text);
        } else if (key == "rng_seed") {
            doc[key] = parse_integer<std::uint64_t>(key, text);
        } else {
            doc[key] = parse_integer<long long>(key, text);
        }
    }
    return doc.dump(2);
}

}  // namespace cfstripe
