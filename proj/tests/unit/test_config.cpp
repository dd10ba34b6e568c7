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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace cfstripe;

TEST(Config, EmptyObjectKeepsDefaults) {
    const auto c = parse_config("{}");
    const ScenarioConfig d;
    EXPECT_EQ(c.ap_count, d.ap_count);
    EXPECT_EQ(c.noise_power_w, d.noise_power_w);
    EXPECT_TRUE(c.pilot_length_follows_users);
}

TEST(Config, ParsesEveryKind) {
    const auto c = parse_config(R"({
        "ap_count": 12, "antennas_per_ap": 2, "user_count": 8, "pilot_length": 10,
        "tx_power_w": 0.1, "noise_power_w": 1e-12, "correlation_model": "local_scattering",
        "angle_spread_deg": 10, "rng_seed": 18446744073709551615, "drzf_sum": "exclude_self",
        "symbols": "qpsk", "drzf_regularizer": "approximate"
    })");
    EXPECT_EQ(c.ap_count, 12);
    EXPECT_EQ(c.antennas_per_ap, 2);
    EXPECT_EQ(c.effective_pilot_length(), 10);
    EXPECT_FALSE(c.pilot_length_follows_users);
    EXPECT_DOUBLE_EQ(c.tx_power_w, 0.1);
    EXPECT_DOUBLE_EQ(c.noise_power_w, 1e-12);
    EXPECT_EQ(c.correlation_model, CorrelationModel::local_scattering);
    EXPECT_DOUBLE_EQ(c.angle_spread_deg, 10.0);
    EXPECT_EQ(c.rng_seed, 18446744073709551615ULL);
    EXPECT_EQ(c.drzf_sum, RegularizerSum::exclude_self);
    EXPECT_EQ(c.symbols, SymbolAlphabet::qpsk);
    EXPECT_EQ(c.drzf_regularizer, RegularizerMode::approximate);
}

TEST(Config, PilotLengthFollowsUsers) {
    const auto c = parse_config(R"({"user_count": 40, "pilot_length": "K"})");
    EXPECT_EQ(c.effective_pilot_length(), 40);
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_config(R"({"ap_cnt": 3})"), Error);
    EXPECT_THROW(parse_config(R"({"ap_count": "many"})"), Error);
    EXPECT_THROW(parse_config(R"({"ap_count": 2.5})"), Error);
    EXPECT_THROW(parse_config(R"({"ap_count": [1]})"), Error);
    EXPECT_THROW(parse_config(R"({"correlation_model": "rician"})"), Error);
    EXPECT_THROW(parse_config("[1, 2]"), Error);
    EXPECT_THROW(parse_config("{not json"), Error);
    try {
        load_config("/nonexistent/dir/config.json");
        FAIL() << "expected an i/o error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::io);
    }
}

TEST(Config, JsonRoundTrip) {
    ScenarioConfig c;
    c.ap_count = 7;
    c.noise_power_w = 1.234567890123e-13;
    c.rng_seed = 99;
    c.correlation_model = CorrelationModel::local_scattering;
    const auto back = parse_config(config_to_json(c));
    EXPECT_EQ(back.ap_count, 7);
    EXPECT_EQ(back.noise_power_w, c.noise_power_w);
    EXPECT_EQ(back.rng_seed, 99u);
    EXPECT_EQ(back.correlation_model, CorrelationModel::local_scattering);
    EXPECT_TRUE(back.pilot_length_follows_users);
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, KeyValueAccess) {
    ScenarioConfig c;
    set_config_value(c, "drops", "5");
    EXPECT_EQ(c.drops, 5);
    EXPECT_EQ(get_config_value(c, "drops"), "5");
    EXPECT_EQ(get_config_value(c, "pilot_length"), "K");
    EXPECT_THROW(set_config_value(c, "nope", "1"), Error);
    const auto keys = config_keys();
    EXPECT_NE(std::find(keys.begin(), keys.end(), "activation_ratio"), keys.end());
}

TEST(Config, LoadsShippedDefault) {
    const auto c = load_config(CFSTRIPE_SOURCE_DIR "/configs/default.json");
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.ap_count, 24);
    EXPECT_EQ(c.user_count, 20);
    EXPECT_EQ(c.drops, 100);
}
