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

#include "cfstripe/scenario.hpp"

#include "cfstripe/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cfstripe {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::invalid_argument, "invalid scenario: " + what);
}

struct PerimeterPoint {
    Point3 position;
    Point3 axis;
};

// Counterclockwise walk from (0, 0): +x, +y, -x, -y.
PerimeterPoint perimeter_point(const ScenarioConfig& c, double arc) {
    const double lx = c.room_length_m;
    const double ly = c.room_width_m;
    const double z = c.room_height_m;
    if (arc < lx) return {{arc, 0.0, z}, {1.0, 0.0, 0.0}};
    arc -= lx;
    if (arc < ly) return {{lx, arc, z}, {0.0, 1.0, 0.0}};
    arc -= ly;
    if (arc < lx) return {{lx - arc, ly, z}, {-1.0, 0.0, 0.0}};
    arc -= lx;
    return {{0.0, ly - arc, z}, {0.0, -1.0, 0.0}};
}

std::vector<PerimeterPoint> stripe_points(const ScenarioConfig& c) {
    if (c.ap_count <= 0) fail(ErrorCode::invalid_argument, "ap_count must be positive");
    const double spacing = c.stripe_length_m / c.ap_count;
    std::vector<PerimeterPoint> points;
    points.reserve(static_cast<std::size_t>(c.ap_count));
    for (int i = 0; i < c.ap_count; ++i) {
        points.push_back(perimeter_point(c, (i + 0.5) * spacing));
    }
    return points;
}

}  // namespace

int ScenarioConfig::active_aps_per_user() const {
    return static_cast<int>(std::floor(activation_ratio * ap_count + 0.5));
}

void ScenarioConfig::validate() const {
    require(room_length_m > 0 && room_width_m > 0 && room_height_m >= 0,
            "room dimensions must be positive");
    require(stripe_length_m > 0, "stripe_length_m must be positive");
    require(stripe_length_m <= perimeter_m() * (1 + 1e-12),
            "stripe_length_m exceeds the room perimeter");
    require(ap_count >= 1, "ap_count must be >= 1");
    require(antennas_per_ap >= 1, "antennas_per_ap must be >= 1");
    require(user_count >= 1, "user_count must be >= 1");
    require(coherence_block >= 1, "coherence_block must be >= 1");
    const int tp = effective_pilot_length();
    require(tp >= 1, "pilot_length must be >= 1");
    require(user_count <= tp, "user_count must not exceed pilot_length (no pilot reuse)");
    require(tp < coherence_block, "pilot_length must be smaller than coherence_block");
    require(tx_power_w >= 0, "tx_power_w must be non-negative");
    require(noise_power_w > 0, "noise_power_w must be positive");
    require(activation_ratio > 0 && activation_ratio <= 1, "activation_ratio must be in (0, 1]");
    require(active_aps_per_user() >= 1, "round(activation_ratio * ap_count) must be >= 1");
    if (correlation_model == CorrelationModel::local_scattering)
        require(angle_spread_deg > 0, "angle_spread_deg must be positive");
    require(drops >= 1, "drops must be >= 1");
    require(realizations_per_drop >= 1, "realizations_per_drop must be >= 1");
}

std::vector<std::string> ScenarioConfig::warnings() const {
    std::vector<std::string> out;
    const double served = activation_ratio * ap_count;
    if (std::abs(served - std::round(served)) > 1e-9) {
        std::ostringstream msg;
        msg << "activation_ratio * ap_count = " << served << " is not an integer; using "
            << active_aps_per_user() << " APs per user";
        out.push_back(msg.str());
    }
    if (std::abs(stripe_length_m - perimeter_m()) > 1e-9) {
        std::ostringstream msg;
        msg << "stripe_length_m = " << stripe_length_m << " differs from the room perimeter "
            << perimeter_m() << "; the stripe covers only part of the walls";
        out.push_back(msg.str());
    }
    return out;
}

std::vector<Point3> place_aps(const ScenarioConfig& config) {
    std::vector<Point3> out;
    for (const auto& p : stripe_points(config)) out.push_back(p.position);
    return out;
}

std::vector<Point3> stripe_axes(const ScenarioConfig& config) {
    std::vector<Point3> out;
    for (const auto& p : stripe_points(config)) out.push_back(p.axis);
    return out;
}

std::vector<Point3> place_users(const ScenarioConfig& config, Rng& rng) {
    std::vector<Point3> users;
    users.reserve(static_cast<std::size_t>(config.user_count));
    for (int k = 0; k < config.user_count; ++k) {
        const double x = rng.uniform(0.0, config.room_length_m);
        const double y = rng.uniform(0.0, config.room_width_m);
        users.push_back({x, y, 0.0});
    }
    return users;
}

double large_scale(double distance_m) {
    if (!(distance_m > 0)) fail(ErrorCode::invalid_argument, "distance must be positive");
    const double db = -30.5 - 36.7 * std::log10(distance_m);
    return std::pow(10.0, db / 10.0);
}

double nominal_angle(const Point3& ap, const Point3& axis, const Point3& user) {
    const double dx = user.x - ap.x;
    const double dy = user.y - ap.y;
    // Inward normal: the room lies to the left of a counterclockwise walk.
    const double along = dx * axis.x + dy * axis.y;
    const double across = -dx * axis.y + dy * axis.x;
    return std::atan2(along, across);
}

Drop make_drop(const ScenarioConfig& config, Rng& rng) {
    config.validate();

    Drop drop;
    drop.aps = config.ap_count;
    drop.antennas = config.antennas_per_ap;
    drop.users = config.user_count;
    drop.ap_positions = place_aps(config);
    drop.ap_axes = stripe_axes(config);
    drop.user_positions = place_users(config, rng);

    const double spread = config.angle_spread_deg * std::numbers::pi / 180.0;
    drop.beta.resize(drop.aps, drop.users);
    drop.covariances.resize(static_cast<std::size_t>(drop.aps * drop.users));
    for (int l = 0; l < drop.aps; ++l) {
        for (int k = 0; k < drop.users; ++k) {
            const auto& ap = drop.ap_positions[static_cast<std::size_t>(l)];
            const auto& ue = drop.user_positions[static_cast<std::size_t>(k)];
            const double b = large_scale(distance(ap, ue));
            drop.beta(l, k) = b;
            const double angle = nominal_angle(ap, drop.ap_axes[static_cast<std::size_t>(l)], ue);
            drop.covariance(k, l) =
                covariance(config.correlation_model, b, angle, spread, drop.antennas);
        }
    }
    return drop;
}

}  // namespace cfstripe
