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

#include "cfstripe/rng.hpp"
#include "cfstripe/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfstripe {

/// All simulation parameters. SI units throughout.
///
/// Defaults describe the reference deployment: a 125 x 125 x 5 m room with a
/// 500 m stripe along the top edges of the walls, 24 APs with 4 antennas each,
/// 20 users, 200-symbol coherence blocks and pilot length equal to the user
/// count.
struct ScenarioConfig {
    double room_length_m = 125.0;
    double room_width_m = 125.0;
    double room_height_m = 5.0;
    double stripe_length_m = 500.0;

    int ap_count = 24;
    int antennas_per_ap = 4;
    int user_count = 20;

    int coherence_block = 200;
    int pilot_length = 20;
    /// When set, pilot_length is tied to user_count (tau_p = K).
    bool pilot_length_follows_users = true;

    double tx_power_w = 0.2;
    double noise_power_w = 6.309573444801929e-13;  // -92 dBm

    double activation_ratio = 0.25;

    CorrelationModel correlation_model = CorrelationModel::uncorrelated;
    double angle_spread_deg = 15.0;

    std::uint64_t rng_seed = 1;
    int drops = 100;
    int realizations_per_drop = 10;

    SymbolAlphabet symbols = SymbolAlphabet::gaussian;
    RegularizerMode drzf_regularizer = RegularizerMode::exact;
    RegularizerSum drzf_sum = RegularizerSum::all_users;

    int total_antennas() const { return ap_count * antennas_per_ap; }
    int effective_pilot_length() const {
        return pilot_length_follows_users ? user_count : pilot_length;
    }
    /// Active APs per user under a user-centric strategy, round-half-up of alpha * L.
    int active_aps_per_user() const;
    double perimeter_m() const { return 2.0 * (room_length_m + room_width_m); }

    /// Throws Error(invalid_argument) on the first violated constraint.
    void validate() const;
    /// Non-fatal remarks, e.g. alpha * L not an integer.
    std::vector<std::string> warnings() const;
};

/// One random placement with its large-scale statistics.
struct Drop {
    int aps = 0;
    int antennas = 0;
    int users = 0;

    std::vector<Point3> ap_positions;
    std::vector<Point3> user_positions;
    /// Unit vector along the stripe at each AP; the AP array axis.
    std::vector<Point3> ap_axes;

    /// L x K linear large-scale gains.
    RMatrix beta;
    /// Spatial covariance of the channel between user k and AP l, stored at l * K + k.
    std::vector<CMatrix> covariances;

    const CMatrix& covariance(int user, int ap) const {
        return covariances[static_cast<std::size_t>(ap * users + user)];
    }
    CMatrix& covariance(int user, int ap) {
        return covariances[static_cast<std::size_t>(ap * users + user)];
    }
};

/// AP positions along the top edge of the walls, uniformly spaced in arc length.
///
/// The stripe starts at corner (0, 0) and runs counterclockwise seen from above
/// (+x first). AP i sits at arc position (i + 0.5) * stripe_length / L.
std::vector<Point3> place_aps(const ScenarioConfig& config);

/// Unit tangent of the stripe at each AP returned by place_aps.
std::vector<Point3> stripe_axes(const ScenarioConfig& config);

/// Users uniform over the floor, z = 0.
std::vector<Point3> place_users(const ScenarioConfig& config, Rng& rng);

/// Linear gain of the path-loss model -30.5 - 36.7 log10(d) dB.
double large_scale(double distance_m);

/// Azimuth of the user seen from the AP, measured from the array broadside
/// towards the array axis. Used as the nominal angle of the local scattering model.
double nominal_angle(const Point3& ap, const Point3& axis, const Point3& user);

Drop make_drop(const ScenarioConfig& config, Rng& rng);

}  // namespace cfstripe
