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

// Shared fixtures: small random deployments with a full set of observations,
// plus brute-force reference implementations used as oracles.

#include "cfstripe/channel.hpp"
#include "cfstripe/combining.hpp"
#include "cfstripe/estimation.hpp"
#include "cfstripe/rng.hpp"
#include "cfstripe/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace cfstripe::testing {

struct Instance {
    ScenarioConfig config;
    Drop drop;
    std::vector<double> powers;
    CMatrix pilots;
    ChannelRealization channel;
    ChannelEstimate estimate;
    DataObservation data;

    double noise() const { return config.noise_power_w; }
    int tau_p() const { return config.effective_pilot_length(); }
};

/// Random small deployment: L <= max_aps, N <= max_antennas, K <= max_users,
/// either correlation model, per-user powers in [0.05, 0.3] W.
inline Instance random_instance(std::uint64_t seed, int max_aps = 8, int max_antennas = 4,
                                int max_users = 8, bool force_uncorrelated = false) {
    Rng rng = Rng::for_stream(seed, 0, 12345);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(std::floor(rng.uniform(0.0, 1.0) * (hi - lo + 1)));
    };
    Instance in;
    in.config.ap_count = pick(1, max_aps);
    in.config.antennas_per_ap = pick(1, max_antennas);
    in.config.user_count = pick(1, max_users);
    in.config.correlation_model = (force_uncorrelated || rng.uniform(0.0, 1.0) < 0.5)
                                      ? CorrelationModel::uncorrelated
                                      : CorrelationModel::local_scattering;
    in.config.angle_spread_deg = rng.uniform(5.0, 30.0);
    in.config.activation_ratio = 0.5;  // keeps round(alpha L) >= 1 for L = 1
    in.config.rng_seed = seed;
    in.drop = make_drop(in.config, rng);
    for (int k = 0; k < in.config.user_count; ++k) in.powers.push_back(rng.uniform(0.05, 0.3));
    in.pilots = make_pilots(in.tau_p());
    in.channel = draw_channel(in.drop, rng);
    const auto z = observe_pilot(in.channel, in.powers, in.noise(), in.pilots, rng);
    in.estimate = MmseEstimator(in.drop, in.powers, in.noise(), in.pilots).estimate(z);
    const CVector s = draw_symbols(in.config.user_count, SymbolAlphabet::gaussian, rng);
    in.data = observe_data(in.channel, in.powers, in.noise(), s, rng);
    return in;
}

inline double relative_error(const CMatrix& a, const CMatrix& b) {
    const double scale = std::max(a.norm(), b.norm());
    return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

inline double relative_error(const CVector& a, const CVector& b) {
    const double scale = std::max(a.norm(), b.norm());
    return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

/// |a^H b| / (|a| |b|); 1 for two zero vectors.
inline double abs_cosine(const CVector& a, const CVector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 && nb == 0.0) return 1.0;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::abs(a.dot(b)) / (na * nb);
}

/// Block-diagonal M x M matrix from per-AP N x N blocks of one user.
inline CMatrix assemble_blocks(const std::vector<CMatrix>& blocks, int aps, int users, int user) {
    const auto n = blocks.front().rows();
    CMatrix out = CMatrix::Zero(aps * n, aps * n);
    for (int l = 0; l < aps; ++l) out.block(l * n, l * n, n, n) = blocks[static_cast<std::size_t>(l * users + user)];
    return out;
}

/// Uniformly random mask with exactly `active` APs per user.
inline ActivationMask random_mask(int aps, int users, int active, Rng& rng) {
    ActivationMask m = ActivationMask::Constant(aps, users, false);
    for (int k = 0; k < users; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(aps));
        for (int l = 0; l < aps; ++l) idx[static_cast<std::size_t>(l)] = l;
        // Partial Fisher-Yates.
        for (int j = 0; j < active; ++j) {
            const int r = j + static_cast<int>(std::floor(rng.uniform(0.0, 1.0) * (aps - j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(std::min(r, aps - 1))]);
            m(idx[static_cast<std::size_t>(j)], k) = true;
        }
    }
    return m;
}

}  // namespace cfstripe::testing
