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
#include "cfstripe/scenario.hpp"
#include "cfstripe/types.hpp"

#include <span>
#include <vector>

namespace cfstripe {

/// Stacked channel of all users. Column k is [h_{k,1}; ...; h_{k,L}], blocks of length N.
struct ChannelRealization {
    int aps = 0;
    int antennas = 0;
    CMatrix h;

    auto block(int user, int ap) { return h.block(ap * antennas, user, antennas, 1); }
    auto block(int user, int ap) const { return h.block(ap * antennas, user, antennas, 1); }
};

/// Pilot observation at every AP: N x tau_p per AP.
struct PilotObservation {
    std::vector<CMatrix> z;
};

/// Data observation at every AP for one channel use.
struct DataObservation {
    std::vector<CVector> y;
    CVector symbols;

    /// [y_1; ...; y_L]
    CVector stacked() const;
};

/// Gaussian local scattering covariance of an N-element half-wavelength ULA,
/// averaged over a Gaussian angle density N(nominal, spread^2) and scaled so
/// that tr(R) / N = beta. The uncorrelated model returns beta * I.
CMatrix covariance(CorrelationModel model, double beta, double nominal_angle_rad,
                   double angle_spread_rad, int antennas);

/// PSD square root via Hermitian eigendecomposition. Eigenvalues down to
/// -1e-12 * tr(R) / N are clamped to zero; anything more negative is an error.
CMatrix psd_sqrt(const CMatrix& r);

/// Draws Rayleigh block-fading realizations for one drop. Factorizes every
/// covariance once at construction.
class ChannelSampler {
public:
    explicit ChannelSampler(const Drop& drop);

    ChannelRealization draw(Rng& rng) const;

private:
    int aps_;
    int antennas_;
    int users_;
    std::vector<CMatrix> factors_;  // l * K + k
};

ChannelRealization draw_channel(const Drop& drop, Rng& rng);

/// Scaled DFT pilot book: tau_p x tau_p, columns orthogonal with squared norm tau_p.
/// User k transmits column k.
CMatrix make_pilots(int pilot_length);

/// Z_l = sum_i sqrt(p_i) h_{i,l} phi_i^T + N_l with N_l entries CN(0, noise).
PilotObservation observe_pilot(const ChannelRealization& channel, std::span<const double> powers,
                               double noise_power, const CMatrix& pilots, Rng& rng);

/// y_l = sum_i sqrt(p_i) h_{i,l} s_i + n_l with n_l entries CN(0, noise).
DataObservation observe_data(const ChannelRealization& channel, std::span<const double> powers,
                             double noise_power, const CVector& symbols, Rng& rng);

/// Unit-power symbols for K users.
CVector draw_symbols(int users, SymbolAlphabet alphabet, Rng& rng);

}  // namespace cfstripe
