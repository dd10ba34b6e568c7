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

#include "cfstripe/channel.hpp"
#include "cfstripe/scenario.hpp"
#include "cfstripe/types.hpp"

#include <span>
#include <vector>

namespace cfstripe {

/// MMSE estimates with the second-order statistics that go with them.
struct ChannelEstimate {
    int aps = 0;
    int antennas = 0;
    int users = 0;

    /// M x K, same block layout as ChannelRealization.
    CMatrix h_hat;
    /// Covariance of the estimate, per (k, l) at l * K + k.
    std::vector<CMatrix> gamma;
    /// Covariance of the estimation error R - Gamma, same indexing.
    std::vector<CMatrix> error_cov;

    auto block(int user, int ap) { return h_hat.block(ap * antennas, user, antennas, 1); }
    auto block(int user, int ap) const { return h_hat.block(ap * antennas, user, antennas, 1); }

    const CMatrix& gamma_block(int user, int ap) const {
        return gamma[static_cast<std::size_t>(ap * users + user)];
    }
    const CMatrix& error_block(int user, int ap) const {
        return error_cov[static_cast<std::size_t>(ap * users + user)];
    }

    /// M x M block-diagonal error covariance of one user.
    CMatrix stacked_error(int user) const;
    /// M x M block-diagonal estimate covariance of one user.
    CMatrix stacked_gamma(int user) const;
};

struct GammaBlock {
    CMatrix gamma;
    CMatrix error;
};

/// Gamma = tau_p p R (tau_p p R + noise I)^{-1} R and its complement R - Gamma.
GammaBlock gamma_block(const CMatrix& r, double power, double noise_power, int pilot_length);

/// Single-block estimate sqrt(p) R (tau_p p R + noise I)^{-1} Z phi_k^*.
/// The system matrix is factored with a Hermitian (Cholesky) solve.
CVector mmse_estimate(const CMatrix& z, const CMatrix& pilots, int user, const CMatrix& r,
                      double power, double noise_power);

/// Per-drop estimator. The filters sqrt(p) R (tau_p p R + noise I)^{-1} and the
/// Gamma blocks depend only on the drop, so they are computed once and reused
/// for every coherence block.
class MmseEstimator {
public:
    MmseEstimator(const Drop& drop, std::span<const double> powers, double noise_power,
                  const CMatrix& pilots);

    ChannelEstimate estimate(const PilotObservation& pilots) const;

private:
    int aps_;
    int antennas_;
    int users_;
    CMatrix pilots_;
    std::vector<CMatrix> filters_;
    std::vector<CMatrix> gamma_;
    std::vector<CMatrix> error_;
};

}  // namespace cfstripe
