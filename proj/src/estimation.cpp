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

#include "cfstripe/estimation.hpp"

#include <cmath>

namespace cfstripe {

namespace {

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

Eigen::LLT<CMatrix> factor_system(const CMatrix& r, double power, double noise_power,
                                  int pilot_length) {
    const auto n = r.rows();
    CMatrix a = (pilot_length * power) * r + noise_power * CMatrix::Identity(n, n);
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::numeric, "MMSE system matrix is singular (zero noise with singular R?)");
    return llt;
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks, int aps, int antennas, int users,
                       int user) {
    const int m = aps * antennas;
    CMatrix out = CMatrix::Zero(m, m);
    for (int l = 0; l < aps; ++l)
        out.block(l * antennas, l * antennas, antennas, antennas) =
            blocks[static_cast<std::size_t>(l * users + user)];
    return out;
}

}  // namespace

CMatrix ChannelEstimate::stacked_error(int user) const {
    return block_diagonal(error_cov, aps, antennas, users, user);
}

CMatrix ChannelEstimate::stacked_gamma(int user) const {
    return block_diagonal(gamma, aps, antennas, users, user);
}

GammaBlock gamma_block(const CMatrix& r, double power, double noise_power, int pilot_length) {
    const auto llt = factor_system(r, power, noise_power, pilot_length);
    const CMatrix solved = llt.solve(r);  // (tau_p p R + sigma^2 I)^{-1} R
    GammaBlock out;
    out.gamma = hermitian_part((pilot_length * power) * r * solved);
    out.error = hermitian_part(r - out.gamma);
    return out;
}

CVector mmse_estimate(const CMatrix& z, const CMatrix& pilots, int user, const CMatrix& r,
                      double power, double noise_power) {
    const int tau_p = static_cast<int>(pilots.rows());
    if (z.cols() != tau_p || z.rows() != r.rows())
        fail(ErrorCode::invalid_argument, "pilot observation dimensions do not match");
    const CVector projected = z * pilots.col(user).conjugate();
    const auto llt = factor_system(r, power, noise_power, tau_p);
    return std::sqrt(power) * (r * llt.solve(projected));
}

MmseEstimator::MmseEstimator(const Drop& drop, std::span<const double> powers,
                             double noise_power, const CMatrix& pilots)
    : aps_(drop.aps), antennas_(drop.antennas), users_(drop.users), pilots_(pilots) {
    if (static_cast<int>(powers.size()) != users_)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    if (pilots.cols() < users_) fail(ErrorCode::invalid_argument, "more users than pilots");

    const int tau_p = static_cast<int>(pilots.rows());
    const auto count = static_cast<std::size_t>(aps_ * users_);
    filters_.reserve(count);
    gamma_.reserve(count);
    error_.reserve(count);
    for (int l = 0; l < aps_; ++l) {
        for (int k = 0; k < users_; ++k) {
            const CMatrix& r = drop.covariance(k, l);
            const double p = powers[static_cast<std::size_t>(k)];
            const auto llt = factor_system(r, p, noise_power, tau_p);
            const CMatrix solved = llt.solve(r);
            // R A^{-1} = (A^{-1} R)^H for Hermitian R and A.
            filters_.push_back(std::sqrt(p) * solved.adjoint());
            CMatrix g = hermitian_part((tau_p * p) * r * solved);
            error_.push_back(hermitian_part(r - g));
            gamma_.push_back(std::move(g));
        }
    }
}

ChannelEstimate MmseEstimator::estimate(const PilotObservation& obs) const {
    if (static_cast<int>(obs.z.size()) != aps_)
        fail(ErrorCode::invalid_argument, "pilot observation has the wrong AP count");

    ChannelEstimate est;
    est.aps = aps_;
    est.antennas = antennas_;
    est.users = users_;
    est.h_hat.resize(aps_ * antennas_, users_);
    est.gamma = gamma_;
    est.error_cov = error_;

    // Z_l phi_k^* for every user at once: N x K.
    const CMatrix conj_pilots = pilots_.leftCols(users_).conjugate();
    for (int l = 0; l < aps_; ++l) {
        const CMatrix projected = obs.z[static_cast<std::size_t>(l)] * conj_pilots;
        for (int k = 0; k < users_; ++k)
            est.block(k, l) = filters_[static_cast<std::size_t>(l * users_ + k)] * projected.col(k);
    }
    return est;
}

}  // namespace cfstripe
