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

#include "cfstripe/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace cfstripe {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes{
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights{
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// E{exp(j pi d sin(theta + delta))}, delta ~ N(0, spread^2), for d = 0..n-1.
// Composite Gauss-Legendre over +-8 standard deviations.
std::vector<Complex> scattering_lags(double theta, double spread, int n) {
    const double half_range = 8.0 * spread;
    const int panels = 16 + static_cast<int>(std::ceil(2.0 * half_range * std::max(n, 1)));
    const double width = 2.0 * half_range / panels;

    std::vector<Complex> lags(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    double mass = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = -half_range + (p + 0.5) * width;
        for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
            const double delta = mid + 0.5 * width * kGlNodes[q];
            const double w = 0.5 * width * kGlWeights[q] *
                             std::exp(-delta * delta / (2.0 * spread * spread));
            mass += w;
            const double phase = std::numbers::pi * std::sin(theta + delta);
            for (int d = 0; d < n; ++d) {
                lags[static_cast<std::size_t>(d)] += w * std::polar(1.0, phase * d);
            }
        }
    }
    for (auto& v : lags) v /= mass;
    lags[0] = 1.0;
    return lags;
}

bool is_diagonal(const CMatrix& r) {
    for (Eigen::Index j = 0; j < r.cols(); ++j)
        for (Eigen::Index i = 0; i < r.rows(); ++i)
            if (i != j && r(i, j) != Complex{0.0, 0.0}) return false;
    return true;
}

}  // namespace

CVector DataObservation::stacked() const {
    Eigen::Index total = 0;
    for (const auto& v : y) total += v.size();
    CVector out(total);
    Eigen::Index offset = 0;
    for (const auto& v : y) {
        out.segment(offset, v.size()) = v;
        offset += v.size();
    }
    return out;
}

CMatrix covariance(CorrelationModel model, double beta, double nominal_angle_rad,
                   double angle_spread_rad, int antennas) {
    if (antennas < 1) fail(ErrorCode::invalid_argument, "antennas must be >= 1");
    if (model == CorrelationModel::uncorrelated || antennas == 1) {
        return beta * CMatrix::Identity(antennas, antennas);
    }
    if (!(angle_spread_rad > 0)) fail(ErrorCode::invalid_argument, "angle spread must be positive");

    const auto lags = scattering_lags(nominal_angle_rad, angle_spread_rad, antennas);
    CMatrix r(antennas, antennas);
    for (int m = 0; m < antennas; ++m) {
        for (int n = 0; n < antennas; ++n) {
            const Complex v = lags[static_cast<std::size_t>(std::abs(m - n))];
            r(m, n) = beta * (m >= n ? v : std::conj(v));
        }
    }
    return r;
}

CMatrix psd_sqrt(const CMatrix& r) {
    const auto n = r.rows();
    if (r.cols() != n) fail(ErrorCode::invalid_argument, "covariance must be square");
    if (is_diagonal(r)) {
        CMatrix out = CMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = r(i, i).real();
            if (d < 0) fail(ErrorCode::numeric, "covariance has a negative diagonal entry");
            out(i, i) = std::sqrt(d);
        }
        return out;
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(r);
    if (eig.info() != Eigen::Success) fail(ErrorCode::numeric, "eigendecomposition failed");
    const double scale = std::abs(r.trace().real()) / static_cast<double>(n);
    RVector values = eig.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (values(i) < -1e-12 * scale)
            fail(ErrorCode::numeric, "covariance is not positive semidefinite");
        values(i) = std::sqrt(std::max(values(i), 0.0));
    }
    const CMatrix& u = eig.eigenvectors();
    return u * values.asDiagonal() * u.adjoint();
}

ChannelSampler::ChannelSampler(const Drop& drop)
    : aps_(drop.aps), antennas_(drop.antennas), users_(drop.users) {
    factors_.reserve(drop.covariances.size());
    for (const auto& r : drop.covariances) factors_.push_back(psd_sqrt(r));
}

ChannelRealization ChannelSampler::draw(Rng& rng) const {
    ChannelRealization out;
    out.aps = aps_;
    out.antennas = antennas_;
    out.h.resize(aps_ * antennas_, users_);
    CVector g(antennas_);
    for (int k = 0; k < users_; ++k) {
        for (int l = 0; l < aps_; ++l) {
            for (int n = 0; n < antennas_; ++n) g(n) = rng.complex_normal();
            out.block(k, l) = factors_[static_cast<std::size_t>(l * users_ + k)] * g;
        }
    }
    return out;
}

ChannelRealization draw_channel(const Drop& drop, Rng& rng) {
    return ChannelSampler(drop).draw(rng);
}

CMatrix make_pilots(int pilot_length) {
    if (pilot_length < 1) fail(ErrorCode::invalid_argument, "pilot_length must be >= 1");
    CMatrix phi(pilot_length, pilot_length);
    for (int t = 0; t < pilot_length; ++t) {
        for (int k = 0; k < pilot_length; ++k) {
            // Reduce the index product first so large books keep exact phases.
            const int idx = (t * k) % pilot_length;
            phi(t, k) = std::polar(1.0, -2.0 * std::numbers::pi * idx / pilot_length);
        }
    }
    return phi;
}

PilotObservation observe_pilot(const ChannelRealization& channel, std::span<const double> powers,
                               double noise_power, const CMatrix& pilots, Rng& rng) {
    const int users = static_cast<int>(channel.h.cols());
    const auto tau_p = pilots.rows();
    if (static_cast<int>(powers.size()) != users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    if (users > pilots.cols()) fail(ErrorCode::invalid_argument, "more users than pilots");

    // sqrt(p_i) phi_i^T stacked as rows: K x tau_p.
    CMatrix tx(users, tau_p);
    for (int i = 0; i < users; ++i)
        tx.row(i) = std::sqrt(powers[static_cast<std::size_t>(i)]) * pilots.col(i).transpose();

    PilotObservation obs;
    obs.z.reserve(static_cast<std::size_t>(channel.aps));
    for (int l = 0; l < channel.aps; ++l) {
        CMatrix z = channel.h.middleRows(l * channel.antennas, channel.antennas) * tx;
        for (Eigen::Index t = 0; t < z.cols(); ++t)
            for (Eigen::Index n = 0; n < z.rows(); ++n) z(n, t) += rng.complex_normal(noise_power);
        obs.z.push_back(std::move(z));
    }
    return obs;
}

DataObservation observe_data(const ChannelRealization& channel, std::span<const double> powers,
                             double noise_power, const CVector& symbols, Rng& rng) {
    const int users = static_cast<int>(channel.h.cols());
    if (static_cast<int>(powers.size()) != users || symbols.size() != users)
        fail(ErrorCode::invalid_argument, "one power and one symbol per user required");

    CVector tx(users);
    for (int i = 0; i < users; ++i)
        tx(i) = std::sqrt(powers[static_cast<std::size_t>(i)]) * symbols(i);

    DataObservation obs;
    obs.symbols = symbols;
    obs.y.reserve(static_cast<std::size_t>(channel.aps));
    for (int l = 0; l < channel.aps; ++l) {
        CVector y = channel.h.middleRows(l * channel.antennas, channel.antennas) * tx;
        for (Eigen::Index n = 0; n < y.size(); ++n) y(n) += rng.complex_normal(noise_power);
        obs.y.push_back(std::move(y));
    }
    return obs;
}

CVector draw_symbols(int users, SymbolAlphabet alphabet, Rng& rng) {
    CVector s(users);
    for (int i = 0; i < users; ++i) {
        if (alphabet == SymbolAlphabet::gaussian) {
            s(i) = rng.complex_normal();
        } else {
            const auto bits = rng.engine()();
            const double re = (bits & 1U) ? 1.0 : -1.0;
            const double im = (bits & 2U) ? 1.0 : -1.0;
            s(i) = Complex{re, im} / std::numbers::sqrt2;
        }
    }
    return s;
}

}  // namespace cfstripe
