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

#include "cfstripe/combining.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cfstripe {

namespace {

void check_powers(const ChannelEstimate& est, std::span<const double> powers) {
    if (static_cast<int>(powers.size()) != est.users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
}

CVector solve_hpd(const CMatrix& a, const CVector& b) {
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "combiner system is not positive definite");
    return llt.solve(b);
}

// sum_i p_i h_i h_i^H
CMatrix weighted_outer(const ChannelEstimate& est, std::span<const double> powers) {
    const CMatrix h = scaled_estimates(est, powers);
    CMatrix out = CMatrix::Zero(h.rows(), h.rows());
    out.selfadjointView<Eigen::Lower>().rankUpdate(h);
    return out.selfadjointView<Eigen::Lower>();
}

// Per-AP error variance beta sigma^2 / (tau_p p beta + sigma^2).
double error_variance(double beta, double power, double noise_power, int pilot_length) {
    return beta * noise_power / (pilot_length * power * beta + noise_power);
}

CombinerSet make_set(Scheme scheme, CMatrix v, const ChannelEstimate& est) {
    return CombinerSet{scheme, std::move(v), full_mask(est.aps, est.users)};
}

}  // namespace

double DrzfRegularizer::shared() const {
    double sum = noise_power;
    for (Eigen::Index i = 0; i < phi_bar.size(); ++i)
        if (powers(i) > 0) sum += powers(i) * phi_bar(i);
    return sum;
}

double DrzfRegularizer::for_user(int user, RegularizerSum sum) const {
    const double all = shared();
    if (sum == RegularizerSum::all_users || powers(user) <= 0) return all;
    return all - powers(user) * phi_bar(user);
}

CMatrix scaled_estimates(const ChannelEstimate& est, std::span<const double> powers,
                         const ActivationMask* mask) {
    check_powers(est, powers);
    CMatrix h = est.h_hat;
    for (int k = 0; k < est.users; ++k) {
        h.col(k) *= std::sqrt(powers[static_cast<std::size_t>(k)]);
        if (mask == nullptr) continue;
        for (int l = 0; l < est.aps; ++l)
            if (!(*mask)(l, k)) h.block(l * est.antennas, k, est.antennas, 1).setZero();
    }
    return h;
}

ActivationMask full_mask(int aps, int users) { return ActivationMask::Constant(aps, users, true); }

RMatrix prior_interference(const RMatrix& beta, double noise_power) {
    RMatrix out(beta.rows(), beta.cols());
    for (Eigen::Index l = 0; l < beta.rows(); ++l) {
        const double total = beta.row(l).sum();
        for (Eigen::Index k = 0; k < beta.cols(); ++k)
            out(l, k) = total - beta(l, k) + noise_power;
    }
    return out;
}

CombinerSet combine_mr(const ChannelEstimate& est) { return make_set(Scheme::mr, est.h_hat, est); }

CombinerSet combine_imr(const ChannelEstimate& est, const RMatrix& beta, double noise_power) {
    if (beta.rows() != est.aps || beta.cols() != est.users)
        fail(ErrorCode::invalid_argument, "beta must be L x K");
    const RMatrix denom = prior_interference(beta, noise_power);
    CMatrix v = est.h_hat;
    for (int k = 0; k < est.users; ++k)
        for (int l = 0; l < est.aps; ++l)
            v.block(l * est.antennas, k, est.antennas, 1) /= denom(l, k);
    return make_set(Scheme::imr, std::move(v), est);
}

CombinerSet combine_lmmse(const ChannelEstimate& est, std::span<const double> powers,
                          double noise_power) {
    check_powers(est, powers);
    const int m = est.aps * est.antennas;
    const int n = est.antennas;

    // Everything summed over all users; each user then removes its own terms.
    CMatrix total = weighted_outer(est, powers);
    total.diagonal().array() += noise_power;
    for (int l = 0; l < est.aps; ++l)
        for (int i = 0; i < est.users; ++i)
            total.block(l * n, l * n, n, n) += powers[static_cast<std::size_t>(i)] * est.error_block(i, l);

    CMatrix v(m, est.users);
    for (int k = 0; k < est.users; ++k) {
        const double p = powers[static_cast<std::size_t>(k)];
        CMatrix a = total;
        a.noalias() -= p * est.h_hat.col(k) * est.h_hat.col(k).adjoint();
        for (int l = 0; l < est.aps; ++l) a.block(l * n, l * n, n, n) -= p * est.error_block(k, l);
        v.col(k) = solve_hpd(a, est.h_hat.col(k));
    }
    return make_set(Scheme::lmmse, std::move(v), est);
}

CMatrix combine_iid_lmmse(const ChannelEstimate& est, const RMatrix& beta,
                          std::span<const double> powers, double noise_power, int pilot_length) {
    check_powers(est, powers);
    const int m = est.aps * est.antennas;
    CMatrix v(m, est.users);
    for (int k = 0; k < est.users; ++k) {
        CMatrix a = noise_power * CMatrix::Identity(m, m);
        for (int i = 0; i < est.users; ++i) {
            if (i == k) continue;
            const double p = powers[static_cast<std::size_t>(i)];
            a.noalias() += p * est.h_hat.col(i) * est.h_hat.col(i).adjoint();
            for (int l = 0; l < est.aps; ++l) {
                const double phi = error_variance(beta(l, i), p, noise_power, pilot_length);
                a.diagonal().segment(l * est.antennas, est.antennas).array() += p * phi;
            }
        }
        v.col(k) = solve_hpd(a, est.h_hat.col(k));
    }
    return v;
}

DrzfRegularizer drzf_regularizer(const RMatrix& beta, std::span<const double> powers,
                                 double noise_power, int pilot_length, RegularizerMode mode) {
    const auto users = beta.cols();
    if (static_cast<Eigen::Index>(powers.size()) != users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    DrzfRegularizer reg;
    reg.noise_power = noise_power;
    reg.powers = Eigen::Map<const RVector>(powers.data(), users);
    reg.phi_bar = RVector::Zero(users);
    for (Eigen::Index i = 0; i < users; ++i) {
        const double p = powers[static_cast<std::size_t>(i)];
        if (mode == RegularizerMode::approximate) {
            reg.phi_bar(i) = p > 0 ? noise_power / (pilot_length * p) : 0.0;
            continue;
        }
        double sum = 0.0;
        for (Eigen::Index l = 0; l < beta.rows(); ++l)
            sum += error_variance(beta(l, i), p, noise_power, pilot_length);
        reg.phi_bar(i) = sum / static_cast<double>(beta.rows());
    }
    return reg;
}

CMatrix combine_rzf_interference(const ChannelEstimate& est, const DrzfRegularizer& reg,
                                 std::span<const double> powers, RegularizerSum sum) {
    const CMatrix total = weighted_outer(est, powers);
    const int m = est.aps * est.antennas;
    CMatrix v(m, est.users);
    for (int k = 0; k < est.users; ++k) {
        CMatrix a = total;
        a.noalias() -= powers[static_cast<std::size_t>(k)] * est.h_hat.col(k) * est.h_hat.col(k).adjoint();
        a.diagonal().array() += reg.for_user(k, sum);
        v.col(k) = solve_hpd(a, est.h_hat.col(k));
    }
    return v;
}

CMatrix combine_rzf_full(const ChannelEstimate& est, const DrzfRegularizer& reg,
                         std::span<const double> powers, RegularizerSum sum) {
    const CMatrix total = weighted_outer(est, powers);
    const int m = est.aps * est.antennas;
    CMatrix v(m, est.users);
    for (int k = 0; k < est.users; ++k) {
        CMatrix a = total;
        a.diagonal().array() += reg.for_user(k, sum);
        v.col(k) = solve_hpd(a, est.h_hat.col(k));
    }
    return v;
}

CombinerSet combine_drzf(const ChannelEstimate& est, const DrzfRegularizer& reg,
                         std::span<const double> powers, RegularizerSum sum,
                         const ActivationMask* mask) {
    const CMatrix h = scaled_estimates(est, powers, mask);
    const CMatrix gram = h.adjoint() * h;
    const int users = est.users;
    CMatrix v(h.rows(), users);

    if (sum == RegularizerSum::all_users) {
        CMatrix g = gram;
        g.diagonal().array() += reg.shared();
        Eigen::LLT<CMatrix> llt(g);
        if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "D-RZF Gram system is not positive definite");
        // H G^{-1} = (G^{-1} H^H)^H
        v = llt.solve(h.adjoint()).adjoint();
    } else {
        for (int k = 0; k < users; ++k) {
            CMatrix g = gram;
            g.diagonal().array() += reg.for_user(k, sum);
            Eigen::LLT<CMatrix> llt(g);
            if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "D-RZF Gram system is not positive definite");
            v.col(k) = h * llt.solve(CVector::Unit(users, k));
        }
    }
    CombinerSet out{Scheme::drzf, std::move(v), mask ? *mask : full_mask(est.aps, users)};
    return out;
}

int active_count(double activation_ratio, int aps) {
    return std::clamp(static_cast<int>(std::floor(activation_ratio * aps + 0.5)), 0, aps);
}

namespace {

ActivationMask select_top(const RMatrix& score, double activation_ratio) {
    if (!(activation_ratio > 0 && activation_ratio <= 1))
        fail(ErrorCode::invalid_argument, "activation ratio must be in (0, 1]");
    const int aps = static_cast<int>(score.rows());
    const int users = static_cast<int>(score.cols());
    const int keep = active_count(activation_ratio, aps);
    ActivationMask mask = ActivationMask::Constant(aps, users, false);
    std::vector<int> order(static_cast<std::size_t>(aps));
    for (int k = 0; k < users; ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return score(a, k) > score(b, k); });
        for (int j = 0; j < keep; ++j) mask(order[static_cast<std::size_t>(j)], k) = true;
    }
    return mask;
}

}  // namespace

ActivationMask uc_select_beta(const RMatrix& beta, double activation_ratio) {
    return select_top(beta, activation_ratio);
}

ActivationMask uc_select_sinr(const RMatrix& beta, double activation_ratio, double noise_power) {
    const RMatrix prior_sinr = beta.cwiseQuotient(prior_interference(beta, noise_power));
    return select_top(prior_sinr, activation_ratio);
}

ActivationMask uc_select(UcStrategy strategy, const RMatrix& beta, double activation_ratio,
                         double noise_power) {
    switch (strategy) {
        case UcStrategy::none: return full_mask(static_cast<int>(beta.rows()), static_cast<int>(beta.cols()));
        case UcStrategy::beta: return uc_select_beta(beta, activation_ratio);
        case UcStrategy::sinr: return uc_select_sinr(beta, activation_ratio, noise_power);
    }
    fail(ErrorCode::invalid_argument, "unknown user-centric strategy");
}

CombinerSet apply_mask(CombinerSet combiner, const ActivationMask& omega, int antennas) {
    if (combiner.scheme == Scheme::drzf)
        fail(ErrorCode::invalid_argument,
             "D-RZF is masked at the estimate level; pass the mask to combine_drzf");
    const auto aps = omega.rows();
    if (omega.cols() != combiner.v.cols() || aps * antennas != combiner.v.rows())
        fail(ErrorCode::invalid_argument, "mask dimensions do not match the combiner");
    for (Eigen::Index k = 0; k < omega.cols(); ++k)
        for (Eigen::Index l = 0; l < aps; ++l)
            if (!omega(l, k)) combiner.v.block(l * antennas, k, antennas, 1).setZero();
    combiner.omega = omega;
    return combiner;
}

}  // namespace cfstripe
