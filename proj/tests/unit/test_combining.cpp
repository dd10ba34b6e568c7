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
#include "cfstripe/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace cfstripe;
using cfstripe::testing::abs_cosine;
using cfstripe::testing::Instance;
using cfstripe::testing::random_instance;
using cfstripe::testing::relative_error;

namespace {

DrzfRegularizer regularizer_of(const Instance& in, RegularizerMode mode = RegularizerMode::exact) {
    return drzf_regularizer(in.drop.beta, in.powers, in.noise(), in.tau_p(), mode);
}

// Dense-assembly LMMSE with an explicit inverse.
CMatrix lmmse_reference(const Instance& in) {
    const auto& est = in.estimate;
    const auto m = est.h_hat.rows();
    CMatrix v(m, est.users);
    for (int k = 0; k < est.users; ++k) {
        CMatrix a = in.noise() * CMatrix::Identity(m, m);
        for (int i = 0; i < est.users; ++i) {
            if (i == k) continue;
            const CVector h = est.h_hat.col(i);
            a += in.powers[i] * (h * h.adjoint() +
                                 cfstripe::testing::assemble_blocks(est.error_cov, est.aps, est.users, i));
        }
        v.col(k) = a.inverse() * est.h_hat.col(k);
    }
    return v;
}

}  // namespace

TEST(Lmmse, MatchesExplicitInverse) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1000 + t);
        const auto v = combine_lmmse(in.estimate, in.powers, in.noise());
        EXPECT_EQ(v.scheme, Scheme::lmmse);
        EXPECT_LE(relative_error(v.v, lmmse_reference(in)), 1e-7) << t;
    }
}

TEST(Lmmse, BeatsMrFamilyPerUser) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1100 + t);
        const auto& est = in.estimate;
        const RVector best = sinr_all(combine_lmmse(est, in.powers, in.noise()), est, in.powers, in.noise());
        for (const auto& o : {combine_mr(est), combine_imr(est, in.drop.beta, in.noise())}) {
            const RVector s = sinr_all(o, est, in.powers, in.noise());
            // Equal up to roundoff when K = 1 (both reduce to scaled MR).
            for (int k = 0; k < est.users; ++k) EXPECT_GE(best(k) * (1 + 1e-9), s(k)) << t << " user " << k;
        }
    }
}

TEST(Sinr, MaximizedByWhitenedMatchedFilter) {
    // The SINR is a generalized Rayleigh quotient, so B^{-1} h_k with B the full
    // disturbance covariance dominates every other combiner.
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1150 + t);
        const auto& est = in.estimate;
        const auto m = est.h_hat.rows();
        const auto reg = regularizer_of(in);
        std::vector<CombinerSet> others{combine_mr(est), combine_imr(est, in.drop.beta, in.noise()),
                                        combine_lmmse(est, in.powers, in.noise()),
                                        combine_drzf(est, reg, in.powers, RegularizerSum::all_users)};
        others.push_back({Scheme::mr, CMatrix::Random(m, est.users), full_mask(est.aps, est.users)});
        for (int k = 0; k < est.users; ++k) {
            CMatrix b = in.noise() * CMatrix::Identity(m, m);
            for (int i = 0; i < est.users; ++i) {
                b += in.powers[i] * est.stacked_error(i);
                if (i != k) b += in.powers[i] * est.h_hat.col(i) * est.h_hat.col(i).adjoint();
            }
            const CVector v = b.inverse() * est.h_hat.col(k);
            const double best = sinr(v, k, est, in.powers, in.noise());
            for (const auto& o : others) {
                EXPECT_GE(best * (1 + 1e-9), sinr(o.v.col(k), k, est, in.powers, in.noise())) << t << " user " << k;
            }
        }
    }
}

TEST(IidLmmse, EqualsLmmseUnderUncorrelatedFading) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1200 + t, 8, 4, 8, true);
        const CMatrix iid = combine_iid_lmmse(in.estimate, in.drop.beta, in.powers, in.noise(), in.tau_p());
        const CMatrix full = combine_lmmse(in.estimate, in.powers, in.noise()).v;
        EXPECT_LE(relative_error(iid, full), 1e-9) << t;
    }
}

TEST(Imr, BlockwiseScaling) {
    const auto in = random_instance(1300);
    const auto v = combine_imr(in.estimate, in.drop.beta, in.noise());
    const int n = in.drop.antennas;
    for (int l = 0; l < in.drop.aps; ++l)
        for (int k = 0; k < in.drop.users; ++k) {
            double denom = in.noise();
            for (int i = 0; i < in.drop.users; ++i)
                if (i != k) denom += in.drop.beta(l, i);
            const CVector expected = CVector(in.estimate.block(k, l)) / denom;
            EXPECT_LE(relative_error(CVector(v.v.block(l * n, k, n, 1)), expected), 1e-14);
        }
}

TEST(Mr, IsTheEstimate) {
    const auto in = random_instance(1301);
    EXPECT_TRUE(combine_mr(in.estimate).v == in.estimate.h_hat);
}

TEST(Regularizer, ExactApproximateAndExcludeSelf) {
    const auto in = random_instance(1400, 6, 2, 5);
    const auto exact = regularizer_of(in);
    double expected = in.noise();
    for (int i = 0; i < in.drop.users; ++i) {
        double phi = 0.0;
        for (int l = 0; l < in.drop.aps; ++l) {
            const double b = in.drop.beta(l, i);
            phi += b * in.noise() / (in.tau_p() * in.powers[i] * b + in.noise());
        }
        phi /= in.drop.aps;
        EXPECT_NEAR(exact.phi_bar(i), phi, 1e-12 * phi);
        expected += in.powers[i] * phi;
    }
    EXPECT_NEAR(exact.shared(), expected, 1e-12 * expected);
    EXPECT_DOUBLE_EQ(exact.for_user(0, RegularizerSum::all_users), exact.shared());
    EXPECT_NEAR(exact.for_user(0, RegularizerSum::exclude_self),
                expected - in.powers[0] * exact.phi_bar(0), 1e-12 * expected);
    const auto approx = regularizer_of(in, RegularizerMode::approximate);
    EXPECT_NEAR(approx.phi_bar(0), in.noise() / (in.tau_p() * in.powers[0]), 1e-25);
}

TEST(Drzf, PushThroughIdentityOracle) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1500 + t);
        const auto reg = regularizer_of(in);
        const auto v = combine_drzf(in.estimate, reg, in.powers, RegularizerSum::all_users);
        const CMatrix h = scaled_estimates(in.estimate, in.powers);
        const auto m = h.rows();
        const CMatrix ref = (h * h.adjoint() + reg.shared() * CMatrix::Identity(m, m)).inverse() * h;
        EXPECT_LE(relative_error(v.v, ref), 1e-8) << t;
    }
}

TEST(Drzf, MaskedPushThroughOracle) {
    for (int t = 0; t < 10; ++t) {
        const auto in = random_instance(1550 + t);
        const auto reg = regularizer_of(in);
        const auto mask = uc_select_beta(in.drop.beta, 0.5);
        const auto v = combine_drzf(in.estimate, reg, in.powers, RegularizerSum::all_users, &mask);
        CMatrix h = in.estimate.h_hat;
        const int n = in.drop.antennas;
        for (int k = 0; k < in.drop.users; ++k) {
            h.col(k) *= std::sqrt(in.powers[k]);
            for (int l = 0; l < in.drop.aps; ++l)
                if (!mask(l, k)) h.block(l * n, k, n, 1).setZero();
        }
        const auto m = h.rows();
        const CMatrix ref = (h * h.adjoint() + reg.shared() * CMatrix::Identity(m, m)).inverse() * h;
        EXPECT_LE(relative_error(v.v, ref), 1e-8) << t;
        EXPECT_TRUE((v.omega == mask).all());
    }
}

TEST(Drzf, KDimensionalFormIsScaledFullForm) {
    for (auto sum : {RegularizerSum::all_users, RegularizerSum::exclude_self}) {
        const auto in = random_instance(1600);
        const auto reg = regularizer_of(in);
        const auto v = combine_drzf(in.estimate, reg, in.powers, sum);
        const CMatrix full = combine_rzf_full(in.estimate, reg, in.powers, sum);
        for (int k = 0; k < in.drop.users; ++k)
            EXPECT_LE(relative_error(CVector(v.v.col(k)), std::sqrt(in.powers[k]) * CVector(full.col(k))), 1e-8);
    }
}

TEST(Rzf, InterferenceAndFullFormsAreCollinear) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(1700 + t);
        const auto reg = regularizer_of(in);
        const CMatrix a = combine_rzf_interference(in.estimate, reg, in.powers, RegularizerSum::all_users);
        const CMatrix b = combine_rzf_full(in.estimate, reg, in.powers, RegularizerSum::all_users);
        for (int k = 0; k < in.drop.users; ++k) EXPECT_GE(abs_cosine(a.col(k), b.col(k)), 1 - 1e-9);
    }
}

TEST(UserCentric, CountsAndTies) {
    RMatrix beta = RMatrix::Constant(8, 3, 1.0);
    const auto mask = uc_select_beta(beta, 0.25);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(mask.col(k).count(), 2);
        EXPECT_TRUE(mask(0, k) && mask(1, k));  // ties: lowest indices
    }
    const auto all = uc_select_beta(beta, 1.0);
    EXPECT_TRUE(all.all());
    const auto none = uc_select(UcStrategy::none, beta, 0.25, 1.0);
    EXPECT_TRUE(none.all());
    EXPECT_EQ(active_count(0.25, 10), 3);  // 2.5 rounds up
    EXPECT_EQ(active_count(0.25, 24), 6);
    EXPECT_THROW(uc_select_beta(beta, 0.0), Error);
    EXPECT_THROW(uc_select_beta(beta, 1.5), Error);
}

TEST(UserCentric, StrongestApsSelected) {
    RMatrix beta(4, 1);
    beta << 0.1, 0.4, 0.3, 0.2;
    const auto mask = uc_select_beta(beta, 0.5);
    EXPECT_FALSE(mask(0, 0));
    EXPECT_TRUE(mask(1, 0));
    EXPECT_TRUE(mask(2, 0));
    EXPECT_FALSE(mask(3, 0));
}

TEST(UserCentric, PriorSinrRankingDiffersFromGain) {
    // User 0 hears AP 0 best, but AP 0 is dominated by user 1.
    RMatrix beta(2, 2);
    beta << 10.0, 100.0,
             5.0, 0.1;
    const auto by_gain = uc_select_beta(beta, 0.5);
    const auto by_sinr = uc_select_sinr(beta, 0.5, 1e-3);
    EXPECT_TRUE(by_gain(0, 0));
    EXPECT_FALSE(by_gain(1, 0));
    EXPECT_FALSE(by_sinr(0, 0));
    EXPECT_TRUE(by_sinr(1, 0));
}

TEST(UserCentric, ApplyMaskZerosInactiveBlocks) {
    const auto in = random_instance(1800, 8, 3, 4);
    const auto mask = uc_select_beta(in.drop.beta, 0.5);
    const auto masked = apply_mask(combine_mr(in.estimate), mask, in.drop.antennas);
    const int n = in.drop.antennas;
    for (int l = 0; l < in.drop.aps; ++l)
        for (int k = 0; k < in.drop.users; ++k) {
            const CVector block = masked.v.block(l * n, k, n, 1);
            if (mask(l, k))
                EXPECT_TRUE(block == CVector(in.estimate.block(k, l)));
            else
                EXPECT_EQ(block.norm(), 0.0);
        }
    const auto reg = regularizer_of(in);
    EXPECT_THROW(apply_mask(combine_drzf(in.estimate, reg, in.powers, RegularizerSum::all_users), mask, n), Error);
}
