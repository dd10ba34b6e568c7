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

#include "cfstripe/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support.hpp"

using namespace cfstripe;
using cfstripe::testing::random_instance;

namespace {

double sinr_reference(const CVector& v, int k, const cfstripe::testing::Instance& in) {
    const auto& est = in.estimate;
    const auto m = est.h_hat.rows();
    CMatrix disturbance = in.noise() * CMatrix::Identity(m, m);
    for (int i = 0; i < est.users; ++i) {
        disturbance += in.powers[i] * est.stacked_error(i);
        if (i == k) continue;
        const CVector h = est.h_hat.col(i);
        disturbance += in.powers[i] * h * h.adjoint();
    }
    const double signal = in.powers[k] * std::norm(v.dot(est.h_hat.col(k)));
    return signal / (v.adjoint() * disturbance * v)(0, 0).real();
}

}  // namespace

TEST(Sinr, MatchesDenseAssembly) {
    for (int t = 0; t < 30; ++t) {
        const auto in = random_instance(3000 + t);
        const auto& est = in.estimate;
        const CMatrix v = CMatrix::Random(est.h_hat.rows(), est.users);
        CombinerSet set{Scheme::mr, v, full_mask(est.aps, est.users)};
        const RVector all = sinr_all(set, est, in.powers, in.noise());
        for (int k = 0; k < est.users; ++k) {
            const double ref = sinr_reference(v.col(k), k, in);
            EXPECT_NEAR(sinr(v.col(k), k, est, in.powers, in.noise()), ref, 1e-10 * ref);
            EXPECT_NEAR(all(k), ref, 1e-10 * ref);
        }
    }
}

TEST(Sinr, PerfectCsiSingleUserIsMatchedFilterSnr) {
    ChannelEstimate est;
    est.aps = 2;
    est.antennas = 2;
    est.users = 1;
    est.h_hat = CMatrix::Random(4, 1);
    est.gamma.assign(2, CMatrix::Identity(2, 2));
    est.error_cov.assign(2, CMatrix::Zero(2, 2));
    const std::vector<double> p{0.3};
    const double noise = 0.01;
    const CVector v = est.h_hat.col(0);
    EXPECT_NEAR(sinr(v, 0, est, p, noise), 0.3 * v.squaredNorm() / noise, 1e-12 * v.squaredNorm() / noise);
}

TEST(Sinr, InvariantToCombinerScaling) {
    const auto in = random_instance(3050);
    const CVector v = CMatrix::Random(in.estimate.h_hat.rows(), 1);
    const double base = sinr(v, 0, in.estimate, in.powers, in.noise());
    const CVector scaled = Complex(-3.0, 1e3) * v;
    EXPECT_NEAR(sinr(scaled, 0, in.estimate, in.powers, in.noise()), base, 1e-9 * base);
}

TEST(Sinr, ZeroCombinerAndBadInput) {
    const auto in = random_instance(3100, 3, 2, 2);
    const CVector zero = CVector::Zero(in.estimate.h_hat.rows());
    EXPECT_EQ(sinr(zero, 0, in.estimate, in.powers, in.noise()), 0.0);
    EXPECT_THROW(sinr(CVector::Zero(1), 0, in.estimate, in.powers, in.noise()), Error);
    const std::vector<double> short_powers(1, 0.1);
    if (in.drop.users > 1) EXPECT_THROW(sinr(zero, 0, in.estimate, short_powers, in.noise()), Error);
}

TEST(Sinr, DisturbanceMatchesMonteCarlo) {
    // Fix the estimates, draw the error, symbols and noise, and measure the
    // interference-plus-noise power at the combiner output.
    const auto in = random_instance(3200, 3, 2, 3);
    const auto& est = in.estimate;
    if (est.users < 2) GTEST_SKIP();
    const int k = 0;
    const CVector v = combine_mr(est).v.col(k);
    std::vector<CMatrix> factors;
    for (int i = 0; i < est.users; ++i) factors.push_back(psd_sqrt(est.stacked_error(i)));
    auto rng = Rng::for_stream(1, 2, 3);
    const int trials = 100000;
    const auto m = est.h_hat.rows();
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
        CVector r = CVector::Zero(m);
        for (int i = 0; i < est.users; ++i) {
            CVector g(m);
            for (Eigen::Index j = 0; j < m; ++j) g(j) = rng.complex_normal();
            const CVector error = factors[i] * g;
            // The own user contributes only its estimation error.
            const CVector h = i == k ? error : CVector(est.h_hat.col(i) + error);
            r += std::sqrt(in.powers[i]) * h * rng.complex_normal();
        }
        for (Eigen::Index j = 0; j < m; ++j) r(j) += rng.complex_normal(in.noise());
        acc += std::norm(v.dot(r));
    }
    const double measured = acc / trials;
    const double predicted = in.powers[k] * std::norm(v.dot(est.h_hat.col(k))) / sinr(v, k, est, in.powers, in.noise());
    EXPECT_NEAR(measured, predicted, 0.03 * predicted);
}

TEST(SpectralEfficiency, PrelogAndLog) {
    EXPECT_DOUBLE_EQ(prelog(200, 20), 0.9);
    EXPECT_DOUBLE_EQ(prelog(200, 40), 0.8);
    EXPECT_DOUBLE_EQ(se(1.0, 200, 20), 0.9);
    EXPECT_DOUBLE_EQ(se(0.0, 200, 20), 0.0);
    EXPECT_NEAR(se(1023.0, 200, 20), 9.0, 1e-12);
    EXPECT_THROW(se(-1e-3, 200, 20), Error);
}

TEST(Percentile, LinearBetweenOrderStatistics) {
    const std::vector<double> s{1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(percentile(s, 0.5), 3.0);
    EXPECT_DOUBLE_EQ(percentile(s, 0.05), 1.2);
    EXPECT_DOUBLE_EQ(percentile(s, 0.95), 4.8);
    EXPECT_DOUBLE_EQ(percentile(s, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(percentile(s, 1.0), 5.0);
    const std::vector<double> two{1, 3};
    EXPECT_DOUBLE_EQ(percentile(two, 0.5), 2.0);
    const std::vector<double> one{7.5};
    EXPECT_DOUBLE_EQ(percentile(one, 0.05), 7.5);
    EXPECT_THROW(percentile(std::vector<double>{}, 0.5), Error);
}

TEST(Aggregate, SortedCdfAndMoments) {
    const std::vector<double> x{3, 1, 2, 4};
    const auto c = aggregate(x);
    EXPECT_EQ(c.sorted, (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(c.cdf, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
    EXPECT_DOUBLE_EQ(c.mean, 2.5);
    EXPECT_DOUBLE_EQ(c.p50, 2.5);
    EXPECT_THROW(aggregate(std::vector<double>{}), Error);

    std::vector<MetricsRecord> records(3);
    records[0].se = 1.0;
    records[1].se = 2.0;
    records[2].se = 6.0;
    EXPECT_DOUBLE_EQ(aggregate(records).mean, 3.0);
}
