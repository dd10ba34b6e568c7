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

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfstripe {

namespace {

// sum_i p_i C_{i,l} per AP.
std::vector<CMatrix> error_sums(const ChannelEstimate& est, std::span<const double> powers) {
    std::vector<CMatrix> sums;
    sums.reserve(static_cast<std::size_t>(est.aps));
    for (int l = 0; l < est.aps; ++l) {
        CMatrix s = CMatrix::Zero(est.antennas, est.antennas);
        for (int i = 0; i < est.users; ++i) s += powers[static_cast<std::size_t>(i)] * est.error_block(i, l);
        sums.push_back(std::move(s));
    }
    return sums;
}

double ratio(double signal, double disturbance) {
    if (signal <= 0.0) return 0.0;
    return signal / disturbance;
}

double sinr_with(const CVector& v, int user, const CVector& projections, const ChannelEstimate& est,
                 std::span<const double> powers, double noise_power,
                 const std::vector<CMatrix>& sums) {
    if (v.squaredNorm() == 0.0) return 0.0;
    const int n = est.antennas;
    const double p_k = powers[static_cast<std::size_t>(user)];
    const double signal = p_k * std::norm(projections(user));
    double disturbance = noise_power * v.squaredNorm();
    for (int i = 0; i < est.users; ++i)
        if (i != user) disturbance += powers[static_cast<std::size_t>(i)] * std::norm(projections(i));
    for (int l = 0; l < est.aps; ++l) {
        const auto vl = v.segment(l * n, n);
        if (vl.squaredNorm() == 0.0) continue;
        disturbance += (vl.adjoint() * sums[static_cast<std::size_t>(l)] * vl)(0, 0).real();
    }
    return ratio(signal, disturbance);
}

}  // namespace

double sinr(const CVector& v, int user, const ChannelEstimate& est, std::span<const double> powers,
            double noise_power) {
    if (static_cast<int>(powers.size()) != est.users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    if (v.size() != est.h_hat.rows()) fail(ErrorCode::invalid_argument, "combiner must have M entries");
    const CVector projections = est.h_hat.adjoint() * v;  // conj(v^H h_i)
    return sinr_with(v, user, projections, est, powers, noise_power, error_sums(est, powers));
}

RVector sinr_all(const CombinerSet& combiner, const ChannelEstimate& est,
                 std::span<const double> powers, double noise_power) {
    if (static_cast<int>(powers.size()) != est.users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    if (combiner.v.rows() != est.h_hat.rows() || combiner.v.cols() != est.users)
        fail(ErrorCode::invalid_argument, "combiner must be M x K");
    const auto sums = error_sums(est, powers);
    const CMatrix projections = est.h_hat.adjoint() * combiner.v;  // column k: conj(v_k^H h_i)
    RVector out(est.users);
    for (int k = 0; k < est.users; ++k)
        out(k) = sinr_with(combiner.v.col(k), k, projections.col(k), est, powers, noise_power, sums);
    return out;
}

double prelog(int coherence_block, int pilot_length) {
    return static_cast<double>(coherence_block - pilot_length) / coherence_block;
}

double se(double sinr, int coherence_block, int pilot_length) {
    if (sinr < 0) fail(ErrorCode::invalid_argument, "SINR must be non-negative");
    return prelog(coherence_block, pilot_length) * std::log2(1.0 + sinr);
}

double percentile(std::span<const double> sorted, double q) {
    if (sorted.empty()) fail(ErrorCode::invalid_argument, "percentile of an empty sample");
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CdfSummary aggregate(std::span<const double> samples) {
    if (samples.empty()) fail(ErrorCode::invalid_argument, "cannot aggregate an empty sample");
    CdfSummary out;
    out.sorted.assign(samples.begin(), samples.end());
    std::sort(out.sorted.begin(), out.sorted.end());
    const auto n = out.sorted.size();
    out.cdf.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.cdf[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    // Sum in sorted order so the mean does not depend on input order.
    out.mean = std::accumulate(out.sorted.begin(), out.sorted.end(), 0.0) / static_cast<double>(n);
    out.p05 = percentile(out.sorted, 0.05);
    out.p50 = percentile(out.sorted, 0.50);
    out.p95 = percentile(out.sorted, 0.95);
    return out;
}

CdfSummary aggregate(const std::vector<MetricsRecord>& records) {
    std::vector<double> samples;
    samples.reserve(records.size());
    for (const auto& r : records) samples.push_back(r.se);
    return aggregate(samples);
}

}  // namespace cfstripe
