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

#include "cfstripe/combining.hpp"
#include "cfstripe/estimation.hpp"
#include "cfstripe/types.hpp"

#include <span>
#include <vector>

namespace cfstripe {

struct MetricsRecord {
    Scheme scheme = Scheme::mr;
    UcStrategy uc = UcStrategy::none;
    CorrelationModel correlation = CorrelationModel::uncorrelated;
    int users = 0;
    int drop = 0;
    int user = 0;
    double sinr = 0.0;  // linear; 2^(mean log2(1+SINR)) - 1 over the drop's realizations
    double se = 0.0;    // bits/s/Hz
};

struct CdfSummary {
    std::vector<double> sorted;
    std::vector<double> cdf;  // cdf[i] = (i + 1) / n
    double mean = 0.0;
    double p05 = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
};

/// SINR of user k conditioned on the estimates:
///
///   p_k |v^H h_k|^2 / (sum_{i != k} p_i |v^H h_i|^2 + v^H (sum_i p_i C_i + sigma^2 I) v)
///
/// with C_i the block-diagonal estimation error covariance. The error sum runs
/// over every user, the own one included. A zero combiner gives 0.
double sinr(const CVector& v, int user, const ChannelEstimate& est,
            std::span<const double> powers, double noise_power);

/// SINR of every user for one combiner set.
RVector sinr_all(const CombinerSet& combiner, const ChannelEstimate& est,
                 std::span<const double> powers, double noise_power);

double prelog(int coherence_block, int pilot_length);

/// prelog * log2(1 + sinr).
double se(double sinr, int coherence_block, int pilot_length);

/// Linear interpolation between order statistics at position q (n - 1).
double percentile(std::span<const double> sorted, double q);

CdfSummary aggregate(std::span<const double> samples);
/// Pools the SE of every record.
CdfSummary aggregate(const std::vector<MetricsRecord>& records);

}  // namespace cfstripe
