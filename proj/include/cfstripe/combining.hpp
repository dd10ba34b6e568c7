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

#include "cfstripe/estimation.hpp"
#include "cfstripe/types.hpp"

#include <span>

namespace cfstripe {

/// Combining vectors of one scheme. Column k of v is v_k (M entries).
struct CombinerSet {
    Scheme scheme = Scheme::mr;
    CMatrix v;
    ActivationMask omega;
};

/// Average error variance per user for the D-RZF regularizer.
///
/// phi_bar[i] is the mean over APs of beta sigma^2 / (tau_p p beta + sigma^2)
/// (exact mode) or sigma^2 / (tau_p p) (approximate mode). The regularizer
/// seen by user k is sum_i p_i phi_bar[i] + sigma^2, with i optionally != k.
struct DrzfRegularizer {
    RVector phi_bar;
    RVector powers;
    double noise_power = 0.0;

    /// sum_i p_i phi_bar_i + sigma^2 over all users.
    double shared() const;
    double for_user(int user, RegularizerSum sum) const;
};

/// [sqrt(p_1) h_1, ..., sqrt(p_K) h_K] with blocks of inactive (l, k) pairs zeroed.
CMatrix scaled_estimates(const ChannelEstimate& est, std::span<const double> powers,
                         const ActivationMask* mask = nullptr);

ActivationMask full_mask(int aps, int users);

/// Sum over i != k of beta_{i,l}, plus noise. L x K.
RMatrix prior_interference(const RMatrix& beta, double noise_power);

CombinerSet combine_mr(const ChannelEstimate& est);

/// Block l of v_k is h_{k,l} / (sum_{i != k} beta_{i,l} + sigma^2).
CombinerSet combine_imr(const ChannelEstimate& est, const RMatrix& beta, double noise_power);

/// Centralized LMMSE:
/// v_k = (sum_{i != k} p_i (h_i h_i^H + R_i - Gamma_i) + sigma^2 I)^{-1} h_k.
CombinerSet combine_lmmse(const ChannelEstimate& est, std::span<const double> powers,
                          double noise_power);

/// LMMSE specialised to uncorrelated antennas, with each error covariance
/// replaced by its per-AP scalar variance beta sigma^2 / (tau_p p beta + sigma^2).
CMatrix combine_iid_lmmse(const ChannelEstimate& est, const RMatrix& beta,
                          std::span<const double> powers, double noise_power, int pilot_length);

DrzfRegularizer drzf_regularizer(const RMatrix& beta, std::span<const double> powers,
                                 double noise_power, int pilot_length, RegularizerMode mode);

/// RZF with the own user removed from the Gram term:
/// (sum_{i != k} p_i h_i h_i^H + lambda_k I)^{-1} h_k.
CMatrix combine_rzf_interference(const ChannelEstimate& est, const DrzfRegularizer& reg,
                                 std::span<const double> powers, RegularizerSum sum);

/// The same receiver with the own user kept in the Gram term:
/// (sum_i p_i h_i h_i^H + lambda_k I)^{-1} h_k. Collinear with the form above.
CMatrix combine_rzf_full(const ChannelEstimate& est, const DrzfRegularizer& reg,
                         std::span<const double> powers, RegularizerSum sum);

/// D-RZF combiner in K-dimensional form: V = H (H^H H + lambda I_K)^{-1}, with
/// H = scaled_estimates(est, powers, mask). Used for SINR evaluation; symbol
/// detection goes through the stripe pipeline.
CombinerSet combine_drzf(const ChannelEstimate& est, const DrzfRegularizer& reg,
                         std::span<const double> powers, RegularizerSum sum,
                         const ActivationMask* mask = nullptr);

/// Per user, the round(alpha L) APs with the largest beta_{k,l}. Ties go to the lower index.
ActivationMask uc_select_beta(const RMatrix& beta, double activation_ratio);

/// Per user, the round(alpha L) APs with the largest
/// beta_{k,l} / (sum_{i != k} beta_{i,l} + sigma^2). Ties go to the lower index.
ActivationMask uc_select_sinr(const RMatrix& beta, double activation_ratio, double noise_power);

ActivationMask uc_select(UcStrategy strategy, const RMatrix& beta, double activation_ratio,
                         double noise_power);

/// Zero the blocks of inactive (l, k) pairs.
CombinerSet apply_mask(CombinerSet combiner, const ActivationMask& omega, int antennas);

int active_count(double activation_ratio, int aps);

}  // namespace cfstripe
