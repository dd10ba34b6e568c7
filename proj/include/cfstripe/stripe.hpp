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

// Parallel radio-stripe pipeline.
//
// Each AP computes its local contribution independently: the weighted MRC
// outputs H_l^H y_l and, for D-RZF, the Gram term H_l^H H_l. Contributions are
// added to the message travelling towards the CPU in AP order 1 -> L; the only
// serial work on the stripe is that addition. The CPU finishes with either a
// pass-through (MR, I-MR) or a K x K Hermitian solve (D-RZF).

#include "cfstripe/channel.hpp"
#include "cfstripe/combining.hpp"
#include "cfstripe/estimation.hpp"
#include "cfstripe/types.hpp"

#include <span>
#include <vector>

namespace cfstripe {

struct LocalContribution {
    CVector mrc;
    CMatrix gram;  // empty unless the Gram term was requested
};

struct StripeMessage {
    CVector mrc_partial;
    CMatrix gram_partial;  // empty for MR / I-MR
    int hops = 0;

    static StripeMessage empty(int users, bool with_gram);
    bool has_gram() const { return gram_partial.size() != 0; }
};

/// Per-(l, k) column weights applied to the estimates before the local products.
/// MR: 1. I-MR: 1 / (sum_{i != k} beta_{i,l} + sigma^2). D-RZF: sqrt(p_k).
/// Throws for LMMSE, which is not a stripe scheme.
RMatrix stripe_weights(Scheme scheme, const RMatrix& beta, std::span<const double> powers,
                       double noise_power);

/// Local products at AP `ap`. Columns of inactive users are zero.
LocalContribution ap_local(const ChannelEstimate& est, int ap, const CVector& y_l,
                           const RMatrix& weights, const ActivationMask& omega, bool with_gram);

/// Elementwise sum. Dimension mismatch is fatal.
StripeMessage accumulate(const StripeMessage& message, const LocalContribution& contribution);

/// Runs every AP's local step (optionally on `workers` threads) and folds the
/// contributions in canonical order 1 -> L. The result is bit-identical for
/// any worker count.
StripeMessage run_stripe(const ChannelEstimate& est, const DataObservation& data,
                         const RMatrix& weights, const ActivationMask& omega, bool with_gram,
                         int workers = 1);

/// s = (G + lambda I_K)^{-1} s_mrc via Cholesky.
CVector cpu_solve_drzf(const StripeMessage& message, double regularizer);
/// Per-user regularizers: entry k of (G + lambda_k I)^{-1} s_mrc.
CVector cpu_solve_drzf(const StripeMessage& message, const DrzfRegularizer& reg,
                       RegularizerSum sum);

/// MR and I-MR: the accumulated MRC outputs are the symbol estimates.
CVector cpu_finalize_linear(const StripeMessage& message);

// Front-haul accounting.

enum class LoadingScheme { mr, imr, drzf, lmmse, nlmmse };

std::string_view to_string(LoadingScheme s);

struct FronthaulLoad {
    double raw_scalars = 0.0;  // complex scalars per coherence block
    double normalized = 0.0;   // raw / (K (tau_c - tau_p))
};

/// MR, I-MR: K(tc - tp). D-RZF: K(tc - tp) + K^2. LMMSE: M(tc - tp) + MK.
/// N-LMMSE (comparison only): K(tc - tp) + 2K^2.
FronthaulLoad count_fronthaul(LoadingScheme scheme, int users, int total_antennas,
                              int coherence_block, int pilot_length);

// Multiplication accounting, in complex multiplications per coherence block.
//
// Conventions:
//   estimation of one (k, l) pair       N^2 + N tau_p (precomputed filter)
//   MRC of one active user, one symbol  N
//   Gram contribution at AP l           N K_l (K_l + 1) / 2 (Hermitian)
//   K x K Hermitian solve at the CPU    K^3 / 3 factorization + K^2 per symbol
//   additions on the stripe             free
// LMMSE is centralized: each AP only projects its pilots (N tau_p per user),
// the CPU does everything else (one M x M factorization per user).

struct PipelineTrace {
    std::vector<double> serial_mults;    // per AP
    std::vector<double> parallel_mults;  // per AP
    std::vector<double> hop_scalars;     // front-haul scalars leaving AP l
    double cpu_mults = 0.0;

    double mean_per_ap() const;
    double c_serial() const;    // max over APs
    double c_parallel() const;  // max over APs; the most loaded AP sets the latency
    /// L * C_serial + C_parallel.
    double c_total() const;
};

PipelineTrace count_complexity(Scheme scheme, int antennas, int users, int coherence_block,
                               int pilot_length, const ActivationMask& omega);

}  // namespace cfstripe
