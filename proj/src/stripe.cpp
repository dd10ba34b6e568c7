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

#include "cfstripe/stripe.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

namespace cfstripe {

namespace {

CMatrix gram_of(const CMatrix& h) {
    const auto k = h.cols();
    CMatrix lower = CMatrix::Zero(k, k);
    lower.selfadjointView<Eigen::Lower>().rankUpdate(h.adjoint());
    CMatrix full = lower.selfadjointView<Eigen::Lower>();
    for (Eigen::Index i = 0; i < k; ++i) full(i, i) = full(i, i).real();
    return full;
}

Eigen::LLT<CMatrix> factor_regularized(const CMatrix& gram, double regularizer) {
    CMatrix a = gram;
    a.diagonal().array() += regularizer;
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) fail(ErrorCode::numeric, "regularized Gram matrix is not positive definite");
    return llt;
}

}  // namespace

StripeMessage StripeMessage::empty(int users, bool with_gram) {
    StripeMessage m;
    m.mrc_partial = CVector::Zero(users);
    if (with_gram) m.gram_partial = CMatrix::Zero(users, users);
    return m;
}

RMatrix stripe_weights(Scheme scheme, const RMatrix& beta, std::span<const double> powers,
                       double noise_power) {
    const auto aps = beta.rows();
    const auto users = beta.cols();
    if (static_cast<Eigen::Index>(powers.size()) != users)
        fail(ErrorCode::invalid_argument, "one transmit power per user required");
    switch (scheme) {
        case Scheme::mr: return RMatrix::Ones(aps, users);
        case Scheme::imr: return prior_interference(beta, noise_power).cwiseInverse();
        case Scheme::drzf: {
            RMatrix w(aps, users);
            for (Eigen::Index k = 0; k < users; ++k)
                w.col(k).setConstant(std::sqrt(powers[static_cast<std::size_t>(k)]));
            return w;
        }
        case Scheme::lmmse: break;
    }
    fail(ErrorCode::invalid_argument, "LMMSE is centralized and has no stripe pipeline");
}

LocalContribution ap_local(const ChannelEstimate& est, int ap, const CVector& y_l,
                           const RMatrix& weights, const ActivationMask& omega, bool with_gram) {
    if (ap < 0 || ap >= est.aps) fail(ErrorCode::invalid_argument, "AP index out of range");
    if (y_l.size() != est.antennas) fail(ErrorCode::invalid_argument, "y_l must have N entries");
    if (weights.rows() != est.aps || weights.cols() != est.users || omega.rows() != est.aps ||
        omega.cols() != est.users)
        fail(ErrorCode::invalid_argument, "weights and mask must be L x K");

    CMatrix h = est.h_hat.middleRows(ap * est.antennas, est.antennas);
    for (int k = 0; k < est.users; ++k) {
        if (omega(ap, k))
            h.col(k) *= weights(ap, k);
        else
            h.col(k).setZero();
    }
    LocalContribution out;
    out.mrc = h.adjoint() * y_l;
    if (with_gram) out.gram = gram_of(h);
    return out;
}

StripeMessage accumulate(const StripeMessage& message, const LocalContribution& contribution) {
    if (message.mrc_partial.size() != contribution.mrc.size())
        fail(ErrorCode::invalid_argument, "MRC dimension mismatch on the stripe");
    if (message.has_gram() != (contribution.gram.size() != 0) ||
        (message.has_gram() && message.gram_partial.rows() != contribution.gram.rows()))
        fail(ErrorCode::invalid_argument, "Gram dimension mismatch on the stripe");

    StripeMessage next = message;
    next.mrc_partial += contribution.mrc;
    if (next.has_gram()) next.gram_partial += contribution.gram;
    ++next.hops;
    return next;
}

StripeMessage run_stripe(const ChannelEstimate& est, const DataObservation& data,
                         const RMatrix& weights, const ActivationMask& omega, bool with_gram,
                         int workers) {
    if (static_cast<int>(data.y.size()) != est.aps)
        fail(ErrorCode::invalid_argument, "data observation has the wrong AP count");

    std::vector<LocalContribution> local(static_cast<std::size_t>(est.aps));
    auto work = [&](int first, int stride) {
        for (int l = first; l < est.aps; l += stride)
            local[static_cast<std::size_t>(l)] =
                ap_local(est, l, data.y[static_cast<std::size_t>(l)], weights, omega, with_gram);
    };
    workers = std::clamp(workers, 1, std::max(est.aps, 1));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(w, workers);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    StripeMessage message = StripeMessage::empty(est.users, with_gram);
    for (const auto& c : local) message = accumulate(message, c);
    return message;
}

CVector cpu_solve_drzf(const StripeMessage& message, double regularizer) {
    if (!message.has_gram()) fail(ErrorCode::invalid_argument, "D-RZF needs the accumulated Gram matrix");
    return factor_regularized(message.gram_partial, regularizer).solve(message.mrc_partial);
}

CVector cpu_solve_drzf(const StripeMessage& message, const DrzfRegularizer& reg,
                       RegularizerSum sum) {
    if (sum == RegularizerSum::all_users) return cpu_solve_drzf(message, reg.shared());
    if (!message.has_gram()) fail(ErrorCode::invalid_argument, "D-RZF needs the accumulated Gram matrix");
    const auto users = message.mrc_partial.size();
    CVector out(users);
    for (Eigen::Index k = 0; k < users; ++k) {
        const auto llt = factor_regularized(message.gram_partial, reg.for_user(static_cast<int>(k), sum));
        out(k) = llt.solve(message.mrc_partial)(k);
    }
    return out;
}

CVector cpu_finalize_linear(const StripeMessage& message) { return message.mrc_partial; }

std::string_view to_string(LoadingScheme s) {
    switch (s) {
        case LoadingScheme::mr: return "mr";
        case LoadingScheme::imr: return "imr";
        case LoadingScheme::drzf: return "drzf";
        case LoadingScheme::lmmse: return "lmmse";
        case LoadingScheme::nlmmse: return "nlmmse";
    }
    return "?";
}

FronthaulLoad count_fronthaul(LoadingScheme scheme, int users, int total_antennas,
                              int coherence_block, int pilot_length) {
    if (users < 1 || total_antennas < 1 || pilot_length < 0 || coherence_block <= pilot_length)
        fail(ErrorCode::invalid_argument, "front-haul count needs K, M >= 1 and tau_c > tau_p");
    const double k = users;
    const double m = total_antennas;
    const double data = coherence_block - pilot_length;
    double raw = 0.0;
    switch (scheme) {
        case LoadingScheme::mr:
        case LoadingScheme::imr: raw = k * data; break;
        case LoadingScheme::drzf: raw = k * data + k * k; break;
        case LoadingScheme::lmmse: raw = m * data + m * k; break;
        case LoadingScheme::nlmmse: raw = k * data + 2.0 * k * k; break;
    }
    return {raw, raw / (k * data)};
}

double PipelineTrace::mean_per_ap() const {
    if (parallel_mults.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t l = 0; l < parallel_mults.size(); ++l) sum += parallel_mults[l] + serial_mults[l];
    return sum / static_cast<double>(parallel_mults.size());
}

double PipelineTrace::c_serial() const {
    return serial_mults.empty() ? 0.0 : *std::max_element(serial_mults.begin(), serial_mults.end());
}

double PipelineTrace::c_parallel() const {
    return parallel_mults.empty() ? 0.0
                                  : *std::max_element(parallel_mults.begin(), parallel_mults.end());
}

double PipelineTrace::c_total() const {
    return static_cast<double>(parallel_mults.size()) * c_serial() + c_parallel();
}

PipelineTrace count_complexity(Scheme scheme, int antennas, int users, int coherence_block,
                               int pilot_length, const ActivationMask& omega) {
    if (omega.cols() != users) fail(ErrorCode::invalid_argument, "mask must have K columns");
    if (coherence_block <= pilot_length) fail(ErrorCode::invalid_argument, "tau_c must exceed tau_p");
    const auto aps = static_cast<int>(omega.rows());
    const double n = antennas;
    const double k = users;
    const double m = n * aps;
    const double tp = pilot_length;
    const double data = coherence_block - pilot_length;

    PipelineTrace trace;
    trace.serial_mults.assign(static_cast<std::size_t>(aps), 0.0);
    trace.parallel_mults.resize(static_cast<std::size_t>(aps));
    trace.hop_scalars.resize(static_cast<std::size_t>(aps));

    for (int l = 0; l < aps; ++l) {
        const double active = static_cast<double>(omega.row(l).count());
        const double estimation = active * (n * n + n * tp);
        double parallel = 0.0;
        double hop = 0.0;
        switch (scheme) {
            case Scheme::mr:
            case Scheme::imr:
                parallel = estimation + active * n * data;
                hop = k * data;
                break;
            case Scheme::drzf:
                parallel = estimation + active * n * data + n * active * (active + 1.0) / 2.0;
                hop = k * data + k * k;
                break;
            case Scheme::lmmse:
                parallel = active * n * tp;
                hop = (l + 1) * n * (data + k);
                break;
        }
        trace.parallel_mults[static_cast<std::size_t>(l)] = parallel;
        trace.hop_scalars[static_cast<std::size_t>(l)] = hop;
    }

    switch (scheme) {
        case Scheme::mr:
        case Scheme::imr: trace.cpu_mults = 0.0; break;
        case Scheme::drzf: trace.cpu_mults = k * k * k / 3.0 + k * k * data; break;
        case Scheme::lmmse:
            trace.cpu_mults = k * aps * n * n + k * (m * m * m / 3.0 + m * m) + k * m * data;
            break;
    }
    return trace;
}

}  // namespace cfstripe
