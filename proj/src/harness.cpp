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

#include "cfstripe/harness.hpp"

#include "cfstripe/channel.hpp"
#include "cfstripe/combining.hpp"
#include "cfstripe/config_io.hpp"
#include "cfstripe/estimation.hpp"
#include "cfstripe/rng.hpp"
#include "cfstripe/version.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace cfstripe {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool is_stripe_scheme(Scheme s) { return s != Scheme::lmmse; }

struct DropContext {
    const ScenarioConfig& config;
    int pilot_length;
    std::vector<double> powers;
    Drop drop;
    ChannelSampler sampler;
    MmseEstimator estimator;
    DrzfRegularizer regularizer;
    ActivationMask masks[3];
    RMatrix weights[4];  // indexed by Scheme; LMMSE unused

    static Drop place(const ScenarioConfig& config, int drop_index) {
        Rng geometry = Rng::for_stream(config.rng_seed, static_cast<std::uint64_t>(drop_index), kGeometryStream);
        return make_drop(config, geometry);
    }

    DropContext(const ScenarioConfig& c, int drop_index)
        : config(c),
          pilot_length(c.effective_pilot_length()),
          powers(static_cast<std::size_t>(c.user_count), c.tx_power_w),
          drop(place(c, drop_index)),
          sampler(drop),
          estimator(drop, powers, c.noise_power_w, make_pilots(pilot_length)),
          regularizer(drzf_regularizer(drop.beta, powers, c.noise_power_w, pilot_length, c.drzf_regularizer)) {
        for (auto uc : {UcStrategy::none, UcStrategy::beta, UcStrategy::sinr})
            masks[static_cast<int>(uc)] = uc_select(uc, drop.beta, c.activation_ratio, c.noise_power_w);
        for (auto s : {Scheme::mr, Scheme::imr, Scheme::drzf})
            weights[static_cast<int>(s)] = stripe_weights(s, drop.beta, powers, c.noise_power_w);
    }

    CombinerSet combiner(Cell cell, const ChannelEstimate& est) const {
        const ActivationMask& mask = masks[static_cast<int>(cell.uc)];
        const bool masked = cell.uc != UcStrategy::none;
        switch (cell.scheme) {
            case Scheme::mr: {
                auto v = combine_mr(est);
                return masked ? apply_mask(std::move(v), mask, est.antennas) : v;
            }
            case Scheme::imr: {
                auto v = combine_imr(est, drop.beta, config.noise_power_w);
                return masked ? apply_mask(std::move(v), mask, est.antennas) : v;
            }
            case Scheme::lmmse: {
                auto v = combine_lmmse(est, powers, config.noise_power_w);
                return masked ? apply_mask(std::move(v), mask, est.antennas) : v;
            }
            case Scheme::drzf:
                return combine_drzf(est, regularizer, powers, config.drzf_sum, masked ? &mask : nullptr);
        }
        fail(ErrorCode::invalid_argument, "unknown scheme");
    }

    // Relative gap between the stripe output and V^H y.
    double pipeline_gap(Cell cell, const ChannelEstimate& est, const CombinerSet& v,
                        const DataObservation& data) const {
        const ActivationMask& mask = masks[static_cast<int>(cell.uc)];
        const bool gram = cell.scheme == Scheme::drzf;
        const auto message = run_stripe(est, data, weights[static_cast<int>(cell.scheme)], mask, gram);
        const CVector piped = gram ? cpu_solve_drzf(message, regularizer, config.drzf_sum)
                                   : cpu_finalize_linear(message);
        const CVector direct = v.v.adjoint() * data.stacked();
        const double scale = direct.norm();
        return scale > 0 ? (piped - direct).norm() / scale : piped.norm();
    }
};

}  // namespace

std::vector<Cell> default_cells() {
    return {{Scheme::mr, UcStrategy::none},   {Scheme::mr, UcStrategy::beta},
            {Scheme::imr, UcStrategy::sinr},  {Scheme::lmmse, UcStrategy::none},
            {Scheme::drzf, UcStrategy::none}, {Scheme::drzf, UcStrategy::beta}};
}

std::vector<Cell> grid_cells(std::span<const Scheme> schemes, std::span<const UcStrategy> ucs) {
    std::vector<Cell> cells;
    for (auto s : schemes)
        for (auto u : ucs) cells.push_back({s, u});
    return cells;
}

void CampaignSpec::validate() const {
    if (cells.empty()) fail(ErrorCode::invalid_argument, "campaign needs at least one scheme cell");
    if (correlations.empty()) fail(ErrorCode::invalid_argument, "campaign needs at least one correlation model");
    if (user_counts.empty()) fail(ErrorCode::invalid_argument, "campaign needs at least one user count");
    if (workers < 1) fail(ErrorCode::invalid_argument, "workers must be >= 1");
    for (int k : user_counts) {
        ScenarioConfig c = base;
        c.user_count = k;
        c.validate();
    }
}

DropResult run_drop(const ScenarioConfig& config, std::span<const Cell> cells, int drop_index) {
    config.validate();
    const DropContext ctx(config, drop_index);
    const int users = config.user_count;
    const int reals = config.realizations_per_drop;
    const int tp = ctx.pilot_length;
    const CMatrix pilots = make_pilots(tp);

    DropResult result;
    result.sinr.assign(cells.size(), RMatrix::Zero(users, reals));

    for (int r = 0; r < reals; ++r) {
        Rng rng = Rng::for_stream(config.rng_seed, static_cast<std::uint64_t>(drop_index),
                                  static_cast<std::uint64_t>(r));
        const auto channel = ctx.sampler.draw(rng);
        const auto pilot_obs = observe_pilot(channel, ctx.powers, config.noise_power_w, pilots, rng);
        const auto est = ctx.estimator.estimate(pilot_obs);
        const CVector symbols = draw_symbols(users, config.symbols, rng);
        const auto data = observe_data(channel, ctx.powers, config.noise_power_w, symbols, rng);

        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                const auto v = ctx.combiner(cells[c], est);
                result.sinr[c].col(r) = sinr_all(v, est, ctx.powers, config.noise_power_w);
                if (is_stripe_scheme(cells[c].scheme))
                    result.pipeline_deviation =
                        std::max(result.pipeline_deviation, ctx.pipeline_gap(cells[c], est, v, data));
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << e.what() << " (drop " << drop_index << ", realization " << r << ", "
                    << to_string(cells[c].scheme) << "+" << to_string(cells[c].uc) << ")";
                throw Error(e.code(), msg.str());
            }
        }
    }

    const double pre = prelog(config.coherence_block, tp);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int k = 0; k < users; ++k) {
            double mean_rate = 0.0;
            for (int r = 0; r < reals; ++r) mean_rate += std::log2(1.0 + result.sinr[c](k, r));
            mean_rate /= reals;
            MetricsRecord rec;
            rec.scheme = cells[c].scheme;
            rec.uc = cells[c].uc;
            rec.correlation = config.correlation_model;
            rec.users = users;
            rec.drop = drop_index;
            rec.user = k;
            rec.sinr = std::exp2(mean_rate) - 1.0;
            rec.se = pre * mean_rate;
            result.records.push_back(rec);
        }
    }
    return result;
}

namespace {

std::vector<DropResult> run_drops(const ScenarioConfig& config, std::span<const Cell> cells, int workers) {
    std::vector<DropResult> results(static_cast<std::size_t>(config.drops));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (int d = next++; d < config.drops; d = next++) {
            try {
                results[static_cast<std::size_t>(d)] = run_drop(config, cells, d);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    workers = std::max(1, std::min(workers, config.drops));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

void write_metadata(const std::filesystem::path& path, const CampaignSpec& plan,
                    const CampaignResult& result) {
    nlohmann::json meta;
    meta["tool"] = "cfstripe";
    meta["version"] = kVersion;
    meta["generator"] = kGeneratorName;
    meta["config"] = nlohmann::json::parse(config_to_json(plan.base));
    std::vector<std::string> cells;
    for (const auto& c : plan.cells)
        cells.push_back(std::string(to_string(c.scheme)) + ":" + std::string(to_string(c.uc)));
    meta["cells"] = cells;
    std::vector<std::string> corr;
    for (auto c : plan.correlations) corr.emplace_back(csv_label(c));
    meta["correlations"] = corr;
    meta["user_counts"] = plan.user_counts;
    meta["max_pipeline_deviation"] = result.pipeline_deviation;
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, "cannot write '" + path.string() + "'");
    out << meta.dump(2) << "\n";
}

}  // namespace

CampaignResult run_campaign(const CampaignSpec& plan) {
    plan.validate();
    CampaignResult result;

    for (auto correlation : plan.correlations) {
        for (int users : plan.user_counts) {
            ScenarioConfig config = plan.base;
            config.correlation_model = correlation;
            config.user_count = users;
            config.validate();

            const auto drops = run_drops(config, plan.cells, plan.workers);
            for (const auto& d : drops) result.pipeline_deviation = std::max(result.pipeline_deviation, d.pipeline_deviation);

            for (std::size_t c = 0; c < plan.cells.size(); ++c) {
                std::vector<MetricsRecord> cell_records;
                for (const auto& d : drops) {
                    const auto begin = d.records.begin() + static_cast<std::ptrdiff_t>(c * static_cast<std::size_t>(users));
                    cell_records.insert(cell_records.end(), begin, begin + users);
                }
                const auto cdf = aggregate(cell_records);
                result.summary.push_back({plan.cells[c].scheme, plan.cells[c].uc, correlation, users,
                                          cdf.mean, cdf.p05, cdf.p50, cdf.p95});
                result.records.insert(result.records.end(), cell_records.begin(), cell_records.end());
            }
        }
    }

    if (!plan.output_dir.empty()) {
        const std::filesystem::path dir(plan.output_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) fail(ErrorCode::io, "cannot create output directory '" + plan.output_dir + "'");
        std::ofstream records(dir / "records.csv");
        std::ofstream summary(dir / "summary.csv");
        if (!records || !summary) fail(ErrorCode::io, "cannot write into '" + plan.output_dir + "'");
        write_records_csv(records, result.records);
        write_summary_csv(summary, result.summary);
        write_metadata(dir / "metadata.json", plan, result);
    }
    return result;
}

const SummaryRow* find_summary(const CampaignResult& result, Cell cell, CorrelationModel correlation,
                               int users) {
    for (const auto& row : result.summary)
        if (row.scheme == cell.scheme && row.uc == cell.uc && row.correlation == correlation && row.users == users)
            return &row;
    return nullptr;
}

std::string_view csv_label(CorrelationModel model) {
    return model == CorrelationModel::uncorrelated ? "uncorrelated" : "scattering";
}

void write_records_csv(std::ostream& out, const std::vector<MetricsRecord>& records) {
    out << "scheme,uc,correlation,K,drop,user,sinr_linear,se_bits\n";
    for (const auto& r : records) {
        out << to_string(r.scheme) << ',' << to_string(r.uc) << ',' << csv_label(r.correlation) << ','
            << r.users << ',' << r.drop << ',' << r.user << ',' << num(r.sinr) << ',' << num(r.se) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "scheme,uc,correlation,K,mean_se,p05,p50,p95\n";
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << to_string(r.uc) << ',' << csv_label(r.correlation) << ','
            << r.users << ',' << num(r.mean_se) << ',' << num(r.p05) << ',' << num(r.p50) << ','
            << num(r.p95) << '\n';
    }
}

std::vector<FronthaulRow> fronthaul_table(int users, int total_antennas, int tc_min, int tc_max,
                                          int tc_step, int pilot_length) {
    if (tc_step < 1) fail(ErrorCode::invalid_argument, "tau_c step must be >= 1");
    if (tc_min > tc_max) fail(ErrorCode::invalid_argument, "tc-min must not exceed tc-max");
    if (tc_min <= pilot_length) fail(ErrorCode::invalid_argument, "tc-min must exceed the pilot length");
    std::vector<FronthaulRow> rows;
    for (int tc = tc_min; tc <= tc_max; tc += tc_step) {
        for (auto s : {LoadingScheme::mr, LoadingScheme::imr, LoadingScheme::nlmmse, LoadingScheme::drzf,
                       LoadingScheme::lmmse}) {
            rows.push_back({s, users, total_antennas, tc, count_fronthaul(s, users, total_antennas, tc, pilot_length)});
        }
    }
    return rows;
}

void write_fronthaul_csv(std::ostream& out, const std::vector<FronthaulRow>& rows) {
    out << "scheme,K,M,tau_c,raw_scalars,normalized\n";
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << r.users << ',' << r.total_antennas << ',' << r.coherence_block
            << ',' << num(r.load.raw_scalars) << ',' << num(r.load.normalized) << '\n';
    }
}

std::vector<ComplexityRow> complexity_table(const ScenarioConfig& config) {
    config.validate();
    const int tp = config.effective_pilot_length();
    std::vector<RMatrix> betas;
    for (int d = 0; d < config.drops; ++d) {
        Rng geometry = Rng::for_stream(config.rng_seed, static_cast<std::uint64_t>(d), kGeometryStream);
        ScenarioConfig flat = config;
        flat.correlation_model = CorrelationModel::uncorrelated;  // only beta is needed
        betas.push_back(make_drop(flat, geometry).beta);
    }

    std::vector<ComplexityRow> rows;
    for (auto scheme : {Scheme::mr, Scheme::imr, Scheme::drzf, Scheme::lmmse}) {
        for (auto uc : {UcStrategy::none, UcStrategy::beta, UcStrategy::sinr}) {
            ComplexityRow row{scheme, uc};
            for (const auto& beta : betas) {
                const auto mask = uc_select(uc, beta, config.activation_ratio, config.noise_power_w);
                const auto trace = count_complexity(scheme, config.antennas_per_ap, config.user_count,
                                                    config.coherence_block, tp, mask);
                row.per_ap_mults += trace.mean_per_ap();
                row.c_serial += trace.c_serial();
                row.c_parallel += trace.c_parallel();
                row.c_total += trace.c_total();
                row.cpu_mults += trace.cpu_mults;
            }
            const double n = static_cast<double>(betas.size());
            row.per_ap_mults /= n;
            row.c_serial /= n;
            row.c_parallel /= n;
            row.c_total /= n;
            row.cpu_mults /= n;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows) {
    out << "scheme,uc,per_ap_mults,c_serial,c_parallel,c_total\n";
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << to_string(r.uc) << ',' << num(r.per_ap_mults) << ','
            << num(r.c_serial) << ',' << num(r.c_parallel) << ',' << num(r.c_total) << '\n';
    }
}

}  // namespace cfstripe
