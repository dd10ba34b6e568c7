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

// Command-line front end. Talks to the simulator only through the C API.

#include "cfstripe/cfstripe.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace {

struct ApiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(cfs_status status) {
    if (status != CFS_OK) {
        throw ApiError(std::string(cfs_status_string(status)) + ": " + cfs_last_error());
    }
}

struct ConfigDeleter {
    void operator()(cfs_config* c) const { cfs_config_destroy(c); }
};
struct CampaignDeleter {
    void operator()(cfs_campaign* c) const { cfs_campaign_destroy(c); }
};
struct ResultDeleter {
    void operator()(cfs_result* r) const { cfs_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<cfs_config, ConfigDeleter>;
using CampaignPtr = std::unique_ptr<cfs_campaign, CampaignDeleter>;
using ResultPtr = std::unique_ptr<cfs_result, ResultDeleter>;

std::string take(char* s) {
    std::string out(s ? s : "");
    cfs_string_free(s);
    return out;
}

ConfigPtr open_config(const std::string& path) {
    cfs_config* raw = nullptr;
    if (path.empty()) {
        check(cfs_config_create(&raw));
    } else {
        check(cfs_config_load(path.c_str(), &raw));
    }
    return ConfigPtr(raw);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ApiError("cannot open '" + path + "' for writing");
    out << text;
}

void print_warnings(const cfs_config* config) {
    char* text = nullptr;
    check(cfs_config_warnings(config, &text));
    const std::string w = take(text);
    if (!w.empty()) std::cerr << "warning: " << w;
}

struct RunOptions {
    std::string config;
    std::optional<int> drops;
    std::optional<int> realizations;
    std::optional<std::uint64_t> seed;
    std::string schemes;
    std::string ucs;
    std::string cells;
    std::string correlation;
    std::string users;
    std::string out;
    int workers = 1;
};

int do_run(const RunOptions& o) {
    ConfigPtr config = open_config(o.config);
    if (o.drops) check(cfs_config_set(config.get(), "drops", std::to_string(*o.drops).c_str()));
    if (o.realizations) {
        check(cfs_config_set(config.get(), "realizations_per_drop", std::to_string(*o.realizations).c_str()));
    }
    if (o.seed) check(cfs_config_set(config.get(), "rng_seed", std::to_string(*o.seed).c_str()));
    check(cfs_config_validate(config.get()));
    print_warnings(config.get());

    cfs_campaign* raw = nullptr;
    check(cfs_campaign_create(config.get(), &raw));
    CampaignPtr campaign(raw);
    if (!o.cells.empty()) {
        check(cfs_campaign_set_cells(campaign.get(), o.cells.c_str()));
    } else {
        if (!o.schemes.empty()) check(cfs_campaign_set_schemes(campaign.get(), o.schemes.c_str()));
        if (!o.ucs.empty()) check(cfs_campaign_set_ucs(campaign.get(), o.ucs.c_str()));
    }
    if (!o.correlation.empty()) check(cfs_campaign_set_correlations(campaign.get(), o.correlation.c_str()));
    if (!o.users.empty()) check(cfs_campaign_set_user_counts(campaign.get(), o.users.c_str()));
    if (!o.out.empty()) check(cfs_campaign_set_output_dir(campaign.get(), o.out.c_str()));
    check(cfs_campaign_set_workers(campaign.get(), o.workers));

    cfs_result* result_raw = nullptr;
    check(cfs_campaign_run(campaign.get(), &result_raw));
    ResultPtr result(result_raw);

    std::printf("%-6s %-5s %-13s %4s %9s %9s %9s %9s\n", "scheme", "uc", "correlation", "K", "mean_se",
                "p05", "p50", "p95");
    const size_t rows = cfs_result_summary_count(result.get());
    for (size_t i = 0; i < rows; ++i) {
        cfs_summary_row r{};
        check(cfs_result_summary_row(result.get(), i, &r));
        std::printf("%-6s %-5s %-13s %4d %9.4f %9.4f %9.4f %9.4f\n", r.scheme, r.uc, r.correlation, r.users,
                    r.mean_se, r.p05, r.p50, r.p95);
    }
    if (!o.out.empty()) std::printf("wrote records.csv, summary.csv, metadata.json to %s\n", o.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cell-free radio-stripe uplink simulator"};
    app.set_version_flag("--version", std::string(cfs_version()));
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Monte-Carlo spectral-efficiency campaign");
    run_cmd->add_option("--config", run.config, "JSON scenario file (defaults when omitted)")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--drops", run.drops, "Number of user placements");
    run_cmd->add_option("--realizations", run.realizations, "Coherence blocks per placement");
    run_cmd->add_option("--seed", run.seed, "Overrides rng_seed from the config");
    run_cmd->add_option("--schemes", run.schemes, "Comma list of mr,imr,lmmse,drzf");
    run_cmd->add_option("--uc", run.ucs, "Comma list of none,beta,sinr");
    run_cmd->add_option("--cells", run.cells, "Explicit scheme:uc list, e.g. mr:none,imr:sinr");
    run_cmd->add_option("--correlation", run.correlation, "Comma list of uncorrelated,scattering");
    run_cmd->add_option("--k", run.users, "Comma list of user counts, e.g. 20,40");
    run_cmd->add_option("--out", run.out, "Output directory for CSVs and metadata");
    run_cmd->add_option("--workers", run.workers, "Worker threads over drops")->check(CLI::PositiveNumber);
    run_cmd->get_option("--cells")->excludes("--schemes")->excludes("--uc");

    int fh_users = 20, fh_antennas = 96, tc_min = 50, tc_max = 400, tc_step = 50;
    std::optional<int> fh_pilot;
    std::string fh_out;
    auto* fh_cmd = app.add_subcommand("fronthaul", "Front-haul loading table (CSV)");
    fh_cmd->add_option("--k", fh_users, "Users")->capture_default_str();
    fh_cmd->add_option("--m", fh_antennas, "Total antennas")->capture_default_str();
    fh_cmd->add_option("--tc-min", tc_min, "Smallest coherence block")->capture_default_str();
    fh_cmd->add_option("--tc-max", tc_max, "Largest coherence block")->capture_default_str();
    fh_cmd->add_option("--tc-step", tc_step, "Coherence block step")->capture_default_str();
    fh_cmd->add_option("--tp", fh_pilot, "Pilot length (default: K)");
    fh_cmd->add_option("--out", fh_out, "Output file (default: stdout)");

    std::string cx_config, cx_out;
    auto* cx_cmd = app.add_subcommand("complexity", "Multiplication-count table (CSV)");
    cx_cmd->add_option("--config", cx_config, "JSON scenario file (defaults when omitted)")
        ->check(CLI::ExistingFile);
    cx_cmd->add_option("--out", cx_out, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return do_run(run);
        if (*fh_cmd) {
            char* csv = nullptr;
            check(cfs_fronthaul_csv(fh_users, fh_antennas, tc_min, tc_max, tc_step, fh_pilot.value_or(fh_users),
                                    &csv));
            emit(take(csv), fh_out);
            return 0;
        }
        if (*cx_cmd) {
            ConfigPtr config = open_config(cx_config);
            check(cfs_config_validate(config.get()));
            char* csv = nullptr;
            check(cfs_complexity_csv(config.get(), &csv));
            emit(take(csv), cx_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
