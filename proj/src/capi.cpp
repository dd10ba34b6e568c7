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

// extern "C" boundary. Every entry point catches everything, records the
// message in a thread-local slot and returns a status code.

#include "cfstripe/cfstripe.h"

#include "cfstripe/config_io.hpp"
#include "cfstripe/harness.hpp"
#include "cfstripe/version.hpp"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

struct cfs_config {
    cfstripe::ScenarioConfig config;
};

struct cfs_campaign {
    cfstripe::CampaignSpec plan;
    std::vector<cfstripe::Scheme> schemes;
    std::vector<cfstripe::UcStrategy> ucs;
};

struct cfs_result {
    cfstripe::CampaignResult result;
};

namespace {

thread_local std::string last_error;

cfs_status record(cfs_status status, const char* what) {
    last_error = what;
    return status;
}

template <typename F>
cfs_status guarded(F&& body) {
    try {
        body();
        return CFS_OK;
    } catch (const cfstripe::Error& e) {
        switch (e.code()) {
            case cfstripe::ErrorCode::invalid_argument: return record(CFS_ERR_INVALID_ARGUMENT, e.what());
            case cfstripe::ErrorCode::numeric: return record(CFS_ERR_NUMERIC, e.what());
            case cfstripe::ErrorCode::io: return record(CFS_ERR_IO, e.what());
        }
        return record(CFS_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return record(CFS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return record(CFS_ERR_INTERNAL, e.what());
    } catch (...) {
        return record(CFS_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) cfstripe::fail(cfstripe::ErrorCode::invalid_argument, what);
}

char* owned_copy(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> split_csv(const char* csv) {
    require(csv != nullptr, "list must not be null");
    std::vector<std::string> items;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        items.push_back(item.substr(b, e - b + 1));
    }
    require(!items.empty(), "list must not be empty");
    return items;
}

void rebuild_cells(cfs_campaign& c) {
    static const std::vector<cfstripe::Scheme> all_schemes{cfstripe::Scheme::mr, cfstripe::Scheme::imr,
                                                           cfstripe::Scheme::lmmse, cfstripe::Scheme::drzf};
    static const std::vector<cfstripe::UcStrategy> no_uc{cfstripe::UcStrategy::none};
    c.plan.cells = cfstripe::grid_cells(c.schemes.empty() ? all_schemes : c.schemes,
                                        c.ucs.empty() ? no_uc : c.ucs);
}

}  // namespace

extern "C" {

const char* cfs_version(void) { return cfstripe::kVersion; }

const char* cfs_last_error(void) { return last_error.c_str(); }

const char* cfs_status_string(cfs_status status) {
    switch (status) {
        case CFS_OK: return "ok";
        case CFS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CFS_ERR_NUMERIC: return "numeric failure";
        case CFS_ERR_IO: return "i/o failure";
        case CFS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void cfs_string_free(char* str) { std::free(str); }

cfs_status cfs_config_create(cfs_config** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        *out = new cfs_config{};
    });
}

cfs_status cfs_config_load(const char* path, cfs_config** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must not be null");
        auto config = cfstripe::load_config(path);
        *out = new cfs_config{std::move(config)};
    });
}

void cfs_config_destroy(cfs_config* config) { delete config; }

cfs_status cfs_config_set(cfs_config* config, const char* key, const char* value) {
    return guarded([&] {
        require(config && key && value, "config, key and value must not be null");
        cfstripe::set_config_value(config->config, key, value);
    });
}

cfs_status cfs_config_get(const cfs_config* config, const char* key, char** value) {
    return guarded([&] {
        require(config && key && value, "config, key and value must not be null");
        *value = owned_copy(cfstripe::get_config_value(config->config, key));
    });
}

cfs_status cfs_config_validate(const cfs_config* config) {
    return guarded([&] {
        require(config != nullptr, "config must not be null");
        config->config.validate();
    });
}

cfs_status cfs_config_warnings(const cfs_config* config, char** text) {
    return guarded([&] {
        require(config && text, "config and text must not be null");
        std::string joined;
        for (const auto& w : config->config.warnings()) joined += w + "\n";
        *text = owned_copy(joined);
    });
}

cfs_status cfs_config_to_json(const cfs_config* config, char** json) {
    return guarded([&] {
        require(config && json, "config and json must not be null");
        *json = owned_copy(cfstripe::config_to_json(config->config));
    });
}

cfs_status cfs_campaign_create(const cfs_config* config, cfs_campaign** out) {
    return guarded([&] {
        require(config && out, "config and out must not be null");
        auto* c = new cfs_campaign{};
        c->plan.base = config->config;
        c->plan.correlations = {config->config.correlation_model};
        c->plan.user_counts = {config->config.user_count};
        *out = c;
    });
}

void cfs_campaign_destroy(cfs_campaign* campaign) { delete campaign; }

cfs_status cfs_campaign_set_schemes(cfs_campaign* campaign, const char* csv) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        std::vector<cfstripe::Scheme> schemes;
        for (const auto& s : split_csv(csv)) schemes.push_back(cfstripe::parse_scheme(s));
        campaign->schemes = std::move(schemes);
        rebuild_cells(*campaign);
    });
}

cfs_status cfs_campaign_set_ucs(cfs_campaign* campaign, const char* csv) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        std::vector<cfstripe::UcStrategy> ucs;
        for (const auto& s : split_csv(csv)) ucs.push_back(cfstripe::parse_uc(s));
        campaign->ucs = std::move(ucs);
        rebuild_cells(*campaign);
    });
}

cfs_status cfs_campaign_set_cells(cfs_campaign* campaign, const char* csv) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        std::vector<cfstripe::Cell> cells;
        for (const auto& item : split_csv(csv)) {
            const auto colon = item.find(':');
            const auto scheme = cfstripe::parse_scheme(item.substr(0, colon));
            const auto uc = colon == std::string::npos ? cfstripe::UcStrategy::none
                                                       : cfstripe::parse_uc(item.substr(colon + 1));
            cells.push_back({scheme, uc});
        }
        campaign->plan.cells = std::move(cells);
    });
}

cfs_status cfs_campaign_set_correlations(cfs_campaign* campaign, const char* csv) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        std::vector<cfstripe::CorrelationModel> models;
        for (const auto& s : split_csv(csv)) models.push_back(cfstripe::parse_correlation(s));
        campaign->plan.correlations = std::move(models);
    });
}

cfs_status cfs_campaign_set_user_counts(cfs_campaign* campaign, const char* csv) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        std::vector<int> counts;
        for (const auto& s : split_csv(csv)) {
            cfstripe::ScenarioConfig probe;
            cfstripe::set_config_value(probe, "user_count", s);
            counts.push_back(probe.user_count);
        }
        campaign->plan.user_counts = std::move(counts);
    });
}

cfs_status cfs_campaign_set_drops(cfs_campaign* campaign, int drops) {
    return guarded([&] {
        require(campaign != nullptr && drops >= 1, "drops must be >= 1");
        campaign->plan.base.drops = drops;
    });
}

cfs_status cfs_campaign_set_realizations(cfs_campaign* campaign, int realizations) {
    return guarded([&] {
        require(campaign != nullptr && realizations >= 1, "realizations must be >= 1");
        campaign->plan.base.realizations_per_drop = realizations;
    });
}

cfs_status cfs_campaign_set_seed(cfs_campaign* campaign, uint64_t seed) {
    return guarded([&] {
        require(campaign != nullptr, "campaign must not be null");
        campaign->plan.base.rng_seed = seed;
    });
}

cfs_status cfs_campaign_set_workers(cfs_campaign* campaign, int workers) {
    return guarded([&] {
        require(campaign != nullptr && workers >= 1, "workers must be >= 1");
        campaign->plan.workers = workers;
    });
}

cfs_status cfs_campaign_set_output_dir(cfs_campaign* campaign, const char* path) {
    return guarded([&] {
        require(campaign != nullptr && path != nullptr, "campaign and path must not be null");
        campaign->plan.output_dir = path;
    });
}

cfs_status cfs_campaign_run(const cfs_campaign* campaign, cfs_result** out) {
    return guarded([&] {
        require(campaign != nullptr && out != nullptr, "campaign and out must not be null");
        auto result = cfstripe::run_campaign(campaign->plan);
        *out = new cfs_result{std::move(result)};
    });
}

void cfs_result_destroy(cfs_result* result) { delete result; }

size_t cfs_result_summary_count(const cfs_result* result) {
    return result ? result->result.summary.size() : 0;
}

cfs_status cfs_result_summary_row(const cfs_result* result, size_t index, cfs_summary_row* row) {
    return guarded([&] {
        require(result && row, "result and row must not be null");
        require(index < result->result.summary.size(), "summary index out of range");
        const auto& r = result->result.summary[index];
        // to_string / csv_label return views of string literals.
        row->scheme = cfstripe::to_string(r.scheme).data();
        row->uc = cfstripe::to_string(r.uc).data();
        row->correlation = cfstripe::csv_label(r.correlation).data();
        row->users = r.users;
        row->mean_se = r.mean_se;
        row->p05 = r.p05;
        row->p50 = r.p50;
        row->p95 = r.p95;
    });
}

cfs_status cfs_result_records_csv(const cfs_result* result, char** csv) {
    return guarded([&] {
        require(result && csv, "result and csv must not be null");
        std::ostringstream out;
        cfstripe::write_records_csv(out, result->result.records);
        *csv = owned_copy(out.str());
    });
}

cfs_status cfs_result_summary_csv(const cfs_result* result, char** csv) {
    return guarded([&] {
        require(result && csv, "result and csv must not be null");
        std::ostringstream out;
        cfstripe::write_summary_csv(out, result->result.summary);
        *csv = owned_copy(out.str());
    });
}

double cfs_result_pipeline_deviation(const cfs_result* result) {
    return result ? result->result.pipeline_deviation : 0.0;
}

cfs_status cfs_fronthaul_csv(int users, int total_antennas, int tc_min, int tc_max, int tc_step,
                             int pilot_length, char** csv) {
    return guarded([&] {
        require(csv != nullptr, "csv must not be null");
        std::ostringstream out;
        cfstripe::write_fronthaul_csv(
            out, cfstripe::fronthaul_table(users, total_antennas, tc_min, tc_max, tc_step, pilot_length));
        *csv = owned_copy(out.str());
    });
}

cfs_status cfs_complexity_csv(const cfs_config* config, char** csv) {
    return guarded([&] {
        require(config && csv, "config and csv must not be null");
        std::ostringstream out;
        cfstripe::write_complexity_csv(out, cfstripe::complexity_table(config->config));
        *csv = owned_copy(out.str());
    });
}

}  // extern "C"
