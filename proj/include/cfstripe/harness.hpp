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

#include "cfstripe/metrics.hpp"
#include "cfstripe/scenario.hpp"
#include "cfstripe/stripe.hpp"
#include "cfstripe/types.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cfstripe {

/// One experiment cell: a combining scheme with a user-centric strategy.
struct Cell {
    Scheme scheme = Scheme::mr;
    UcStrategy uc = UcStrategy::none;

    bool operator==(const Cell&) const = default;
};

/// MR, MR + UC, I-MR + SINR-sorted UC, LMMSE, D-RZF, D-RZF + UC.
std::vector<Cell> default_cells();
/// Cartesian product, scheme-major.
std::vector<Cell> grid_cells(std::span<const Scheme> schemes, std::span<const UcStrategy> ucs);

struct CampaignSpec {
    ScenarioConfig base;
    std::vector<Cell> cells = default_cells();
    std::vector<CorrelationModel> correlations{CorrelationModel::uncorrelated};
    std::vector<int> user_counts{20};
    /// Empty: nothing is written.
    std::string output_dir;
    int workers = 1;

    void validate() const;
};

struct DropResult {
    /// Cell-major, then user.
    std::vector<MetricsRecord> records;
    /// Per cell: K x realizations matrix of linear SINR.
    std::vector<RMatrix> sinr;
    /// Largest relative gap between stripe-pipeline symbol estimates and the
    /// centralized combiner applied to the same observation.
    double pipeline_deviation = 0.0;
};

/// One placement, `realizations_per_drop` coherence blocks. Every cell is
/// evaluated on the same channel and estimates.
DropResult run_drop(const ScenarioConfig& config, std::span<const Cell> cells, int drop_index);

struct SummaryRow {
    Scheme scheme = Scheme::mr;
    UcStrategy uc = UcStrategy::none;
    CorrelationModel correlation = CorrelationModel::uncorrelated;
    int users = 0;
    double mean_se = 0.0;
    double p05 = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
};

struct CampaignResult {
    std::vector<MetricsRecord> records;
    std::vector<SummaryRow> summary;
    double pipeline_deviation = 0.0;
};

/// Iterates correlation x K x cell. Writes records.csv, summary.csv and
/// metadata.json into plan.output_dir when it is set.
CampaignResult run_campaign(const CampaignSpec& plan);

const SummaryRow* find_summary(const CampaignResult& result, Cell cell,
                               CorrelationModel correlation, int users);

/// CSV labels. The local scattering model is written as "scattering".
std::string_view csv_label(CorrelationModel model);

void write_records_csv(std::ostream& out, const std::vector<MetricsRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

struct FronthaulRow {
    LoadingScheme scheme = LoadingScheme::mr;
    int users = 0;
    int total_antennas = 0;
    int coherence_block = 0;
    FronthaulLoad load;
};

/// Every scheme for tau_c in [tc_min, tc_max] with the given step.
std::vector<FronthaulRow> fronthaul_table(int users, int total_antennas, int tc_min, int tc_max,
                                          int tc_step, int pilot_length);
void write_fronthaul_csv(std::ostream& out, const std::vector<FronthaulRow>& rows);

struct ComplexityRow {
    Scheme scheme = Scheme::mr;
    UcStrategy uc = UcStrategy::none;
    double per_ap_mults = 0.0;
    double c_serial = 0.0;
    double c_parallel = 0.0;
    double c_total = 0.0;
    double cpu_mults = 0.0;
};

/// Multiplication counts averaged over `config.drops` placements. The UC masks
/// come from the placements' large-scale gains.
std::vector<ComplexityRow> complexity_table(const ScenarioConfig& config);
void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows);

}  // namespace cfstripe
