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

#ifndef CFSTRIPE_H
#define CFSTRIPE_H

/*
 * C interface to the cfstripe simulator.
 *
 * Objects are opaque handles created by *_create / *_load and released by the
 * matching *_destroy. Every fallible call returns a cfs_status; on failure a
 * description is available from cfs_last_error() on the calling thread until
 * the next failing call on that thread.
 *
 * Strings returned through char** out-parameters are heap-allocated by the
 * library and must be released with cfs_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CFSTRIPE_BUILDING)
#    define CFS_API __declspec(dllexport)
#  else
#    define CFS_API __declspec(dllimport)
#  endif
#else
#  define CFS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cfs_status {
    CFS_OK = 0,
    CFS_ERR_INVALID_ARGUMENT = 1,
    CFS_ERR_NUMERIC = 2,
    CFS_ERR_IO = 3,
    CFS_ERR_INTERNAL = 4
} cfs_status;

typedef struct cfs_config cfs_config;
typedef struct cfs_campaign cfs_campaign;
typedef struct cfs_result cfs_result;

typedef struct cfs_summary_row {
    const char* scheme;      /* mr | imr | lmmse | drzf */
    const char* uc;          /* none | beta | sinr */
    const char* correlation; /* uncorrelated | scattering */
    int users;
    double mean_se;
    double p05;
    double p50;
    double p95;
} cfs_summary_row;

CFS_API const char* cfs_version(void);
CFS_API const char* cfs_last_error(void);
CFS_API const char* cfs_status_string(cfs_status status);
CFS_API void cfs_string_free(char* str);

/* Scenario configuration. */
CFS_API cfs_status cfs_config_create(cfs_config** out);
CFS_API cfs_status cfs_config_load(const char* path, cfs_config** out);
CFS_API void cfs_config_destroy(cfs_config* config);
CFS_API cfs_status cfs_config_set(cfs_config* config, const char* key, const char* value);
CFS_API cfs_status cfs_config_get(const cfs_config* config, const char* key, char** value);
CFS_API cfs_status cfs_config_validate(const cfs_config* config);
/* Newline-separated warnings, empty when there are none. */
CFS_API cfs_status cfs_config_warnings(const cfs_config* config, char** text);
CFS_API cfs_status cfs_config_to_json(const cfs_config* config, char** json);

/* Monte-Carlo campaign. The campaign keeps its own copy of the config. */
CFS_API cfs_status cfs_campaign_create(const cfs_config* config, cfs_campaign** out);
CFS_API void cfs_campaign_destroy(cfs_campaign* campaign);
/* Comma-separated lists. Setting schemes and/or ucs switches from the default
 * cell list to the product schemes x ucs. */
CFS_API cfs_status cfs_campaign_set_schemes(cfs_campaign* campaign, const char* csv);
CFS_API cfs_status cfs_campaign_set_ucs(cfs_campaign* campaign, const char* csv);
/* Explicit cells, e.g. "mr:none,mr:beta,imr:sinr". */
CFS_API cfs_status cfs_campaign_set_cells(cfs_campaign* campaign, const char* csv);
CFS_API cfs_status cfs_campaign_set_correlations(cfs_campaign* campaign, const char* csv);
CFS_API cfs_status cfs_campaign_set_user_counts(cfs_campaign* campaign, const char* csv);
CFS_API cfs_status cfs_campaign_set_drops(cfs_campaign* campaign, int drops);
CFS_API cfs_status cfs_campaign_set_realizations(cfs_campaign* campaign, int realizations);
CFS_API cfs_status cfs_campaign_set_seed(cfs_campaign* campaign, uint64_t seed);
CFS_API cfs_status cfs_campaign_set_workers(cfs_campaign* campaign, int workers);
CFS_API cfs_status cfs_campaign_set_output_dir(cfs_campaign* campaign, const char* path);
CFS_API cfs_status cfs_campaign_run(const cfs_campaign* campaign, cfs_result** out);

CFS_API void cfs_result_destroy(cfs_result* result);
CFS_API size_t cfs_result_summary_count(const cfs_result* result);
/* Row pointers stay valid until the result is destroyed. */
CFS_API cfs_status cfs_result_summary_row(const cfs_result* result, size_t index,
                                          cfs_summary_row* row);
CFS_API cfs_status cfs_result_records_csv(const cfs_result* result, char** csv);
CFS_API cfs_status cfs_result_summary_csv(const cfs_result* result, char** csv);
CFS_API double cfs_result_pipeline_deviation(const cfs_result* result);

/* Cost accounting tables as CSV text. */
CFS_API cfs_status cfs_fronthaul_csv(int users, int total_antennas, int tc_min, int tc_max,
                                     int tc_step, int pilot_length, char** csv);
CFS_API cfs_status cfs_complexity_csv(const cfs_config* config, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* CFSTRIPE_H */
