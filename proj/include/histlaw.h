// Copyright 2026 The histlaw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HISTLAW_H
#define HISTLAW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HL_API __declspec(dllexport)
#else
#define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERR_INVALID_ARGUMENT = 1,
    HL_ERR_UNKNOWN_SCENARIO = 2,
    HL_ERR_UNKNOWN_PARAMETER = 3,
    HL_ERR_OVERFLOW = 4,
    HL_ERR_NOT_UNITARY = 5,
    HL_ERR_CHECK_FAILED = 6,
    HL_ERR_INTERNAL = 7
} hl_status;

typedef enum hl_mode { HL_MODE_ENUMERATE = 0, HL_MODE_SAMPLE = 1, HL_MODE_MARGINALS = 2, HL_MODE_IMAP = 3 } hl_mode;
typedef enum hl_format { HL_FORMAT_JSON = 0, HL_FORMAT_CSV = 1 } hl_format;

typedef struct hl_scenario hl_scenario;
typedef struct hl_histories hl_histories;

typedef struct hl_limits {
    size_t max_states;
    size_t max_histories;
} hl_limits;

/* Message of the last failed call on this thread ("" if none). */
HL_API const char *hl_last_error(void);
HL_API const char *hl_status_name(hl_status status);
HL_API const char *hl_version(void);

/* Built-in limits, with HISTLAW_MAX_STATES applied when set. */
HL_API void hl_limits_default(hl_limits *out);

/* Builder registry. Strings stay valid for the life of the process. */
HL_API size_t hl_builder_count(void);
HL_API const char *hl_builder_name(size_t index);
HL_API const char *hl_builder_help(size_t index);
HL_API size_t hl_builder_param_count(size_t index);
HL_API hl_status hl_builder_param(
    size_t index, size_t param, const char **name, const char **type, const char **default_value, const char **help);

/* keys/values: n builder parameters as strings. */
HL_API hl_status hl_scenario_build(
    const char *name, const char *const *keys, const char *const *values, size_t n, hl_scenario **out);
/* JSON config {"scenario": ..., "params": {...}}; keys/values override it. */
HL_API hl_status hl_scenario_load_config(
    const char *path, const char *const *keys, const char *const *values, size_t n, hl_scenario **out);
HL_API void hl_scenario_free(hl_scenario *scenario);

HL_API const char *hl_scenario_name(const hl_scenario *scenario);
HL_API size_t hl_scenario_slice_count(const hl_scenario *scenario);
HL_API size_t hl_scenario_site_count(const hl_scenario *scenario);
HL_API int hl_scenario_second_order(const hl_scenario *scenario);
HL_API hl_status hl_scenario_validate(const hl_scenario *scenario, int *is_unitary, double *max_norm_drift);

/* Born probability of a named label at the final slice. */
HL_API hl_status hl_marginal(const hl_scenario *scenario, const char *label, const hl_limits *limits, double *out);
HL_API hl_status hl_born_consistency(
    const hl_scenario *scenario, const hl_limits *limits, double *max_discrepancy, double *total_probability,
    int *passed);
HL_API hl_status hl_history_count(const hl_scenario *scenario, const hl_limits *limits, double *out);

/* Runs one mode; *out is a NUL-terminated buffer released with hl_string_free. */
HL_API hl_status hl_run(
    const hl_scenario *scenario, hl_mode mode, hl_format format, uint64_t seed, size_t count, const hl_limits *limits,
    char **out);
HL_API void hl_string_free(char *text);

HL_API hl_status hl_enumerate(const hl_scenario *scenario, const hl_limits *limits, hl_histories **out);
HL_API hl_status hl_sample(
    const hl_scenario *scenario, uint64_t seed, size_t count, const hl_limits *limits, hl_histories **out);
HL_API size_t hl_histories_size(const hl_histories *histories);
HL_API hl_status hl_history_get(
    const hl_histories *histories, size_t index, double *probability, double *feynman_re, double *feynman_im,
    double *interference_product);
/* "S>A>X" style rendering; valid until hl_histories_free. */
HL_API const char *hl_history_render(const hl_histories *histories, size_t index);
HL_API void hl_histories_free(hl_histories *histories);

/* |sum c|^2 / sum |c|^2, 1 when the denominator vanishes. */
HL_API double hl_interference_ratio(const double *re, const double *im, size_t n);

/* out: wavevector, momentum, velocity, energy, angular frequency. hbar <= 0 selects the default. */
HL_API hl_status hl_apparatus_recoil(double wavelength, double mass, double hbar, double out[5]);

/* Runs the built-in battery. *report holds one line per check (hl_string_free). */
HL_API hl_status hl_self_check(int quick, double perturbation, char **report, int *all_passed);

#ifdef __cplusplus
}
#endif

#endif
