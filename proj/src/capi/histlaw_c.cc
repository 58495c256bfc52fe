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

#include "histlaw.h"

#include <cstring>
#include <string>

#include "histlaw/history_law.h"
#include "histlaw/interference.h"
#include "histlaw/report.h"
#include "histlaw/scenarios.h"
#include "histlaw/self_check.h"

struct hl_scenario {
    histlaw::Scenario scenario;
};

struct hl_histories {
    std::vector<histlaw::History> items;
    std::vector<std::string> rendered;
};

namespace {

thread_local std::string last_error;

template <typename F>
hl_status guarded(F &&body) {
    last_error.clear();
    try {
        body();
        return HL_OK;
    } catch (const histlaw::UnknownScenario &e) {
        last_error = e.what();
        return HL_ERR_UNKNOWN_SCENARIO;
    } catch (const histlaw::UnknownParameter &e) {
        last_error = e.what();
        return HL_ERR_UNKNOWN_PARAMETER;
    } catch (const histlaw::EnumerationOverflow &e) {
        last_error = std::string(e.what()) + " (estimate " + histlaw::format_number(e.estimate) +
                     "); raise HISTLAW_MAX_STATES to allow more";
        return HL_ERR_OVERFLOW;
    } catch (const histlaw::NotUnitary &e) {
        last_error = e.what();
        return HL_ERR_NOT_UNITARY;
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return HL_ERR_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return HL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return HL_ERR_INTERNAL;
    }
}

hl_status fail(hl_status status, const char *message) {
    last_error = message;
    return status;
}

histlaw::Limits to_limits(const hl_limits *limits) {
    if (limits == nullptr) {
        return histlaw::Limits::from_environment();
    }
    histlaw::Limits out;
    out.max_states = limits->max_states;
    out.max_histories = limits->max_histories;
    return out;
}

char *copy_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void add_params(std::map<std::string, std::string> &params, const char *const *keys, const char *const *values, size_t n) {
    if (n > 0 && (keys == nullptr || values == nullptr)) {
        throw histlaw::InvalidArgument("parameter arrays are null");
    }
    for (size_t i = 0; i < n; i++) {
        if (keys[i] == nullptr || values[i] == nullptr) {
            throw histlaw::InvalidArgument("null parameter key or value");
        }
        params[keys[i]] = values[i];
    }
}

hl_histories *wrap(const histlaw::Scenario &s, std::vector<histlaw::History> hs) {
    auto *out = new hl_histories;
    out->items = std::move(hs);
    for (const auto &h : out->items) {
        out->rendered.push_back(s.render(h.slices));
    }
    return out;
}

}  // namespace

extern "C" {

const char *hl_last_error(void) {
    return last_error.c_str();
}

const char *hl_status_name(hl_status status) {
    switch (status) {
        case HL_OK:
            return "ok";
        case HL_ERR_INVALID_ARGUMENT:
            return "invalid_argument";
        case HL_ERR_UNKNOWN_SCENARIO:
            return "unknown_scenario";
        case HL_ERR_UNKNOWN_PARAMETER:
            return "unknown_parameter";
        case HL_ERR_OVERFLOW:
            return "enumeration_overflow";
        case HL_ERR_NOT_UNITARY:
            return "not_unitary";
        case HL_ERR_CHECK_FAILED:
            return "check_failed";
        case HL_ERR_INTERNAL:
            return "internal";
    }
    return "unknown_status";
}

const char *hl_version(void) {
    return "0.1.0";
}

void hl_limits_default(hl_limits *out) {
    if (out == nullptr) {
        return;
    }
    auto l = histlaw::Limits::from_environment();
    out->max_states = l.max_states;
    out->max_histories = l.max_histories;
}

size_t hl_builder_count(void) {
    return histlaw::builder_registry().size();
}

const char *hl_builder_name(size_t index) {
    const auto &r = histlaw::builder_registry();
    return index < r.size() ? r[index].name.c_str() : nullptr;
}

const char *hl_builder_help(size_t index) {
    const auto &r = histlaw::builder_registry();
    return index < r.size() ? r[index].help.c_str() : nullptr;
}

size_t hl_builder_param_count(size_t index) {
    const auto &r = histlaw::builder_registry();
    return index < r.size() ? r[index].params.size() : 0;
}

hl_status hl_builder_param(
    size_t index, size_t param, const char **name, const char **type, const char **default_value, const char **help) {
    const auto &r = histlaw::builder_registry();
    if (index >= r.size() || param >= r[index].params.size()) {
        return fail(HL_ERR_INVALID_ARGUMENT, "builder or parameter index out of range");
    }
    const auto &p = r[index].params[param];
    if (name) {
        *name = p.name.c_str();
    }
    if (type) {
        *type = p.type.c_str();
    }
    if (default_value) {
        *default_value = p.default_value.c_str();
    }
    if (help) {
        *help = p.help.c_str();
    }
    last_error.clear();
    return HL_OK;
}

hl_status hl_scenario_build(
    const char *name, const char *const *keys, const char *const *values, size_t n, hl_scenario **out) {
    if (name == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null name or output pointer");
    }
    *out = nullptr;
    return guarded([&] {
        std::map<std::string, std::string> params;
        add_params(params, keys, values, n);
        *out = new hl_scenario{histlaw::build_scenario(name, params)};
    });
}

hl_status hl_scenario_load_config(
    const char *path, const char *const *keys, const char *const *values, size_t n, hl_scenario **out) {
    if (path == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null path or output pointer");
    }
    *out = nullptr;
    return guarded([&] {
        auto config = histlaw::load_config(path);
        add_params(config.params, keys, values, n);
        *out = new hl_scenario{histlaw::build_scenario(config.scenario, config.params)};
    });
}

void hl_scenario_free(hl_scenario *scenario) {
    delete scenario;
}

const char *hl_scenario_name(const hl_scenario *scenario) {
    return scenario ? scenario->scenario.name.c_str() : nullptr;
}

size_t hl_scenario_slice_count(const hl_scenario *scenario) {
    return scenario ? scenario->scenario.slice_count() : 0;
}

size_t hl_scenario_site_count(const hl_scenario *scenario) {
    return scenario ? scenario->scenario.site_count : 0;
}

int hl_scenario_second_order(const hl_scenario *scenario) {
    return scenario && scenario->scenario.second_order() ? 1 : 0;
}

hl_status hl_scenario_validate(const hl_scenario *scenario, int *is_unitary, double *max_norm_drift) {
    if (scenario == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null scenario");
    }
    return guarded([&] {
        auto v = histlaw::validate_kernel(scenario->scenario);
        if (is_unitary) {
            *is_unitary = v.is_unitary ? 1 : 0;
        }
        if (max_norm_drift) {
            *max_norm_drift = v.max_norm_drift;
        }
    });
}

hl_status hl_marginal(const hl_scenario *scenario, const char *label, const hl_limits *limits, double *out) {
    if (scenario == nullptr || label == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        auto m = histlaw::final_marginals(scenario->scenario, to_limits(limits));
        auto it = m.find(label);
        if (it == m.end()) {
            throw histlaw::InvalidArgument("scenario has no label '" + std::string(label) + "'");
        }
        *out = it->second;
    });
}

hl_status hl_born_consistency(
    const hl_scenario *scenario, const hl_limits *limits, double *max_discrepancy, double *total_probability,
    int *passed) {
    if (scenario == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null scenario");
    }
    return guarded([&] {
        auto r = histlaw::marginal_consistency(scenario->scenario, to_limits(limits));
        if (max_discrepancy) {
            *max_discrepancy = r.max_discrepancy;
        }
        if (total_probability) {
            *total_probability = r.total_probability;
        }
        if (passed) {
            *passed = r.passed ? 1 : 0;
        }
    });
}

hl_status hl_history_count(const hl_scenario *scenario, const hl_limits *limits, double *out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        *out = histlaw::count_histories(scenario->scenario, to_limits(limits));
    });
}

hl_status hl_run(
    const hl_scenario *scenario, hl_mode mode, hl_format format, uint64_t seed, size_t count, const hl_limits *limits,
    char **out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    if (mode < HL_MODE_ENUMERATE || mode > HL_MODE_IMAP || format < HL_FORMAT_JSON || format > HL_FORMAT_CSV) {
        return fail(HL_ERR_INVALID_ARGUMENT, "unknown mode or format");
    }
    return guarded([&] {
        histlaw::RunOptions o;
        o.mode = (histlaw::RunMode)mode;
        o.format = (histlaw::OutputFormat)format;
        o.seed = seed;
        o.count = count;
        o.limits = to_limits(limits);
        *out = copy_string(histlaw::run_report(scenario->scenario, o));
    });
}

void hl_string_free(char *text) {
    delete[] text;
}

hl_status hl_enumerate(const hl_scenario *scenario, const hl_limits *limits, hl_histories **out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = wrap(scenario->scenario, histlaw::enumerate_histories(scenario->scenario, to_limits(limits)));
    });
}

hl_status hl_sample(
    const hl_scenario *scenario, uint64_t seed, size_t count, const hl_limits *limits, hl_histories **out) {
    if (scenario == nullptr || out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        *out = wrap(scenario->scenario, histlaw::sample_histories(scenario->scenario, seed, count, to_limits(limits)));
    });
}

size_t hl_histories_size(const hl_histories *histories) {
    return histories ? histories->items.size() : 0;
}

hl_status hl_history_get(
    const hl_histories *histories, size_t index, double *probability, double *feynman_re, double *feynman_im,
    double *interference_product) {
    if (histories == nullptr || index >= histories->items.size()) {
        return fail(HL_ERR_INVALID_ARGUMENT, "history index out of range");
    }
    const auto &h = histories->items[index];
    if (probability) {
        *probability = h.probability;
    }
    if (feynman_re) {
        *feynman_re = h.feynman_amplitude.real();
    }
    if (feynman_im) {
        *feynman_im = h.feynman_amplitude.imag();
    }
    if (interference_product) {
        *interference_product = h.interference_product;
    }
    last_error.clear();
    return HL_OK;
}

const char *hl_history_render(const hl_histories *histories, size_t index) {
    if (histories == nullptr || index >= histories->rendered.size()) {
        return nullptr;
    }
    return histories->rendered[index].c_str();
}

void hl_histories_free(hl_histories *histories) {
    delete histories;
}

double hl_interference_ratio(const double *re, const double *im, size_t n) {
    std::vector<histlaw::Amplitude> cs;
    for (size_t i = 0; i < n; i++) {
        cs.emplace_back(re ? re[i] : 0.0, im ? im[i] : 0.0);
    }
    return histlaw::interference_ratio(cs);
}

hl_status hl_apparatus_recoil(double wavelength, double mass, double hbar, double out[5]) {
    if (out == nullptr) {
        return fail(HL_ERR_INVALID_ARGUMENT, "null output");
    }
    return guarded([&] {
        auto r = histlaw::apparatus_recoil(wavelength, mass, hbar > 0 ? hbar : histlaw::kReducedPlanck);
        out[0] = r.wavevector;
        out[1] = r.momentum;
        out[2] = r.velocity;
        out[3] = r.energy;
        out[4] = r.angular_frequency;
    });
}

hl_status hl_self_check(int quick, double perturbation, char **report, int *all_passed) {
    bool ok = true;
    hl_status status = guarded([&] {
        histlaw::SelfCheckOptions o;
        o.quick = quick != 0;
        o.perturbation = perturbation;
        std::string text;
        for (const auto &r : histlaw::self_check(o)) {
            ok = ok && r.passed;
            text += histlaw::format_check(r) + "\n";
        }
        if (report) {
            *report = copy_string(text);
        }
    });
    if (all_passed) {
        *all_passed = status == HL_OK && ok ? 1 : 0;
    }
    if (status == HL_OK && !ok) {
        return fail(HL_ERR_CHECK_FAILED, "one or more checks failed");
    }
    return status;
}

}  // extern "C"
