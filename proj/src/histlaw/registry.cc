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

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "engine.h"
#include "scenarios.h"

namespace histlaw {

namespace {

using Params = std::map<std::string, std::string>;

double parse_real(const std::string &key, const std::string &v) {
    errno = 0;
    char *end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno != 0 || !std::isfinite(x)) {
        throw InvalidArgument("parameter '" + key + "' expects a real number, got '" + v + "'");
    }
    return x;
}

long long parse_int(const std::string &key, const std::string &v) {
    errno = 0;
    char *end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno != 0) {
        throw InvalidArgument("parameter '" + key + "' expects an integer, got '" + v + "'");
    }
    return x;
}

size_t parse_count(const std::string &key, const std::string &v) {
    long long x = parse_int(key, v);
    if (x < 0) {
        throw InvalidArgument("parameter '" + key + "' must be non-negative");
    }
    return (size_t)x;
}

bool parse_bool(const std::string &key, const std::string &v) {
    if (v == "true" || v == "1") {
        return true;
    }
    if (v == "false" || v == "0") {
        return false;
    }
    throw InvalidArgument("parameter '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<bool> parse_schedule(const std::string &key, const std::string &v) {
    std::vector<bool> out;
    for (char c : v) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("parameter '" + key + "' expects a string of 0/1 per step, got '" + v + "'");
        }
        out.push_back(c == '1');
    }
    return out;
}

/// Merges user values over defaults; rejects keys the builder does not know.
Params resolve(const BuilderInfo &info, const Params &given) {
    Params out;
    for (const auto &p : info.params) {
        out[p.name] = p.default_value;
    }
    for (const auto &[k, v] : given) {
        if (!out.count(k)) {
            throw UnknownParameter("scenario '" + info.name + "' has no parameter '" + k + "'");
        }
        out[k] = v;
    }
    return out;
}

std::vector<BuilderInfo> make_registry() {
    std::vector<BuilderInfo> r;
    r.push_back({
        "mach_zehnder",
        "Two-route interferometer; P(X) = cos^2(phase_diff/2).",
        {
            {"phase_diff", "real", "0", "phase difference between the routes (rad)"},
            {"extra_port", "bool", "false", "add a non-interfering third outcome"},
            {"slices", "int", "2", "number of time steps"},
        },
        [](const Params &p) {
            return build_mach_zehnder(
                parse_real("phase_diff", p.at("phase_diff")), parse_bool("extra_port", p.at("extra_port")),
                parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "three_history",
        "Three routes; two cancel at an intermediate slice before meeting the third.",
        {{"slices", "int", "3", "number of time steps"}},
        [](const Params &p) {
            return build_three_history(parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "dielectric",
        "Photon reflecting off a thin sheet with optional top blocker and observer record.",
        {
            {"quarter_waves", "int", "1", "sheet thickness in quarter wavelengths (odd)"},
            {"blocker", "schedule", "", "blocker state per step as 0/1 characters (default all off)"},
            {"observer", "bool", "false", "record entry into the sheet in a tag"},
            {"slices", "int", "5", "number of time steps"},
        },
        [](const Params &p) {
            size_t slices = parse_count("slices", p.at("slices"));
            auto schedule = parse_schedule("blocker", p.at("blocker"));
            if (p.at("blocker").empty()) {
                schedule.assign(slices, false);
            }
            long long m = parse_int("quarter_waves", p.at("quarter_waves"));
            if (m < 1 || m > 1000001) {
                throw InvalidArgument("parameter 'quarter_waves' out of range");
            }
            return build_dielectric((int)m, schedule, parse_bool("observer", p.at("observer")), slices);
        },
    });
    r.push_back({
        "which_way",
        "Down-converter setup; blocking the idler removes the screen fringe.",
        {
            {"idler_blocked", "bool", "false", "send route A's idler into the blocker"},
            {"slices", "int", "3", "number of time steps"},
        },
        [](const Params &p) {
            return build_which_way(parse_bool("idler_blocked", p.at("idler_blocked")), parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "two_photon",
        "Two photons, two detectors; exchange assignments merge at (X, Y).",
        {
            {"phase", "real", "0", "relative phase of the exchanged assignment (rad)"},
            {"distinguishable", "bool", "false", "label which photon reached X"},
            {"slices", "int", "2", "number of time steps"},
        },
        [](const Params &p) {
            return build_two_photon(
                parse_real("phase", p.at("phase")), parse_bool("distinguishable", p.at("distinguishable")),
                parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "epr",
        "Polarization-entangled pair with aligned x polaroids.",
        {{"slices", "int", "2", "number of time steps"}},
        [](const Params &p) {
            return build_epr(parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "delayed_interference",
        "Unequal route lengths with a stamping screen or a detector atom that holds its excitation.",
        {
            {"delta", "int", "1", "extra slices on route B"},
            {"atom_memory", "bool", "false", "detector atom keeps the excitation"},
            {"atom_phase", "real", "0", "phase per slice of the excited atom (rad)"},
            {"slices", "int", "0", "number of time steps (0 = delta + 3)"},
        },
        [](const Params &p) {
            return build_delayed_interference(
                parse_count("delta", p.at("delta")), parse_bool("atom_memory", p.at("atom_memory")),
                parse_real("atom_phase", p.at("atom_phase")), parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "identity",
        "One particle at rest.",
        {
            {"sites", "int", "1", "number of sites"},
            {"slices", "int", "3", "number of time steps"},
        },
        [](const Params &p) {
            return build_identity(parse_count("sites", p.at("sites")), parse_count("slices", p.at("slices")));
        },
    });
    r.push_back({
        "random_unitary",
        "Random unitary step per slice on a single particle.",
        {
            {"sites", "int", "3", "number of sites"},
            {"slices", "int", "3", "number of time steps"},
            {"seed", "int", "1", "generator seed"},
            {"terminal_rest", "bool", "false", "make the final step an identity"},
        },
        [](const Params &p) {
            return build_random_unitary(
                parse_count("sites", p.at("sites")), parse_count("slices", p.at("slices")),
                (uint64_t)parse_count("seed", p.at("seed")), parse_bool("terminal_rest", p.at("terminal_rest")));
        },
    });
    r.push_back({
        "random_second_order",
        "Random kernel that depends on the previous site.",
        {
            {"sites", "int", "3", "number of sites"},
            {"slices", "int", "3", "number of time steps"},
            {"seed", "int", "1", "generator seed"},
        },
        [](const Params &p) {
            return build_random_second_order(
                parse_count("sites", p.at("sites")), parse_count("slices", p.at("slices")),
                (uint64_t)parse_count("seed", p.at("seed")));
        },
    });
    return r;
}

}  // namespace

const std::vector<BuilderInfo> &builder_registry() {
    static const std::vector<BuilderInfo> registry = make_registry();
    return registry;
}

Scenario build_scenario(const std::string &name, const Params &params) {
    for (const auto &info : builder_registry()) {
        if (info.name == name) {
            Params resolved = resolve(info, params);
            Scenario s = info.build(resolved);
            s.params.clear();
            for (const auto &p : info.params) {
                s.params.emplace_back(p.name, resolved.at(p.name));
            }
            return s;
        }
    }
    throw UnknownScenario("unknown scenario '" + name + "'");
}

RecoilReport apparatus_recoil(double wavelength, double mass, double hbar) {
    if (!(wavelength > 0) || !(mass > 0) || !(hbar > 0)) {
        throw InvalidArgument("apparatus_recoil: wavelength, mass and hbar must be positive");
    }
    RecoilReport r;
    r.wavevector = 2 * M_PI / wavelength;
    r.momentum = hbar * r.wavevector;
    // Photon turned through a right angle: the apparatus takes sqrt(2) p.
    r.velocity = std::sqrt(2.0) * r.momentum / mass;
    r.energy = mass * r.velocity * r.velocity / 2;
    r.angular_frequency = r.energy / hbar;
    return r;
}

Amplitude coarse_grained_amplitude(const std::vector<ApparatusTerm> &terms, double alpha, double beta) {
    Amplitude sum{};
    for (const auto &t : terms) {
        sum += std::polar(t.initial_magnitude, t.initial_phase) * std::polar(t.evolve_magnitude, t.evolve_phase);
    }
    return (std::polar(1.0, alpha) + std::polar(1.0, beta)) / std::sqrt(2.0) * sum;
}

double visibility(const std::vector<double> &values) {
    if (values.empty()) {
        return 0;
    }
    double hi = values[0], lo = values[0];
    for (double v : values) {
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    if (hi + lo <= 0) {
        return 0;
    }
    return (hi - lo) / (hi + lo);
}

std::vector<double> screen_profile(const Scenario &scenario, size_t sites) {
    auto marginals = final_marginals(scenario);
    std::vector<double> out;
    for (size_t k = 0; k < sites; k++) {
        auto it = marginals.find("screen:" + std::to_string(k));
        if (it == marginals.end()) {
            throw InvalidArgument("scenario '" + scenario.name + "' has no label screen:" + std::to_string(k));
        }
        out.push_back(it->second);
    }
    return out;
}

}  // namespace histlaw
