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

#ifndef HISTLAW_SCENARIOS_H
#define HISTLAW_SCENARIOS_H

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "model.h"

namespace histlaw {

/// Splitter convention: transmission 1/sqrt(2), reflection i/sqrt(2). With
/// route B taking the reflected arm twice the output X receives
/// (i/2)(1 + e^{i phase_diff}), so P(X) = cos^2((phase_diff + offset) / 2)
/// with this offset.
inline constexpr double kSplitterPhaseOffset = 0.0;

/// Photon source S, routes A/B, screen sites X (merge) and Y (other port).
/// With extra_port a third, non-interfering outcome Z takes half the
/// probability at the first splitter. `slices` >= 2 appends rest steps.
Scenario build_mach_zehnder(double phase_diff, bool extra_port = false, size_t slices = 2);

/// Three routes with equal magnitude. A and B cancel at X (slice 2); X and the
/// third route C then merge at Y (slice 3), where A, B, C carry
/// (+1, -1, +1) x 1/(2 sqrt 3).
Scenario build_three_history(size_t slices = 3);

/// Return step of the dielectric model: the step that brings the bottom
/// reflection back to the top surface (blocker schedule index).
inline constexpr size_t kDielectricReturnStep = 3;

/// Sheet (2n+1)/4 wavelengths thick, `quarter_waves` = 2n+1. The photon is
/// emitted either early (enters the sheet) or late (meets the top surface
/// when the early photon returns). `blocker_schedule[j]` switches the top
/// absorbing layer on for step j. With `observer`, entering the sheet sets a
/// record tag.
Scenario build_dielectric(
    int quarter_waves, const std::vector<bool> &blocker_schedule, bool observer = false, size_t slices = 5);

inline constexpr size_t kScreenSites = 8;

/// Down-converter which-way setup. Tags: [idler-counter fired, idler blocker
/// absorbed]. Route A's idler goes to the blocker when `idler_blocked`.
Scenario build_which_way(bool idler_blocked, size_t slices = 3);

/// Two sources, detector pair (X, Y). The two assignments (1->X, 2->Y) and
/// (1->Y, 2->X) pass through different intermediate distributions and merge
/// in the unlabeled final (X, Y); a second readout pair (X', Y') keeps the
/// merge unitary. `phase` is the relative phase of the second assignment.
Scenario build_two_photon(double phase = 0.0, bool distinguishable = false, size_t slices = 2);

/// (|x>|x> + |y>|y>)/sqrt(2) photon pair, aligned x polaroids on both sides.
/// Tags: [polarization 1, polarization 2] with 0 = x, 1 = y.
Scenario build_epr(size_t slices = 2);

/// Route B is `path_delta_slices` longer than route A. Without atom memory
/// the absorbing screen records the arrival slice in a tag. With memory the
/// detector atom holds the excitation (phase `atom_phase` per slice) and the
/// late photon's arrival mixes with the excited atom.
Scenario build_delayed_interference(
    size_t path_delta_slices, bool atom_memory, double atom_phase = 0.0, size_t slices = 0);

/// One particle resting on site 0 of `sites` sites.
Scenario build_identity(size_t sites = 1, size_t slices = 3);

/// One particle on `sites` sites, a random unitary per step and a random
/// normalized initial superposition. `terminal_rest` appends an identity step.
Scenario build_random_unitary(size_t sites, size_t slices, uint64_t seed, bool terminal_rest = false);

/// Second-order random scenario whose step matrix depends on the previous
/// site. Not norm-preserving in general; declared non-unitary.
Scenario build_random_second_order(size_t sites, size_t slices, uint64_t seed);

/// Typed builder parameter, parsed from "key=value" strings.
struct ParamSpec {
    std::string name;
    std::string type;  // real | int | bool | schedule
    std::string default_value;
    std::string help;
};

struct BuilderInfo {
    std::string name;
    std::string help;
    std::vector<ParamSpec> params;
    std::function<Scenario(const std::map<std::string, std::string> &)> build;
};

const std::vector<BuilderInfo> &builder_registry();

/// Builds a registered scenario. Throws UnknownScenario / UnknownParameter /
/// InvalidArgument.
Scenario build_scenario(const std::string &name, const std::map<std::string, std::string> &params);

struct RecoilReport {
    double wavevector;         // 1/m
    double momentum;           // kg m/s
    double velocity;           // m/s
    double energy;             // J
    double angular_frequency;  // rad/s
};

inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s

/// Recoil of a free apparatus of `mass` kg from a photon of `wavelength` m
/// bouncing off a mirror at right angles.
RecoilReport apparatus_recoil(double wavelength, double mass, double hbar = kReducedPlanck);

struct ApparatusTerm {
    double initial_magnitude;    // A_j
    double initial_phase;        // a_j
    double evolve_magnitude;     // B_j
    double evolve_phase;         // b_j
};

/// (1/sqrt 2)(e^{i alpha} + e^{i beta}) sum_j A_j e^{i a_j} B_j e^{i b_j}.
Amplitude coarse_grained_amplitude(const std::vector<ApparatusTerm> &terms, double alpha, double beta);

/// (max - min) / (max + min); 0 for an all-zero input.
double visibility(const std::vector<double> &values);

/// Born probabilities of labels "screen:0".."screen:N-1" at the final slice.
std::vector<double> screen_profile(const Scenario &scenario, size_t sites = kScreenSites);

}  // namespace histlaw

#endif
