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

#ifndef HISTLAW_ENGINE_H
#define HISTLAW_ENGINE_H

#include <map>
#include <vector>

#include "model.h"

namespace histlaw {

/// Desk-scale guardrails for enumeration.
struct Limits {
    size_t max_states = 1000000;     // reachable distributions per slice
    size_t max_histories = 1000000;  // histories materialized by enumeration

    /// Defaults, overridden by HISTLAW_MAX_STATES when set.
    static Limits from_environment();
};

/// Amplitudes of every distribution at one slice, summed over histories up to
/// that slice. Second-order fields are keyed by joined (previous, current)
/// pairs and start at slice 1.
struct AmplitudeField {
    size_t slice = 0;
    bool pairs = false;
    std::map<Distribution, Amplitude> entries;

    Amplitude at(const Distribution &d) const;
    double norm_squared() const;
};

/// A scenario lowered to a first-order chain. First-order scenarios map
/// directly; second-order scenarios become a chain over joined pairs whose
/// chain slice k corresponds to scenario slice k + 1.
struct Chain {
    std::vector<std::pair<Distribution, Amplitude>> initial;  // merged, sorted
    size_t steps = 0;
    size_t slice_offset = 0;
    const Kernel *kernel = nullptr;
    bool pairs = false;

    Transitions support(size_t chain_step, const Distribution &state) const;
    /// Scenario-level history (T+1 distributions) from chain states.
    std::vector<Distribution> unfold(const std::vector<Distribution> &states) const;
    /// Chain states from a scenario-level history.
    std::vector<Distribution> fold(const std::vector<Distribution> &slices) const;
};

Chain make_chain(const Scenario &scenario);

/// Coherent and incoherent accumulation into one target distribution.
struct Inflow {
    Amplitude coherent{};  // sum of psi(d_n) * step(d_n -> target)
    double incoherent = 0; // sum of |psi(d_n) * step(d_n -> target)|^2
};

/// Forward pass over a chain: pruned fields per chain slice, plus the inflow
/// table of every slice >= 1 from which interference factors are read.
struct ForwardPass {
    std::vector<std::map<Distribution, Amplitude>> fields;
    std::vector<std::map<Distribution, Inflow>> inflows;  // inflows[0] is empty

    /// Interference factor at chain slice k, neutral 1 when nothing flows in.
    double interference(size_t k, const Distribution &state) const;
};

ForwardPass forward_pass(const Chain &chain, size_t upto_step, const Limits &limits);

/// Fields for slices 0..upto_slice (first order) or 1..upto_slice (second order).
std::vector<AmplitudeField> propagate(const Scenario &scenario, size_t upto_slice, const Limits &limits = {});

/// Initial amplitude times all step amplitudes along `history`; exact 0 when a
/// step leaves the kernel's support or the history has the wrong length.
Amplitude history_amplitude(const Scenario &scenario, const std::vector<Distribution> &history);

/// |psi(final, T)|^2. For second-order scenarios this sums over final pairs
/// whose current element is `final`.
double born_probability(const Scenario &scenario, const Distribution &final, const Limits &limits = {});

/// |psi(previous, final)|^2 for a second-order scenario.
double pair_born_probability(
    const Scenario &scenario, const Distribution &previous, const Distribution &final, const Limits &limits = {});

/// Born probability of each labeled observable at the final slice.
std::map<std::string, double> final_marginals(const Scenario &scenario, const Limits &limits = {});

}  // namespace histlaw

#endif
