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

#ifndef HISTLAW_HISTORY_LAW_H
#define HISTLAW_HISTORY_LAW_H

#include <string>
#include <vector>

#include "engine.h"

namespace histlaw {

/// Every in-support history with P(H) = |F(H)|^2 * prod_alpha I(d_alpha),
/// in depth-first canonical order. Throws EnumerationOverflow when the
/// history count exceeds limits.max_histories.
std::vector<History> enumerate_histories(const Scenario &scenario, const Limits &limits = {});

/// Number of in-support histories, computed by path counting without
/// materializing them.
double count_histories(const Scenario &scenario, const Limits &limits = {});

struct ConsistencyReport {
    /// max over final outcomes |sum_{H -> d} P(H) - |psi(d)|^2|
    double max_discrepancy = 0;
    double total_probability = 0;
    size_t history_count = 0;
    size_t outcome_count = 0;
    bool passed = false;
};

/// Born consistency of the history law. Outcomes are final distributions
/// (first order) or final pairs (second order).
ConsistencyReport marginal_consistency(const Scenario &scenario, const Limits &limits = {});
/// Same check with histories drawn from `history_side` and Born values from
/// `born_side`; used to inject mismatches into the battery.
ConsistencyReport marginal_consistency(
    const Scenario &history_side, const Scenario &born_side, const Limits &limits = {});

inline constexpr const char *kGeneratorName = "mt19937_64";

/// Backward ancestral sampling: d_T from the Born distribution, then each
/// predecessor with weight |psi(d_{a-1})|^2 |step(d_{a-1} -> d_a)|^2.
/// Deterministic in (scenario, seed). Refuses scenarios that lose norm.
std::vector<History> sample_histories(const Scenario &scenario, uint64_t seed, size_t count, const Limits &limits = {});

/// Sum of P(H) over histories whose distribution at `slice` matches `label`.
double history_marginal(const std::vector<History> &histories, const Label &label, size_t slice);

/// Half-open site range [begin, end).
struct SiteBin {
    size_t begin = 0;
    size_t end = 0;
};

struct Family {
    std::string label;
    double probability = 0;
    size_t members = 0;
};

/// Groups fine-grained histories by per-slice bin occupancy (tags kept
/// verbatim). `bins` must partition [0, site_count).
std::vector<Family> coarse_grain(const std::vector<History> &histories, const std::vector<SiteBin> &bins, size_t site_count);

/// Whole-history interference ratio at `slice`: all history prefixes that end
/// in history.slices[slice] interfere with each other, regardless of where
/// they diverged. This is the wrong rule; it exists to exhibit overcounting.
double whole_history_interference_factor(const Scenario &scenario, const History &history, size_t slice, const Limits &limits = {});
/// The whole-history ratio at the final slice.
double end_time_interference_factor(const Scenario &scenario, const History &history, const Limits &limits = {});

/// Predecessor-independent second-order form of a first-order scenario:
/// pair terms psi(d0) step(d0 -> d1), and step(j, prev, d) = step(j, d).
Scenario to_second_order(const Scenario &first_order);

/// Total variation distance between the empirical distribution of `samples`
/// and the exact history probabilities.
double total_variation(const std::vector<History> &samples, const std::vector<History> &exact);

}  // namespace histlaw

#endif
