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

#include "history_law.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace histlaw {

namespace {

/// Kernel support reachable from the initial terms, independent of amplitude
/// pruning, with path counts per state.
struct SupportGraph {
    std::vector<std::map<Distribution, Transitions>> adjacency;  // per chain step
    std::vector<std::map<Distribution, double>> paths;            // per chain slice
};

SupportGraph support_graph(const Chain &chain, size_t upto_step, const Limits &limits) {
    SupportGraph g;
    std::map<Distribution, double> layer;
    for (const auto &[d, a] : chain.initial) {
        if (a != Amplitude(0, 0)) {
            layer[d] += 1;
        }
    }
    g.paths.push_back(layer);
    for (size_t k = 0; k < upto_step; k++) {
        std::map<Distribution, Transitions> adj;
        std::map<Distribution, double> next;
        for (const auto &[d, n] : g.paths.back()) {
            auto ts = chain.support(k, d);
            for (const auto &t : ts) {
                next[t.to] += n;
            }
            adj.emplace_hint(adj.end(), d, std::move(ts));
            if (next.size() > limits.max_states) {
                size_t slice = k + 1 + chain.slice_offset;
                throw EnumerationOverflow(
                    "reachable state count exceeds " + std::to_string(limits.max_states) + " at slice " +
                        std::to_string(slice),
                    slice, (double)next.size());
            }
        }
        g.adjacency.push_back(std::move(adj));
        g.paths.push_back(std::move(next));
    }
    return g;
}

double total_paths(const SupportGraph &g) {
    double n = 0;
    for (const auto &[d, c] : g.paths.back()) {
        n += c;
    }
    return n;
}

Amplitude initial_amplitude(const Chain &chain, const Distribution &state) {
    auto it = std::lower_bound(chain.initial.begin(), chain.initial.end(), state, [](const auto &kv, const auto &d) {
        return kv.first < d;
    });
    return it != chain.initial.end() && it->first == state ? it->second : Amplitude{};
}

History make_history(
    const Chain &chain, std::vector<Distribution> states, Amplitude feynman, double product) {
    History h;
    h.slices = chain.unfold(states);
    h.feynman_amplitude = feynman;
    h.interference_product = product;
    h.probability = std::norm(feynman) * product;
    return h;
}

Distribution outcome_key(const Scenario &scenario, const History &h) {
    if (scenario.second_order()) {
        return join_pair(h.slices[h.slices.size() - 2], h.slices.back());
    }
    return h.slices.back();
}

}  // namespace

double count_histories(const Scenario &scenario, const Limits &limits) {
    Chain chain = make_chain(scenario);
    return total_paths(support_graph(chain, chain.steps, limits));
}

std::vector<History> enumerate_histories(const Scenario &scenario, const Limits &limits) {
    Chain chain = make_chain(scenario);
    SupportGraph graph = support_graph(chain, chain.steps, limits);
    double total = total_paths(graph);
    if (total > (double)limits.max_histories) {
        throw EnumerationOverflow(
            "history count " + std::to_string((uint64_t)total) + " exceeds the cap of " +
                std::to_string(limits.max_histories),
            scenario.slice_count(), total);
    }
    ForwardPass pass = forward_pass(chain, chain.steps, limits);

    std::vector<History> out;
    out.reserve((size_t)total);
    std::vector<Distribution> states;
    // Depth-first over the support graph; amplitude and interference product
    // are carried down the stack so each history costs O(1) extra work.
    auto visit = [&](auto &&self, size_t k, Amplitude f, double product) -> void {
        if (k == chain.steps) {
            out.push_back(make_history(chain, states, f, product));
            return;
        }
        const auto &ts = graph.adjacency[k].at(states.back());
        for (const auto &t : ts) {
            states.push_back(t.to);
            self(self, k + 1, f * t.amplitude, product * pass.interference(k + 1, t.to));
            states.pop_back();
        }
    };
    for (const auto &[d, a] : chain.initial) {
        if (a == Amplitude(0, 0)) {
            continue;
        }
        states.assign(1, d);
        visit(visit, 0, a, 1.0);
    }
    return out;
}

ConsistencyReport marginal_consistency(const Scenario &history_side, const Scenario &born_side, const Limits &limits) {
    if (history_side.second_order() != born_side.second_order()) {
        throw InvalidArgument("marginal_consistency: scenarios differ in kernel order");
    }
    auto histories = enumerate_histories(history_side, limits);
    std::map<Distribution, double> sums;
    ConsistencyReport report;
    report.history_count = histories.size();
    for (const auto &h : histories) {
        sums[outcome_key(history_side, h)] += h.probability;
        report.total_probability += h.probability;
    }
    Chain chain = make_chain(born_side);
    auto pass = forward_pass(chain, chain.steps, limits);
    const auto &born = pass.fields.back();
    for (const auto &[d, a] : born) {
        sums.try_emplace(d, 0.0);
    }
    for (const auto &[d, p] : sums) {
        auto it = born.find(d);
        double b = it == born.end() ? 0.0 : std::norm(it->second);
        report.max_discrepancy = std::max(report.max_discrepancy, std::abs(p - b));
    }
    report.outcome_count = sums.size();
    report.passed = report.max_discrepancy < kProbabilityTolerance;
    return report;
}

ConsistencyReport marginal_consistency(const Scenario &scenario, const Limits &limits) {
    return marginal_consistency(scenario, scenario, limits);
}

std::vector<History> sample_histories(const Scenario &scenario, uint64_t seed, size_t count, const Limits &limits) {
    if (!scenario.unitary) {
        throw NotUnitary("sampling needs a unitary (sink-closed) scenario");
    }
    Chain chain = make_chain(scenario);
    ForwardPass pass = forward_pass(chain, chain.steps, limits);
    double final_norm = 0;
    for (const auto &[d, a] : pass.fields.back()) {
        final_norm += std::norm(a);
    }
    if (std::abs(final_norm - 1) > kNormDriftTolerance) {
        throw NotUnitary("scenario loses norm (final norm " + std::to_string(final_norm) + "); sampling refused");
    }

    struct Edge {
        const Distribution *source;
        double weight;
        Amplitude amplitude;
    };
    // incoming[k][d]: predecessors of d at chain slice k with nonzero weight,
    // in canonical order of the predecessor.
    std::vector<std::map<Distribution, std::vector<Edge>>> incoming(chain.steps + 1);
    for (size_t k = 0; k < chain.steps; k++) {
        for (const auto &[d, a] : pass.fields[k]) {
            for (const auto &t : chain.support(k, d)) {
                double w = std::norm(a) * std::norm(t.amplitude);
                if (w > 0) {
                    incoming[k + 1][t.to].push_back({&d, w, t.amplitude});
                }
            }
        }
    }

    std::vector<const Distribution *> finals;
    std::vector<double> final_weights;
    for (const auto &[d, a] : pass.fields.back()) {
        finals.push_back(&d);
        final_weights.push_back(std::norm(a));
    }

    std::mt19937_64 rng(seed);
    auto uniform = [&]() {
        return (double)(rng() >> 11) * 0x1.0p-53;
    };
    auto draw = [&](const auto &weights) -> size_t {
        double total = 0;
        for (double w : weights) {
            total += w;
        }
        double u = uniform() * total;
        double acc = 0;
        size_t last = 0;
        for (size_t i = 0; i < weights.size(); i++) {
            if (weights[i] <= 0) {
                continue;
            }
            acc += weights[i];
            last = i;
            if (u < acc) {
                return i;
            }
        }
        return last;
    };

    std::vector<History> out;
    out.reserve(count);
    std::vector<double> weights;
    for (size_t s = 0; s < count; s++) {
        std::vector<Distribution> states(chain.steps + 1);
        states[chain.steps] = *finals[draw(final_weights)];
        Amplitude f = 1;
        double product = 1;
        for (size_t k = chain.steps; k >= 1; k--) {
            const auto &edges = incoming[k].at(states[k]);
            weights.clear();
            for (const auto &e : edges) {
                weights.push_back(e.weight);
            }
            const Edge &e = edges[draw(weights)];
            states[k - 1] = *e.source;
            f *= e.amplitude;
            product *= pass.interference(k, states[k]);
        }
        f *= initial_amplitude(chain, states[0]);
        out.push_back(make_history(chain, std::move(states), f, product));
    }
    return out;
}

std::vector<Family> coarse_grain(const std::vector<History> &histories, const std::vector<SiteBin> &bins, size_t site_count) {
    std::vector<SiteBin> sorted = bins;
    std::sort(sorted.begin(), sorted.end(), [](const SiteBin &a, const SiteBin &b) {
        return a.begin < b.begin;
    });
    size_t cursor = 0;
    for (const auto &b : sorted) {
        if (b.end <= b.begin) {
            throw InvalidArgument("invalid binning: empty bin");
        }
        if (b.begin < cursor) {
            throw InvalidArgument("invalid binning: overlapping bins");
        }
        if (b.begin > cursor) {
            throw InvalidArgument("invalid binning: sites left uncovered");
        }
        cursor = b.end;
    }
    if (cursor != site_count) {
        throw InvalidArgument("invalid binning: bins do not cover the site range");
    }

    std::map<std::string, Family> families;
    for (const auto &h : histories) {
        std::string label;
        for (const auto &d : h.slices) {
            if (d.occupancy.size() != site_count) {
                throw InvalidArgument("coarse_grain: history does not match site_count");
            }
            label += '(';
            for (size_t i = 0; i < bins.size(); i++) {
                unsigned n = 0;
                for (size_t s = bins[i].begin; s < bins[i].end; s++) {
                    n += d.occupancy[s];
                }
                if (i) {
                    label += ',';
                }
                label += std::to_string(n);
            }
            if (!d.tags.empty()) {
                label += '|';
                for (size_t t = 0; t < d.tags.size(); t++) {
                    if (t) {
                        label += ',';
                    }
                    label += std::to_string(d.tags[t]);
                }
            }
            label += ')';
        }
        auto &f = families[label];
        f.label = label;
        f.probability += h.probability;
        f.members++;
    }
    std::vector<Family> out;
    for (auto &[k, f] : families) {
        out.push_back(std::move(f));
    }
    return out;
}

double whole_history_interference_factor(const Scenario &scenario, const History &history, size_t slice, const Limits &limits) {
    Chain chain = make_chain(scenario);
    if (history.slices.size() != scenario.slice_count() + 1) {
        throw InvalidArgument("history length does not match the scenario");
    }
    if (slice < chain.slice_offset || slice > scenario.slice_count()) {
        throw InvalidArgument("slice out of range");
    }
    auto states = chain.fold(history.slices);
    size_t k_target = slice - chain.slice_offset;

    // Unpruned forward sums over all prefixes: coherent sum of F and sum of |F|^2.
    std::map<Distribution, Inflow> layer;
    for (const auto &[d, a] : chain.initial) {
        layer[d] = {a, std::norm(a)};
    }
    for (size_t k = 0; k < k_target; k++) {
        std::map<Distribution, Inflow> next;
        for (const auto &[d, in] : layer) {
            for (const auto &t : chain.support(k, d)) {
                auto &slot = next[t.to];
                slot.coherent += in.coherent * t.amplitude;
                slot.incoherent += in.incoherent * std::norm(t.amplitude);
            }
        }
        if (next.size() > limits.max_states) {
            throw EnumerationOverflow("reachable state count exceeds " + std::to_string(limits.max_states) + " at slice " + std::to_string(k + 1 + chain.slice_offset), k + 1 + chain.slice_offset, (double)next.size());
        }
        layer = std::move(next);
    }
    auto it = layer.find(states[k_target]);
    if (it == layer.end() || it->second.incoherent < kPruneThreshold) {
        return 1;
    }
    return std::norm(it->second.coherent) / it->second.incoherent;
}

double end_time_interference_factor(const Scenario &scenario, const History &history, const Limits &limits) {
    return whole_history_interference_factor(scenario, history, scenario.slice_count(), limits);
}

Scenario to_second_order(const Scenario &first_order) {
    if (first_order.second_order()) {
        throw InvalidArgument("scenario is already second order");
    }
    Scenario s = first_order;
    s.name += "/second_order";
    s.initial = {};
    for (const auto &[d0, a] : first_order.initial.terms) {
        for (const auto &t : first_order.kernel.support(0, nullptr, d0)) {
            s.initial.pair_terms.push_back({{d0, t.to}, a * t.amplitude});
        }
    }
    s.kernel.order = KernelOrder::second;
    s.kernel.step = [inner = first_order.kernel.step](size_t j, const Distribution *, const Distribution &cur) {
        return inner(j, nullptr, cur);
    };
    return s;
}

double total_variation(const std::vector<History> &samples, const std::vector<History> &exact) {
    std::map<std::vector<Distribution>, double> diff;
    for (const auto &h : exact) {
        diff[h.slices] -= h.probability;
    }
    if (!samples.empty()) {
        double w = 1.0 / (double)samples.size();
        for (const auto &h : samples) {
            diff[h.slices] += w;
        }
    }
    double tv = 0;
    for (const auto &[k, v] : diff) {
        tv += std::abs(v);
    }
    return tv / 2;
}

double history_marginal(const std::vector<History> &histories, const Label &label, size_t slice) {
    double total = 0;
    for (const auto &h : histories) {
        if (slice >= h.slices.size()) {
            throw InvalidArgument("history_marginal: slice out of range");
        }
        if (label.matches(h.slices[slice])) {
            total += h.probability;
        }
    }
    return total;
}

}  // namespace histlaw
