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

#include "engine.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace histlaw {

Limits Limits::from_environment() {
    Limits limits;
    if (const char *env = std::getenv("HISTLAW_MAX_STATES"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) {
            throw InvalidArgument("HISTLAW_MAX_STATES must be a positive integer");
        }
        limits.max_states = (size_t)v;
        limits.max_histories = (size_t)v;
    }
    return limits;
}

Amplitude AmplitudeField::at(const Distribution &d) const {
    auto it = entries.find(d);
    return it == entries.end() ? Amplitude{} : it->second;
}

double AmplitudeField::norm_squared() const {
    double n = 0;
    for (const auto &[d, a] : entries) {
        n += std::norm(a);
    }
    return n;
}

Transitions Chain::support(size_t chain_step, const Distribution &state) const {
    if (!pairs) {
        return kernel->support(chain_step, nullptr, state);
    }
    auto [prev, cur] = split_pair(state);
    Transitions ts = kernel->support(chain_step + slice_offset, &prev, cur);
    for (auto &t : ts) {
        t.to = join_pair(cur, t.to);
    }
    return ts;
}

std::vector<Distribution> Chain::unfold(const std::vector<Distribution> &states) const {
    if (!pairs) {
        return states;
    }
    std::vector<Distribution> out;
    out.reserve(states.size() + 1);
    for (size_t k = 0; k < states.size(); k++) {
        auto [prev, cur] = split_pair(states[k]);
        if (k == 0) {
            out.push_back(std::move(prev));
        }
        out.push_back(std::move(cur));
    }
    return out;
}

std::vector<Distribution> Chain::fold(const std::vector<Distribution> &slices) const {
    if (!pairs) {
        return slices;
    }
    std::vector<Distribution> out;
    for (size_t k = 1; k < slices.size(); k++) {
        out.push_back(join_pair(slices[k - 1], slices[k]));
    }
    return out;
}

Chain make_chain(const Scenario &scenario) {
    Chain chain;
    chain.kernel = &scenario.kernel;
    std::map<Distribution, Amplitude> merged;
    if (scenario.second_order()) {
        if (scenario.slice_count() < 1) {
            throw InvalidArgument("second-order scenario needs at least one slice");
        }
        chain.pairs = true;
        chain.slice_offset = 1;
        chain.steps = scenario.slice_count() - 1;
        for (const auto &[p, a] : scenario.initial.pair_terms) {
            merged[join_pair(p.first, p.second)] += a;
        }
    } else {
        chain.steps = scenario.slice_count();
        for (const auto &[d, a] : scenario.initial.terms) {
            merged[d] += a;
        }
    }
    chain.initial.assign(merged.begin(), merged.end());
    return chain;
}

double ForwardPass::interference(size_t k, const Distribution &state) const {
    if (k == 0 || k >= inflows.size()) {
        return 1;
    }
    auto it = inflows[k].find(state);
    if (it == inflows[k].end() || it->second.incoherent < kPruneThreshold) {
        return 1;
    }
    return std::norm(it->second.coherent) / it->second.incoherent;
}

ForwardPass forward_pass(const Chain &chain, size_t upto_step, const Limits &limits) {
    if (upto_step > chain.steps) {
        throw InvalidArgument("upto_slice exceeds the scenario's slice count");
    }
    ForwardPass pass;
    pass.fields.emplace_back(chain.initial.begin(), chain.initial.end());
    pass.inflows.emplace_back();
    for (size_t k = 0; k < upto_step; k++) {
        std::map<Distribution, Inflow> inflow;
        for (const auto &[d, a] : pass.fields[k]) {
            for (const auto &t : chain.support(k, d)) {
                Amplitude c = a * t.amplitude;
                auto &slot = inflow[t.to];
                slot.coherent += c;
                slot.incoherent += std::norm(c);
            }
            if (inflow.size() > limits.max_states) {
                size_t slice = k + 1 + chain.slice_offset;
                throw EnumerationOverflow(
                    "reachable state count exceeds " + std::to_string(limits.max_states) + " at slice " +
                        std::to_string(slice),
                    slice, (double)inflow.size());
            }
        }
        std::map<Distribution, Amplitude> field;
        for (const auto &[d, in] : inflow) {
            if (std::norm(in.coherent) >= kPruneThreshold) {
                field.emplace_hint(field.end(), d, in.coherent);
            }
        }
        pass.fields.push_back(std::move(field));
        pass.inflows.push_back(std::move(inflow));
    }
    return pass;
}

std::vector<AmplitudeField> propagate(const Scenario &scenario, size_t upto_slice, const Limits &limits) {
    Chain chain = make_chain(scenario);
    if (upto_slice > scenario.slice_count()) {
        throw InvalidArgument("upto_slice exceeds the scenario's slice count");
    }
    if (upto_slice < chain.slice_offset) {
        throw InvalidArgument("second-order fields start at slice 1");
    }
    ForwardPass pass = forward_pass(chain, upto_slice - chain.slice_offset, limits);
    std::vector<AmplitudeField> out;
    for (size_t k = 0; k < pass.fields.size(); k++) {
        out.push_back({k + chain.slice_offset, chain.pairs, std::move(pass.fields[k])});
    }
    return out;
}

Amplitude history_amplitude(const Scenario &scenario, const std::vector<Distribution> &history) {
    if (history.size() != scenario.slice_count() + 1) {
        return {};
    }
    Chain chain = make_chain(scenario);
    auto states = chain.fold(history);
    auto init = std::lower_bound(chain.initial.begin(), chain.initial.end(), states[0], [](const auto &kv, const auto &d) {
        return kv.first < d;
    });
    if (init == chain.initial.end() || init->first != states[0]) {
        return {};
    }
    Amplitude f = init->second;
    for (size_t k = 0; k + 1 < states.size(); k++) {
        auto ts = chain.support(k, states[k]);
        auto it = std::find_if(ts.begin(), ts.end(), [&](const Transition &t) {
            return t.to == states[k + 1];
        });
        if (it == ts.end()) {
            return {};
        }
        f *= it->amplitude;
    }
    return f;
}

namespace {

std::map<Distribution, Amplitude> final_field(const Scenario &scenario, const Limits &limits) {
    Chain chain = make_chain(scenario);
    auto pass = forward_pass(chain, chain.steps, limits);
    return std::move(pass.fields.back());
}

}  // namespace

double born_probability(const Scenario &scenario, const Distribution &final, const Limits &limits) {
    auto field = final_field(scenario, limits);
    if (!scenario.second_order()) {
        auto it = field.find(final);
        return it == field.end() ? 0.0 : std::norm(it->second);
    }
    double p = 0;
    for (const auto &[pair, a] : field) {
        if (split_pair(pair).second == final) {
            p += std::norm(a);
        }
    }
    return p;
}

double pair_born_probability(
    const Scenario &scenario, const Distribution &previous, const Distribution &final, const Limits &limits) {
    if (!scenario.second_order()) {
        throw InvalidArgument("pair_born_probability needs a second-order scenario");
    }
    auto field = final_field(scenario, limits);
    auto it = field.find(join_pair(previous, final));
    return it == field.end() ? 0.0 : std::norm(it->second);
}

std::map<std::string, double> final_marginals(const Scenario &scenario, const Limits &limits) {
    auto field = final_field(scenario, limits);
    std::map<std::string, double> out;
    for (const auto &[name, label] : scenario.labels) {
        double p = 0;
        for (const auto &[d, a] : field) {
            const Distribution &cur = scenario.second_order() ? split_pair(d).second : d;
            if (label.matches(cur)) {
                p += std::norm(a);
            }
        }
        out[name] = p;
    }
    return out;
}

}  // namespace histlaw
