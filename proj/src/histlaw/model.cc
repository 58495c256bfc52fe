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

#include "model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace histlaw {

size_t Distribution::particle_count() const {
    size_t n = 0;
    for (auto c : occupancy) {
        n += c;
    }
    return n;
}

size_t DistributionHash::operator()(const Distribution &d) const noexcept {
    // FNV-1a over both vectors with a separator.
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (auto c : d.occupancy) {
        mix(c);
    }
    mix(0xFFFFFFFFull);
    for (auto t : d.tags) {
        mix(t);
    }
    return (size_t)h;
}

Distribution single_particle(size_t site_count, size_t site, std::vector<uint16_t> tags) {
    if (site >= site_count) {
        throw InvalidArgument("site index out of range");
    }
    Distribution d{std::vector<uint16_t>(site_count, 0), std::move(tags)};
    d.occupancy[site] = 1;
    return d;
}

Distribution occupied(size_t site_count, std::initializer_list<size_t> sites, std::vector<uint16_t> tags) {
    Distribution d{std::vector<uint16_t>(site_count, 0), std::move(tags)};
    for (auto s : sites) {
        if (s >= site_count) {
            throw InvalidArgument("site index out of range");
        }
        d.occupancy[s]++;
    }
    return d;
}

Distribution join_pair(const Distribution &previous, const Distribution &current) {
    Distribution d;
    d.occupancy = previous.occupancy;
    d.occupancy.insert(d.occupancy.end(), current.occupancy.begin(), current.occupancy.end());
    d.tags = previous.tags;
    d.tags.insert(d.tags.end(), current.tags.begin(), current.tags.end());
    return d;
}

std::pair<Distribution, Distribution> split_pair(const Distribution &pair) {
    auto ho = pair.occupancy.size() / 2;
    auto ht = pair.tags.size() / 2;
    Distribution a{{pair.occupancy.begin(), pair.occupancy.begin() + ho}, {pair.tags.begin(), pair.tags.begin() + ht}};
    Distribution b{{pair.occupancy.begin() + ho, pair.occupancy.end()}, {pair.tags.begin() + ht, pair.tags.end()}};
    return {std::move(a), std::move(b)};
}

Transitions Kernel::support(size_t slice, const Distribution *previous, const Distribution &current) const {
    Transitions raw = step(slice, previous, current);
    std::stable_sort(raw.begin(), raw.end(), [](const Transition &a, const Transition &b) {
        return a.to < b.to;
    });
    Transitions out;
    out.reserve(raw.size());
    for (auto &t : raw) {
        if (!out.empty() && out.back().to == t.to) {
            out.back().amplitude += t.amplitude;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Transition &t) {
        return t.amplitude == Amplitude(0, 0);
    });
    return out;
}

double InitialCondition::norm_squared() const {
    double n = 0;
    for (const auto &[d, a] : terms) {
        n += std::norm(a);
    }
    for (const auto &[d, a] : pair_terms) {
        n += std::norm(a);
    }
    return n;
}

bool Label::matches(const Distribution &d) const {
    if (kind == Kind::site) {
        return index < d.occupancy.size() && d.occupancy[index] > 0;
    }
    return index < d.tags.size() && d.tags[index] == value;
}

std::string Scenario::render(const Distribution &d) const {
    std::string out;
    for (size_t s = 0; s < d.occupancy.size(); s++) {
        for (size_t k = 0; k < d.occupancy[s]; k++) {
            if (!out.empty()) {
                out += '+';
            }
            out += s < site_names.size() ? site_names[s] : "s" + std::to_string(s);
        }
    }
    if (out.empty()) {
        out = "vac";
    }
    if (!d.tags.empty()) {
        out += '[';
        for (size_t k = 0; k < d.tags.size(); k++) {
            if (k) {
                out += ',';
            }
            out += std::to_string(d.tags[k]);
        }
        out += ']';
    }
    return out;
}

std::string Scenario::render(const std::vector<Distribution> &slices) const {
    std::string out;
    for (size_t k = 0; k < slices.size(); k++) {
        if (k) {
            out += '>';
        }
        out += render(slices[k]);
    }
    return out;
}

namespace {

void check_shape(const Scenario &s, const Distribution &d, const char *where) {
    if (d.occupancy.size() != s.site_count || d.tags.size() != s.tag_count) {
        throw InvalidArgument(std::string(where) + ": distribution does not match the scenario's site/tag counts");
    }
}

void check_finite(Amplitude a, const char *where) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw InvalidArgument(std::string(where) + ": non-finite amplitude");
    }
}

}  // namespace

void validate_scenario(const Scenario &s) {
    if (s.grid.slice_count < 1) {
        throw InvalidArgument("slice_count must be at least 1");
    }
    if (!s.kernel.step) {
        throw InvalidArgument("scenario has no kernel");
    }
    if (!s.site_names.empty() && s.site_names.size() != s.site_count) {
        throw InvalidArgument("site_names size does not match site_count");
    }
    if (s.second_order()) {
        if (s.initial.pair_terms.empty()) {
            throw InvalidArgument("second-order scenario needs pair initial terms");
        }
        for (const auto &[p, a] : s.initial.pair_terms) {
            check_shape(s, p.first, "initial pair");
            check_shape(s, p.second, "initial pair");
            check_finite(a, "initial pair");
        }
    } else {
        if (s.initial.terms.empty()) {
            throw InvalidArgument("initial condition needs at least one term");
        }
        for (const auto &[d, a] : s.initial.terms) {
            check_shape(s, d, "initial term");
            check_finite(a, "initial term");
        }
    }
    if (s.unitary && std::abs(s.initial.norm_squared() - 1) > kNormDriftTolerance) {
        throw InvalidArgument("initial condition of a unitary scenario must be normalized");
    }
    for (const auto &[name, label] : s.labels) {
        size_t limit = label.kind == Label::Kind::site ? s.site_count : s.tag_count;
        if (label.index >= limit) {
            throw InvalidArgument("label '" + name + "' is out of range");
        }
    }
}

KernelValidation validate_kernel(
    const Kernel &kernel, const InitialCondition &probe, const SliceGrid &grid, bool declared_unitary) {
    KernelValidation report;
    std::map<Distribution, Amplitude> field;
    size_t first_step = 0;
    if (kernel.order == KernelOrder::first) {
        for (const auto &[d, a] : probe.terms) {
            field[d] += a;
        }
    } else {
        for (const auto &[p, a] : probe.pair_terms) {
            field[join_pair(p.first, p.second)] += a;
        }
        first_step = 1;
    }
    double initial_norm = 0;
    for (const auto &[d, a] : field) {
        initial_norm += std::norm(a);
    }

    for (size_t j = first_step; j < grid.slice_count; j++) {
        std::map<Distribution, Amplitude> next;
        for (const auto &[d, a] : field) {
            Transitions ts;
            if (kernel.order == KernelOrder::first) {
                ts = kernel.support(j, nullptr, d);
            } else {
                auto [prev, cur] = split_pair(d);
                ts = kernel.support(j, &prev, cur);
                for (auto &t : ts) {
                    t.to = join_pair(cur, t.to);
                }
            }
            if (ts.empty()) {
                if (declared_unitary) {
                    throw NotUnitary("kernel declared unitary has an absorbing state at slice " + std::to_string(j));
                }
                report.absorbing.emplace_back(j, d);
            }
            for (const auto &t : ts) {
                next[t.to] += a * t.amplitude;
            }
        }
        std::erase_if(next, [](const auto &kv) {
            return std::norm(kv.second) < kPruneThreshold;
        });
        double n = 0;
        for (const auto &[d, a] : next) {
            n += std::norm(a);
        }
        report.max_norm_drift = std::max(report.max_norm_drift, std::abs(n - initial_norm));
        field = std::move(next);
    }
    report.is_unitary = report.absorbing.empty() && report.max_norm_drift < kNormDriftTolerance;
    return report;
}

KernelValidation validate_kernel(const Scenario &scenario) {
    return validate_kernel(scenario.kernel, scenario.initial, scenario.grid, scenario.unitary);
}

}  // namespace histlaw
