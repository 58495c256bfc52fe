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

#include "interference.h"

#include <cmath>

namespace histlaw {

double interference_ratio(std::span<const Amplitude> contributions) {
    Amplitude coherent{};
    double incoherent = 0;
    for (auto c : contributions) {
        coherent += c;
        incoherent += std::norm(c);
    }
    if (incoherent < kPruneThreshold) {
        return 1;
    }
    return std::norm(coherent) / incoherent;
}

std::vector<Amplitude> contributions_into(
    const AmplitudeField &prev_field, const Kernel &kernel, size_t slice, const Distribution &target) {
    if (slice == 0) {
        throw InvalidArgument("interference factors start at slice 1");
    }
    if (prev_field.pairs || kernel.order != KernelOrder::first) {
        throw InvalidArgument("interference_factor needs a first-order kernel and field");
    }
    std::vector<Amplitude> out;
    for (const auto &[d, a] : prev_field.entries) {
        for (const auto &t : kernel.support(slice - 1, nullptr, d)) {
            if (t.to == target) {
                out.push_back(a * t.amplitude);
            }
        }
    }
    return out;
}

double interference_factor(
    const AmplitudeField &prev_field, const Kernel &kernel, size_t slice, const Distribution &target) {
    auto cs = contributions_into(prev_field, kernel, slice, target);
    return interference_ratio(cs);
}

double pair_interference_factor(
    const AmplitudeField &prev_pair_field,
    const Kernel &kernel,
    size_t slice,
    const std::pair<Distribution, Distribution> &target_pair) {
    if (kernel.order != KernelOrder::second || !prev_pair_field.pairs) {
        throw InvalidArgument("pair_interference_factor needs a second-order kernel and pair field");
    }
    if (slice < 2) {
        throw InvalidArgument("pair interference factors start at slice 2");
    }
    const auto &[middle, last] = target_pair;
    std::vector<Amplitude> cs;
    for (const auto &[pair, a] : prev_pair_field.entries) {
        auto [pred, cur] = split_pair(pair);
        if (cur != middle) {
            continue;
        }
        for (const auto &t : kernel.support(slice - 1, &pred, cur)) {
            if (t.to == last) {
                cs.push_back(a * t.amplitude);
            }
        }
    }
    return interference_ratio(cs);
}

}  // namespace histlaw
