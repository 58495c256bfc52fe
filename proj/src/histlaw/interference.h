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

#ifndef HISTLAW_INTERFERENCE_H
#define HISTLAW_INTERFERENCE_H

#include <span>

#include "engine.h"

namespace histlaw {

/// |sum c_n|^2 / sum |c_n|^2 over the contributions into one distribution.
/// Returns 1 when the denominator vanishes (no history reaches the target).
double interference_ratio(std::span<const Amplitude> contributions);

/// Interference factor of `target` at `slice`, from the field one slice
/// earlier. Contributions are accumulated in canonical distribution order.
double interference_factor(
    const AmplitudeField &prev_field, const Kernel &kernel, size_t slice, const Distribution &target);

/// Second-order factor on the adjacent-slice pair (target_pair.first at
/// slice-1, target_pair.second at slice). Contributions are indexed by the
/// predecessor d_n of the pair, read from the pair field at slice-1.
double pair_interference_factor(
    const AmplitudeField &prev_pair_field,
    const Kernel &kernel,
    size_t slice,
    const std::pair<Distribution, Distribution> &target_pair);

/// Contributions psi(d_n) * step(d_n -> target) in canonical order of d_n.
std::vector<Amplitude> contributions_into(
    const AmplitudeField &prev_field, const Kernel &kernel, size_t slice, const Distribution &target);

}  // namespace histlaw

#endif
