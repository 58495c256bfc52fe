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

#ifndef HISTLAW_MODEL_H
#define HISTLAW_MODEL_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace histlaw {

using Amplitude = std::complex<double>;

/// Default comparison tolerances.
inline constexpr double kProbabilityTolerance = 1e-10;
inline constexpr double kNormDriftTolerance = 1e-9;
/// Amplitudes with squared magnitude below this are dropped from fields.
inline constexpr double kPruneThreshold = 1e-30;

/// Invalid input to a builder, operation or parser.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A named builder does not exist.
struct UnknownScenario : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// A builder was given a parameter it does not declare.
struct UnknownParameter : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// The reachable state set or history count exceeded the configured cap.
struct EnumerationOverflow : std::runtime_error {
    EnumerationOverflow(const std::string &what, size_t slice, double estimate)
        : std::runtime_error(what), slice(slice), estimate(estimate) {
    }
    size_t slice;
    double estimate;
};

/// A scenario declared unitary is not, or a unitary-only operation got a lossy scenario.
struct NotUnitary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A full configuration of the universe at one time slice: particle counts per
/// site plus discrete environment tags (counters, blockers, atomic memory,
/// polarization labels). Two distributions can only interfere when equal.
struct Distribution {
    std::vector<uint16_t> occupancy;
    std::vector<uint16_t> tags;

    auto operator<=>(const Distribution &) const = default;
    bool operator==(const Distribution &) const = default;

    size_t particle_count() const;
};

struct DistributionHash {
    size_t operator()(const Distribution &d) const noexcept;
};

/// One particle at `site` on a lattice of `site_count` sites.
Distribution single_particle(size_t site_count, size_t site, std::vector<uint16_t> tags = {});
/// Occupancy built from a list of occupied sites (repeats allowed).
Distribution occupied(size_t site_count, std::initializer_list<size_t> sites, std::vector<uint16_t> tags = {});

/// Second-order states are carried as the concatenation (previous, current).
Distribution join_pair(const Distribution &previous, const Distribution &current);
std::pair<Distribution, Distribution> split_pair(const Distribution &pair);

struct Transition {
    Distribution to;
    Amplitude amplitude;
};
using Transitions = std::vector<Transition>;

enum class KernelOrder { first, second };

/// One-step transition amplitudes. `previous` is null for first-order kernels
/// and points at the distribution one slice earlier for second-order kernels.
/// `slice` is the index of the source slice (the step goes slice -> slice+1).
using StepFunction =
    std::function<Transitions(size_t slice, const Distribution *previous, const Distribution &current)>;

struct Kernel {
    KernelOrder order = KernelOrder::first;
    StepFunction step;

    /// Canonical support: sorted by target, duplicates merged, exact zeros dropped.
    Transitions support(size_t slice, const Distribution *previous, const Distribution &current) const;
};

struct SliceGrid {
    size_t slice_count = 1;  // T; slices are numbered 0..T
    double dt = 1.0;         // seconds, bookkeeping only
};

struct InitialCondition {
    /// First-order: amplitudes of distributions at slice 0.
    std::vector<std::pair<Distribution, Amplitude>> terms;
    /// Second-order: amplitudes of (slice 0, slice 1) pairs.
    std::vector<std::pair<std::pair<Distribution, Distribution>, Amplitude>> pair_terms;

    double norm_squared() const;
};

struct History {
    std::vector<Distribution> slices;
    double probability = 0;
    Amplitude feynman_amplitude{};
    double interference_product = 1;
};

/// A labeled observable on final distributions: a site is occupied, or a tag
/// holds a given value.
struct Label {
    enum class Kind { site, tag } kind = Kind::site;
    size_t index = 0;
    uint16_t value = 1;

    bool matches(const Distribution &d) const;
};

struct Scenario {
    std::string name;
    /// Builder parameters in declaration order, as given (for result echo).
    std::vector<std::pair<std::string, std::string>> params;
    SliceGrid grid;
    size_t site_count = 0;
    size_t tag_count = 0;
    std::vector<std::string> site_names;
    std::vector<std::string> tag_names;
    Kernel kernel;
    InitialCondition initial;
    std::map<std::string, Label> labels;
    /// Declared norm-preserving (absorption routed into explicit sinks).
    bool unitary = true;

    size_t slice_count() const {
        return grid.slice_count;
    }
    bool second_order() const {
        return kernel.order == KernelOrder::second;
    }
    std::string render(const Distribution &d) const;
    std::string render(const std::vector<Distribution> &slices) const;
};

/// Throws InvalidArgument on inconsistent sizes, empty initial conditions,
/// non-normalized initial conditions of unitary scenarios, non-finite
/// amplitudes or labels out of range.
void validate_scenario(const Scenario &scenario);

struct KernelValidation {
    bool is_unitary = false;
    double max_norm_drift = 0;
    /// (slice, distribution) pairs with empty support that carried amplitude.
    std::vector<std::pair<size_t, Distribution>> absorbing;
};

/// Propagates `probe` through every slice of `grid` and reports the norm drift.
/// Throws NotUnitary if `declared_unitary` and an absorbing state is reachable.
KernelValidation validate_kernel(
    const Kernel &kernel, const InitialCondition &probe, const SliceGrid &grid, bool declared_unitary);
KernelValidation validate_kernel(const Scenario &scenario);

}  // namespace histlaw

#endif
