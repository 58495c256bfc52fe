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

#include "scenarios.h"

#include <cmath>
#include <numbers>
#include <random>

#include "engine.h"

namespace histlaw {

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);
const Amplitude kI{0, 1};

Amplitude phase(double theta) {
    return std::polar(1.0, theta);
}

/// Explicit per-step transition tables. States missing from a step's table
/// rest in place (identity step) unless `rest` says otherwise; a state listed
/// with no transitions is absorbing.
class TableKernel {
   public:
    using RestFunction = std::function<Transitions(size_t, const Distribution &)>;

    explicit TableKernel(size_t steps) : table_(steps) {
    }

    void add(size_t step, const Distribution &from, const Distribution &to, Amplitude a) {
        table_.at(step)[from].push_back({to, a});
    }

    Kernel freeze(RestFunction rest = {}) && {
        auto table = std::make_shared<const std::vector<std::map<Distribution, Transitions>>>(std::move(table_));
        Kernel k;
        k.step = [table, rest = std::move(rest)](size_t j, const Distribution *, const Distribution &d) -> Transitions {
            if (j < table->size()) {
                auto it = (*table)[j].find(d);
                if (it != (*table)[j].end()) {
                    return it->second;
                }
            }
            if (rest) {
                return rest(j, d);
            }
            return {{d, 1}};
        };
        return k;
    }

   private:
    std::vector<std::map<Distribution, Transitions>> table_;
};

void require_slices(size_t slices, size_t minimum, const char *builder) {
    if (slices < minimum) {
        throw InvalidArgument(std::string(builder) + ": slices must be at least " + std::to_string(minimum));
    }
}

Label site_label(size_t index) {
    return {Label::Kind::site, index, 1};
}

Label tag_label(size_t index, uint16_t value) {
    return {Label::Kind::tag, index, value};
}

std::string screen_name(size_t k) {
    return "X" + std::to_string(k);
}

/// Screen phases: route A lands flat, route B with 2 pi k / N - pi/2, so two
/// coherent routes from a balanced splitter (factor i on B) produce the fringe
/// (1 + cos(2 pi k / N)) / N and the two route columns stay orthogonal.
double screen_phase_b(size_t k) {
    return 2 * std::numbers::pi * (double)k / (double)kScreenSites - std::numbers::pi / 2;
}

/// Gram-Schmidt on complex Gaussian columns; column c is the image of site c.
std::vector<std::vector<Amplitude>> random_unitary(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    std::vector<std::vector<Amplitude>> cols(n, std::vector<Amplitude>(n));
    for (size_t c = 0; c < n; c++) {
        for (size_t r = 0; r < n; r++) {
            cols[c][r] = {g(rng), g(rng)};
        }
        for (size_t p = 0; p < c; p++) {
            Amplitude dot{};
            for (size_t r = 0; r < n; r++) {
                dot += std::conj(cols[p][r]) * cols[c][r];
            }
            for (size_t r = 0; r < n; r++) {
                cols[c][r] -= dot * cols[p][r];
            }
        }
        double norm = 0;
        for (auto a : cols[c]) {
            norm += std::norm(a);
        }
        norm = std::sqrt(norm);
        for (auto &a : cols[c]) {
            a /= norm;
        }
    }
    return cols;
}

std::vector<Amplitude> random_state(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0, 1);
    std::vector<Amplitude> v(n);
    double norm = 0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}

size_t site_of(const Distribution &d) {
    for (size_t s = 0; s < d.occupancy.size(); s++) {
        if (d.occupancy[s]) {
            return s;
        }
    }
    throw InvalidArgument("empty distribution in single-particle kernel");
}

}  // namespace

Scenario build_mach_zehnder(double phase_diff, bool extra_port, size_t slices) {
    require_slices(slices, 2, "mach_zehnder");
    enum { S, A, B, X, Y, Z };
    size_t n = extra_port ? 6 : 5;
    auto at = [n](size_t s) {
        return single_particle(n, s);
    };
    double split = extra_port ? 0.5 : kInvSqrt2;
    TableKernel t(2);
    t.add(0, at(S), at(A), split);
    t.add(0, at(S), at(B), kI * split);
    if (extra_port) {
        t.add(0, at(S), at(Z), kInvSqrt2);
    }
    Amplitude b = phase(phase_diff);
    t.add(1, at(A), at(X), kI * kInvSqrt2);
    t.add(1, at(A), at(Y), kInvSqrt2);
    t.add(1, at(B), at(X), b * kInvSqrt2);
    t.add(1, at(B), at(Y), b * kI * kInvSqrt2);

    Scenario s;
    s.name = "mach_zehnder";
    s.grid.slice_count = slices;
    s.site_count = n;
    s.site_names = {"S", "A", "B", "X", "Y"};
    if (extra_port) {
        s.site_names.push_back("Z");
        s.labels["screen:Z"] = site_label(Z);
    }
    s.kernel = std::move(t).freeze();
    s.initial.terms = {{at(S), 1}};
    s.labels["screen:X"] = site_label(X);
    s.labels["screen:Y"] = site_label(Y);
    s.labels["route:A"] = site_label(A);
    s.labels["route:B"] = site_label(B);
    validate_scenario(s);
    return s;
}

Scenario build_three_history(size_t slices) {
    require_slices(slices, 3, "three_history");
    enum { S, A, B, C, X, W, C2, V, Y, Z, N };
    auto at = [](size_t s) {
        return single_particle(N, s);
    };
    const double third = 1 / std::sqrt(3.0);
    TableKernel t(3);
    t.add(0, at(S), at(A), third);
    t.add(0, at(S), at(B), third);
    t.add(0, at(S), at(C), third);
    t.add(1, at(A), at(X), kInvSqrt2);
    t.add(1, at(A), at(W), kInvSqrt2);
    t.add(1, at(B), at(X), -kInvSqrt2);
    t.add(1, at(B), at(W), kInvSqrt2);
    t.add(1, at(C), at(C2), kInvSqrt2);
    t.add(1, at(C), at(V), kInvSqrt2);
    t.add(2, at(X), at(Y), kInvSqrt2);
    t.add(2, at(X), at(Z), kInvSqrt2);
    t.add(2, at(C2), at(Y), kInvSqrt2);
    t.add(2, at(C2), at(Z), -kInvSqrt2);

    Scenario s;
    s.name = "three_history";
    s.grid.slice_count = slices;
    s.site_count = N;
    s.site_names = {"S", "A", "B", "C", "X", "W", "C2", "V", "Y", "Z"};
    s.kernel = std::move(t).freeze();
    s.initial.terms = {{at(S), 1}};
    for (size_t k : {X, Y, Z, W, V}) {
        s.labels["screen:" + s.site_names[k]] = site_label(k);
    }
    s.labels["route:A"] = site_label(A);
    s.labels["route:B"] = site_label(B);
    s.labels["route:C"] = site_label(C);
    validate_scenario(s);
    return s;
}

Scenario build_dielectric(int quarter_waves, const std::vector<bool> &blocker_schedule, bool observer, size_t slices) {
    if (quarter_waves < 1 || quarter_waves % 2 == 0) {
        throw InvalidArgument("dielectric: quarter_waves must be an odd positive integer (2n+1)");
    }
    require_slices(slices, 5, "dielectric");
    if (blocker_schedule.size() != slices) {
        throw InvalidArgument(
            "dielectric: blocker schedule has " + std::to_string(blocker_schedule.size()) + " entries, expected " +
            std::to_string(slices));
    }
    enum { Src, In, Wait, Bot, Wait2, Up, Tr1, Above, R, Down2, SinkIn, SinkUp, Tr2, N };
    auto at = [](size_t s, uint16_t record = 0) {
        return single_particle(N, s, {record});
    };
    // One pass through the sheet: phase pi/2 per quarter wave.
    Amplitude leg = phase(quarter_waves * std::numbers::pi / 2);
    // Top surface: from above reflect -a / enter b; from inside exit b / reflect a.
    const double a = 1 / std::sqrt(3.0);
    const double b = std::sqrt(2.0 / 3.0);
    uint16_t rec = observer ? 1 : 0;

    TableKernel t(5);
    // Early emission enters the sheet (through the top layer), late emission waits.
    if (blocker_schedule[0]) {
        t.add(0, at(Src), at(SinkIn), kInvSqrt2);
    } else {
        t.add(0, at(Src), at(In, rec), kInvSqrt2);
    }
    t.add(0, at(Src), at(Wait), kInvSqrt2);
    t.add(1, at(In, rec), at(Bot, rec), leg);
    t.add(1, at(Wait), at(Wait2), 1);
    t.add(2, at(Bot, rec), at(Up, rec), -kInvSqrt2);
    t.add(2, at(Bot, rec), at(Tr1, rec), kInvSqrt2);
    t.add(2, at(Wait2), at(Above), 1);
    if (blocker_schedule[kDielectricReturnStep]) {
        t.add(3, at(Up, rec), at(SinkUp, rec), 1);
    } else {
        t.add(3, at(Up, rec), at(R, rec), b * leg);
        t.add(3, at(Up, rec), at(Down2, rec), a * leg);
    }
    t.add(3, at(Above), at(R), -a);
    t.add(3, at(Above), at(Down2), b);
    t.add(4, at(Down2, rec), at(Tr2, rec), 1);
    if (observer) {
        t.add(4, at(Down2), at(Tr2), 1);
    }

    Scenario s;
    s.name = "dielectric";
    s.grid.slice_count = slices;
    s.site_count = N;
    s.tag_count = 1;
    s.site_names = {"Src", "In", "Wait", "Bot", "Wait2", "Up", "Tr1", "Above", "R", "Down2", "SinkIn", "SinkUp", "Tr2"};
    s.tag_names = {"record"};
    s.kernel = std::move(t).freeze();
    s.initial.terms = {{at(Src), 1}};
    s.labels["reflected"] = site_label(R);
    s.labels["bottom_reflection"] = site_label(Up);
    s.labels["sink:blocker"] = site_label(SinkUp);
    s.labels["sink:entry"] = site_label(SinkIn);
    s.labels["transmitted:first"] = site_label(Tr1);
    s.labels["transmitted:second"] = site_label(Tr2);
    s.labels["record"] = tag_label(0, 1);
    validate_scenario(s);
    return s;
}

Scenario build_which_way(bool idler_blocked, size_t slices) {
    require_slices(slices, 3, "which_way");
    enum { S, A, B, PA, PB, IA, IB, Screen0 };
    const size_t n = Screen0 + kScreenSites;
    enum { counter = 0, blocker = 1 };
    auto tags = [](bool counter_fired, bool blocked) {
        return std::vector<uint16_t>{(uint16_t)counter_fired, (uint16_t)blocked};
    };
    TableKernel t(3);
    t.add(0, single_particle(n, S, tags(0, 0)), single_particle(n, A, tags(0, 0)), kInvSqrt2);
    t.add(0, single_particle(n, S, tags(0, 0)), single_particle(n, B, tags(0, 0)), kI * kInvSqrt2);
    // Down conversion: primary plus idler.
    t.add(1, single_particle(n, A, tags(0, 0)), occupied(n, {PA, IA}, tags(0, 0)), 1);
    t.add(1, single_particle(n, B, tags(0, 0)), occupied(n, {PB, IB}, tags(0, 0)), 1);
    const double w = 1 / std::sqrt((double)kScreenSites);
    for (size_t k = 0; k < kScreenSites; k++) {
        auto from_a = idler_blocked ? tags(0, 1) : tags(1, 0);
        t.add(2, occupied(n, {PA, IA}, tags(0, 0)), single_particle(n, Screen0 + k, from_a), w);
        t.add(2, occupied(n, {PB, IB}, tags(0, 0)), single_particle(n, Screen0 + k, tags(1, 0)), w * phase(screen_phase_b(k)));
    }

    Scenario s;
    s.name = "which_way";
    s.grid.slice_count = slices;
    s.site_count = n;
    s.tag_count = 2;
    s.site_names = {"S", "A", "B", "PA", "PB", "IA", "IB"};
    for (size_t k = 0; k < kScreenSites; k++) {
        s.site_names.push_back(screen_name(k));
        s.labels["screen:" + std::to_string(k)] = site_label(Screen0 + k);
    }
    s.tag_names = {"idler-counter", "idler-blocker"};
    s.kernel = std::move(t).freeze();
    s.initial.terms = {{single_particle(n, S, tags(0, 0)), 1}};
    s.labels["route:A"] = site_label(A);
    s.labels["route:B"] = site_label(B);
    s.labels["idler-counter"] = tag_label(counter, 1);
    s.labels["sink:blocker"] = tag_label(blocker, 1);
    validate_scenario(s);
    return s;
}

Scenario build_two_photon(double relative_phase, bool distinguishable, size_t slices) {
    require_slices(slices, 2, "two_photon");
    enum { S1, S2, M1X, M1Y, M2X, M2Y, X, Y, Xp, Yp, N };
    std::vector<uint16_t> none = distinguishable ? std::vector<uint16_t>{0} : std::vector<uint16_t>{};
    auto tagged = [&](uint16_t v) {
        return distinguishable ? std::vector<uint16_t>{v} : std::vector<uint16_t>{};
    };
    TableKernel t(2);
    auto src = occupied(N, {S1, S2}, none);
    for (size_t m1 : {M1X, M1Y}) {
        for (size_t m2 : {M2X, M2Y}) {
            t.add(0, src, occupied(N, {m1, m2}, none), 0.5);
        }
    }
    auto alpha = occupied(N, {M1X, M2Y}, none);  // photon 1 -> X, photon 2 -> Y
    auto beta = occupied(N, {M1Y, M2X}, none);   // photon 1 -> Y, photon 2 -> X
    Amplitude rel = phase(relative_phase);
    if (distinguishable) {
        t.add(1, alpha, occupied(N, {X, Y}, tagged(1)), 1);
        t.add(1, beta, occupied(N, {X, Y}, tagged(2)), rel);
    } else {
        t.add(1, alpha, occupied(N, {X, Y}), kInvSqrt2);
        t.add(1, alpha, occupied(N, {Xp, Yp}), kInvSqrt2);
        t.add(1, beta, occupied(N, {X, Y}), rel * kInvSqrt2);
        t.add(1, beta, occupied(N, {Xp, Yp}), -rel * kInvSqrt2);
    }
    t.add(1, occupied(N, {M1X, M2X}, none), occupied(N, {X, X}, none), 1);
    t.add(1, occupied(N, {M1Y, M2Y}, none), occupied(N, {Y, Y}, none), 1);

    Scenario s;
    s.name = "two_photon";
    s.grid.slice_count = slices;
    s.site_count = N;
    s.tag_count = distinguishable ? 1 : 0;
    s.site_names = {"S1", "S2", "M1X", "M1Y", "M2X", "M2Y", "X", "Y", "X'", "Y'"};
    if (distinguishable) {
        s.tag_names = {"photon-at-X"};
    }
    s.kernel = std::move(t).freeze();
    s.initial.terms = {{src, 1}};
    s.labels["screen:X"] = site_label(X);
    s.labels["screen:Y"] = site_label(Y);
    s.labels["screen:X'"] = site_label(Xp);
    s.labels["screen:Y'"] = site_label(Yp);
    validate_scenario(s);
    return s;
}

Scenario build_epr(size_t slices) {
    require_slices(slices, 2, "epr");
    enum { L, R, Lf, Rf, PassL, PassR, AbsL, AbsR, N };
    Kernel k;
    k.step = [](size_t j, const Distribution *, const Distribution &d) -> Transitions {
        if (j == 0 && d.occupancy[L] && d.occupancy[R]) {
            return {{occupied(N, {Lf, Rf}, d.tags), 1}};
        }
        if (j == 1 && d.occupancy[Lf] && d.occupancy[Rf]) {
            // Polaroids along x: x passes, y is absorbed.
            size_t left = d.tags[0] == 0 ? PassL : AbsL;
            size_t right = d.tags[1] == 0 ? PassR : AbsR;
            return {{occupied(N, {left, right}, d.tags), 1}};
        }
        return {{d, 1}};
    };
    Scenario s;
    s.name = "epr";
    s.grid.slice_count = slices;
    s.site_count = N;
    s.tag_count = 2;
    s.site_names = {"L", "R", "Lf", "Rf", "PassL", "PassR", "AbsL", "AbsR"};
    s.tag_names = {"polarization-1", "polarization-2"};
    s.kernel = std::move(k);
    s.initial.terms = {
        {occupied(N, {L, R}, {0, 0}), kInvSqrt2},
        {occupied(N, {L, R}, {1, 1}), kInvSqrt2},
    };
    s.labels["pass:1"] = site_label(PassL);
    s.labels["pass:2"] = site_label(PassR);
    s.labels["sink:1"] = site_label(AbsL);
    s.labels["sink:2"] = site_label(AbsR);
    validate_scenario(s);
    return s;
}

Scenario build_delayed_interference(size_t delta, bool atom_memory, double atom_phase, size_t slices) {
    const size_t minimum = delta + 3;
    if (slices == 0) {
        slices = minimum;
    }
    require_slices(slices, minimum, "delayed_interference");
    // Sites: Src, A, B0..B_delta, Screen0..7, Other0..7.
    const size_t src = 0, route_a = 1, b0 = 2;
    const size_t screen0 = b0 + delta + 1;
    const size_t other0 = screen0 + kScreenSites;
    const size_t n = other0 + kScreenSites;
    auto at = [n](size_t s, uint16_t stamp = 0) {
        return single_particle(n, s, {stamp});
    };
    const double w = 1 / std::sqrt((double)kScreenSites);
    const size_t arrival_a = 2;              // slice at which route A reaches the screen
    const size_t arrival_b = delta + 2;      // slice at which route B reaches the screen
    auto stamp_for = [&](size_t slice) -> uint16_t {
        return atom_memory ? 0 : (uint16_t)slice;
    };

    TableKernel t(delta + 2);
    t.add(0, at(src), at(route_a), kInvSqrt2);
    t.add(0, at(src), at(b0), kI * kInvSqrt2);
    for (size_t k = 0; k < kScreenSites; k++) {
        t.add(1, at(route_a), at(screen0 + k, stamp_for(arrival_a)), w);
    }
    for (size_t c = 1; c <= delta; c++) {
        t.add(c, at(b0 + c - 1), at(b0 + c), 1);
    }
    const size_t b_last = b0 + delta, b_step = delta + 1;
    Amplitude excited_phase = phase(atom_phase);
    for (size_t k = 0; k < kScreenSites; k++) {
        Amplitude pb = w * phase(screen_phase_b(k));
        if (atom_memory && delta > 0) {
            // The late photon meets the atom already excited by route A.
            auto ex = at(screen0 + k);
            auto out = at(other0 + k, (uint16_t)arrival_b);
            t.add(b_step, at(b_last), ex, pb * kInvSqrt2);
            t.add(b_step, at(b_last), out, pb * kInvSqrt2);
            t.add(b_step, ex, ex, excited_phase * kInvSqrt2);
            t.add(b_step, ex, out, -excited_phase * kInvSqrt2);
        } else {
            t.add(b_step, at(b_last), at(screen0 + k, stamp_for(arrival_b)), pb);
        }
    }
    TableKernel::RestFunction rest = [=](size_t, const Distribution &d) -> Transitions {
        if (atom_memory) {
            size_t s = site_of(d);
            if (s >= screen0 && s < other0) {
                return {{d, excited_phase}};
            }
        }
        return {{d, 1}};
    };

    Scenario s;
    s.name = "delayed_interference";
    s.grid.slice_count = slices;
    s.site_count = n;
    s.tag_count = 1;
    s.site_names = {"Src", "A"};
    for (size_t c = 0; c <= delta; c++) {
        s.site_names.push_back("B" + std::to_string(c));
    }
    for (size_t k = 0; k < kScreenSites; k++) {
        s.site_names.push_back(screen_name(k));
        s.labels["screen:" + std::to_string(k)] = site_label(screen0 + k);
    }
    for (size_t k = 0; k < kScreenSites; k++) {
        s.site_names.push_back("O" + std::to_string(k));
    }
    s.tag_names = {"arrival-stamp"};
    s.kernel = std::move(t).freeze(rest);
    s.initial.terms = {{at(src), 1}};
    s.labels["route:A"] = site_label(route_a);
    s.labels["route:B"] = site_label(b0);
    validate_scenario(s);
    return s;
}

Scenario build_identity(size_t sites, size_t slices) {
    if (sites < 1) {
        throw InvalidArgument("identity: sites must be at least 1");
    }
    require_slices(slices, 1, "identity");
    Scenario s;
    s.name = "identity";
    s.grid.slice_count = slices;
    s.site_count = sites;
    s.kernel.step = [](size_t, const Distribution *, const Distribution &d) -> Transitions {
        return {{d, 1}};
    };
    s.initial.terms = {{single_particle(sites, 0), 1}};
    s.labels["site:0"] = site_label(0);
    validate_scenario(s);
    return s;
}

Scenario build_random_unitary(size_t sites, size_t slices, uint64_t seed, bool terminal_rest) {
    if (sites < 1 || sites > 64) {
        throw InvalidArgument("random_unitary: sites must be in [1, 64]");
    }
    require_slices(slices, terminal_rest ? 2 : 1, "random_unitary");
    std::mt19937_64 rng(seed);
    size_t mixing = terminal_rest ? slices - 1 : slices;
    auto mats = std::make_shared<std::vector<std::vector<std::vector<Amplitude>>>>();
    for (size_t j = 0; j < mixing; j++) {
        mats->push_back(random_unitary(sites, rng));
    }
    auto init = random_state(sites, rng);

    Scenario s;
    s.name = "random_unitary";
    s.grid.slice_count = slices;
    s.site_count = sites;
    for (size_t k = 0; k < sites; k++) {
        s.site_names.push_back("s" + std::to_string(k));
        s.labels["site:" + std::to_string(k)] = site_label(k);
        s.initial.terms.push_back({single_particle(sites, k), init[k]});
    }
    std::shared_ptr<const std::vector<std::vector<std::vector<Amplitude>>>> frozen = mats;
    s.kernel.step = [frozen, sites](size_t j, const Distribution *, const Distribution &d) -> Transitions {
        if (j >= frozen->size()) {
            return {{d, 1}};
        }
        const auto &col = (*frozen)[j][site_of(d)];
        Transitions out;
        for (size_t r = 0; r < sites; r++) {
            out.push_back({single_particle(sites, r), col[r]});
        }
        return out;
    };
    validate_scenario(s);
    return s;
}

Scenario build_random_second_order(size_t sites, size_t slices, uint64_t seed) {
    if (sites < 1 || sites > 16) {
        throw InvalidArgument("random_second_order: sites must be in [1, 16]");
    }
    require_slices(slices, 1, "random_second_order");
    std::mt19937_64 rng(seed);
    // mats[j][prev] is the step matrix from slice j, chosen by the previous site.
    using Matrix = std::vector<std::vector<Amplitude>>;
    auto mats = std::make_shared<std::vector<std::vector<Matrix>>>(slices);
    for (size_t j = 1; j < slices; j++) {
        for (size_t p = 0; p < sites; p++) {
            (*mats)[j].push_back(random_unitary(sites, rng));
        }
    }
    auto init = random_state(sites * sites, rng);

    Scenario s;
    s.name = "random_second_order";
    s.grid.slice_count = slices;
    s.site_count = sites;
    s.unitary = false;
    for (size_t k = 0; k < sites; k++) {
        s.site_names.push_back("s" + std::to_string(k));
        s.labels["site:" + std::to_string(k)] = site_label(k);
    }
    for (size_t p = 0; p < sites; p++) {
        for (size_t c = 0; c < sites; c++) {
            s.initial.pair_terms.push_back({{single_particle(sites, p), single_particle(sites, c)}, init[p * sites + c]});
        }
    }
    std::shared_ptr<const std::vector<std::vector<Matrix>>> frozen = mats;
    s.kernel.order = KernelOrder::second;
    s.kernel.step = [frozen, sites](size_t j, const Distribution *prev, const Distribution &d) -> Transitions {
        if (j >= frozen->size() || prev == nullptr || (*frozen)[j].empty()) {
            return {{d, 1}};
        }
        const auto &col = (*frozen)[j][site_of(*prev)][site_of(d)];
        Transitions out;
        for (size_t r = 0; r < sites; r++) {
            out.push_back({single_particle(sites, r), col[r]});
        }
        return out;
    };
    validate_scenario(s);
    return s;
}

}  // namespace histlaw
