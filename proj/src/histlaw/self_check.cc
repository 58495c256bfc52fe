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

#include "self_check.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "history_law.h"
#include "interference.h"
#include "report.h"
#include "scenarios.h"

namespace histlaw {

namespace {

using Clock = std::chrono::steady_clock;

struct Tracker {
    double worst = 0;
    bool ok = true;

    /// Records |got - want| and fails when it is not below tol.
    void near(double got, double want, double tol) {
        double dev = std::abs(got - want);
        worst = std::max(worst, dev);
        if (!(dev < tol)) {
            ok = false;
        }
    }
    void require(bool condition) {
        ok = ok && condition;
    }
};

Distribution site_state(const Scenario &s, const std::string &label) {
    return single_particle(s.site_count, s.labels.at(label).index);
}

double final_history_mass(const Scenario &s, const std::vector<History> &hs, const std::string &label) {
    return history_marginal(hs, s.labels.at(label), s.slice_count());
}

CheckResult check_interference(const SelfCheckOptions &) {
    Tracker t;
    auto mz = build_mach_zehnder(std::numbers::pi);
    auto fields = propagate(mz, 1);
    t.near(interference_factor(fields[1], mz.kernel, 2, site_state(mz, "screen:X")), 0, 1e-12);

    double half = std::acos(-0.75);
    auto mz_half = build_mach_zehnder(half);
    auto fields_half = propagate(mz_half, 1);
    t.near(interference_factor(fields_half[1], mz_half.kernel, 2, site_state(mz_half, "screen:X")), 0.25, 1e-12);

    auto three = build_three_history();
    for (const auto &h : enumerate_histories(three)) {
        if (h.slices[1] == single_particle(three.site_count, three.labels.at("route:A").index) &&
            h.slices.back() == single_particle(three.site_count, three.labels.at("screen:Y").index)) {
            t.near(end_time_interference_factor(three, h), 1.0 / 3.0, 1e-12);
        }
    }
    return {1, "interference_factor_exactness", t.ok, t.worst, "I = 0, 1/3, 1/4"};
}

CheckResult check_born(const SelfCheckOptions &o) {
    Tracker t;
    size_t instances = o.quick ? 10 : 50;
    size_t histories = 0;
    for (size_t i = 0; i < instances; i++) {
        size_t sites = 2 + i % 3;
        size_t slices = 2 + i % 5;
        auto s = build_random_unitary(sites, slices, 1000 + i);
        ConsistencyReport r;
        if (o.perturbation != 0) {
            Scenario perturbed = s;
            double scale = 1 + o.perturbation;
            auto inner = s.kernel.step;
            perturbed.kernel.step = [inner, scale](size_t j, const Distribution *p, const Distribution &d) {
                auto ts = inner(j, p, d);
                if (j == 0) {
                    for (auto &x : ts) {
                        x.amplitude *= scale;
                    }
                }
                return ts;
            };
            r = marginal_consistency(perturbed, s);
        } else {
            r = marginal_consistency(s);
        }
        histories += r.history_count;
        t.near(r.max_discrepancy, 0, 1e-10);
        t.near(r.total_probability, 1, 1e-9);
    }
    return {2, "born_consistency", t.ok, t.worst,
            std::to_string(instances) + " random unitary scenarios, " + std::to_string(histories) + " histories"};
}

CheckResult check_three_history(const SelfCheckOptions &) {
    Tracker t;
    auto s = build_three_history();
    auto hs = enumerate_histories(s);
    auto x = site_state(s, "screen:X");
    auto y = site_state(s, "screen:Y");
    size_t seen = 0;
    for (const auto &h : hs) {
        // Histories A and B: routes A, B through the merge X on to Y.
        if (h.slices[2] == x && h.slices[3] == y) {
            seen++;
            t.near(h.probability, 0, 1e-12);
            t.near(end_time_interference_factor(s, h), 1.0 / 3.0, 1e-12);
        }
    }
    t.require(seen == 2);
    double py = final_history_mass(s, hs, "screen:Y");
    t.near(py, born_probability(s, y), 1e-12);
    return {3, "three_history_correction", t.ok, t.worst, "P(A) = P(B) = 0, end-time factor 1/3"};
}

CheckResult check_recoil(const SelfCheckOptions &) {
    Tracker t;
    auto r = apparatus_recoil(400e-9, 0.1);
    const double want[] = {1.57e7, 1.66e-27, 2.34e-26, 2.75e-53, 2.60e-19};
    const double got[] = {r.wavevector, r.momentum, r.velocity, r.energy, r.angular_frequency};
    for (int i = 0; i < 5; i++) {
        double rel = std::abs(got[i] / want[i] - 1);
        t.worst = std::max(t.worst, rel);
        t.require(rel < 5e-3);
    }
    // At the quoted working precision of hbar every value rounds exactly.
    auto q = apparatus_recoil(400e-9, 0.1, 1.055e-34);
    const double got_q[] = {q.wavevector, q.momentum, q.velocity, q.energy, q.angular_frequency};
    for (int i = 0; i < 5; i++) {
        char a[32], b[32];
        std::snprintf(a, sizeof a, "%.2e", got_q[i]);
        std::snprintf(b, sizeof b, "%.2e", want[i]);
        t.require(std::string(a) == b);
    }
    return {4, "recoil_arithmetic", t.ok, t.worst, "relative deviation at CODATA hbar; 3 s.f. at hbar = 1.055e-34"};
}

CheckResult check_fringe(const SelfCheckOptions &) {
    Tracker t;
    for (int k = 0; k < 32; k++) {
        double phi = 2 * std::numbers::pi * k / 32 - std::numbers::pi + 0.1;
        auto s = build_mach_zehnder(phi);
        double p = final_marginals(s).at("screen:X");
        double c = std::cos((phi + kSplitterPhaseOffset) / 2);
        t.near(p, c * c, 1e-10);
    }
    return {5, "mach_zehnder_fringe", t.ok, t.worst, "32 phases"};
}

CheckResult check_which_way(const SelfCheckOptions &) {
    Tracker t;
    t.near(visibility(screen_profile(build_which_way(false))), 1, 1e-9);
    auto blocked = build_which_way(true);
    t.near(visibility(screen_profile(blocked)), 0, 1e-9);
    auto hs = enumerate_histories(blocked);
    t.near(history_marginal(hs, blocked.labels.at("route:A"), 1), 0.5, 1e-10);
    t.near(history_marginal(hs, blocked.labels.at("route:B"), 1), 0.5, 1e-10);
    return {6, "which_way_decoherence", t.ok, t.worst, "visibility 1 / 0, routes 1/2"};
}

CheckResult check_dielectric(const SelfCheckOptions &) {
    Tracker t;
    double min_absorbed = 1, min_observed = 1;
    for (int n = 0; n <= 3; n++) {
        int m = 2 * n + 1;
        std::vector<bool> off(5, false), on(5, false);
        on[kDielectricReturnStep] = true;
        auto plain = build_dielectric(m, off);
        auto hs = enumerate_histories(plain);
        t.near(final_history_mass(plain, hs, "reflected"), 0, 1e-10);

        auto blocked = build_dielectric(m, on);
        auto hb = enumerate_histories(blocked);
        double absorbed = 0;
        for (const auto &h : hb) {
            if (blocked.labels.at("bottom_reflection").matches(h.slices[kDielectricReturnStep]) &&
                blocked.labels.at("sink:blocker").matches(h.slices.back())) {
                absorbed += h.probability;
            }
        }
        min_absorbed = std::min(min_absorbed, absorbed);

        auto observed = build_dielectric(m, off, true);
        auto ho = enumerate_histories(observed);
        min_observed = std::min(min_observed, final_history_mass(observed, ho, "reflected"));
    }
    t.require(min_absorbed > 0.01);
    t.require(min_observed > 0.01);
    char buf[128];
    std::snprintf(buf, sizeof buf, "n = 0..3; absorbed >= %.4g, observed reflection >= %.4g", min_absorbed, min_observed);
    return {7, "dielectric_quarter_wave", t.ok, t.worst, buf};
}

CheckResult check_sampler(const SelfCheckOptions &o) {
    Tracker t;
    auto s = build_random_unitary(3, 4, 77);
    size_t n = o.quick ? 20000 : 100000;
    double tol = o.quick ? 0.045 : 0.02;
    auto exact = enumerate_histories(s);
    auto samples = sample_histories(s, 42, n);
    double tv = total_variation(samples, exact);
    t.worst = tv;
    t.require(tv < tol);
    RunOptions ro;
    ro.mode = RunMode::sample;
    ro.seed = 42;
    ro.count = 2000;
    t.require(run_report(s, ro) == run_report(s, ro));
    char buf[96];
    std::snprintf(buf, sizeof buf, "TV = %.4g over %zu samples (bound %.3g); reruns identical", tv, n, tol);
    return {8, "sampler_convergence", t.ok, t.worst, buf};
}

CheckResult check_second_order(const SelfCheckOptions &o) {
    Tracker t;
    size_t instances = o.quick ? 5 : 20;
    for (size_t i = 0; i < instances; i++) {
        auto first = build_random_unitary(2 + i % 3, 3 + i % 3, 5000 + i, true);
        auto second = to_second_order(first);
        auto a = enumerate_histories(first);
        auto b = enumerate_histories(second);
        std::map<std::vector<Distribution>, double> pa;
        for (const auto &h : a) {
            pa[h.slices] = h.probability;
        }
        for (const auto &h : b) {
            auto it = pa.find(h.slices);
            t.near(h.probability, it == pa.end() ? 0 : it->second, 1e-10);
        }
        t.require(a.size() == b.size());
    }
    return {9, "second_order_reduction", t.ok, t.worst, std::to_string(instances) + " random instances"};
}

CheckResult check_epr(const SelfCheckOptions &) {
    Tracker t;
    auto s = build_epr();
    auto hs = enumerate_histories(s);
    double both_pass = 0, both_absorbed = 0, mismatch = 0;
    for (const auto &h : hs) {
        bool p1 = s.labels.at("pass:1").matches(h.slices.back());
        bool p2 = s.labels.at("pass:2").matches(h.slices.back());
        bool a1 = s.labels.at("sink:1").matches(h.slices.back());
        bool a2 = s.labels.at("sink:2").matches(h.slices.back());
        both_pass += p1 && p2 ? h.probability : 0;
        both_absorbed += a1 && a2 ? h.probability : 0;
        mismatch += (p1 && a2) || (a1 && p2) ? h.probability : 0;
    }
    t.near(both_pass, 0.5, 1e-12);
    t.near(both_absorbed, 0.5, 1e-12);
    t.near(mismatch, 0, 1e-12);
    double product = final_history_mass(s, hs, "pass:1") * final_history_mass(s, hs, "pass:2");
    t.near(product, 0.25, 1e-12);
    return {10, "epr_correlations", t.ok, t.worst, "joint 1/2, 1/2, 0; marginal product 1/4"};
}

}  // namespace

std::vector<CheckResult> self_check(const SelfCheckOptions &options) {
    using Check = CheckResult (*)(const SelfCheckOptions &);
    const Check checks[] = {
        check_interference, check_born,       check_three_history, check_recoil,       check_fringe,
        check_which_way,    check_dielectric, check_sampler,       check_second_order, check_epr,
    };
    std::vector<CheckResult> out;
    for (Check c : checks) {
        auto start = Clock::now();
        CheckResult r;
        try {
            r = c(options);
        } catch (const std::exception &e) {
            r.id = (int)out.size() + 1;
            r.name = "check_" + std::to_string(r.id);
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_check(const CheckResult &r) {
    char buf[512];
    std::snprintf(
        buf, sizeof buf, "%s %2d %-30s max_dev=%.3e (%.3f s) %s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
        r.max_discrepancy, r.seconds, r.detail.c_str());
    return buf;
}

}  // namespace histlaw
