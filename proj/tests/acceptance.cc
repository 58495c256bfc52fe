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

// Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Expected values come from the dense oracle in oracle.h or closed forms.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "histlaw/history_law.h"
#include "histlaw/interference.h"
#include "histlaw/report.h"
#include "histlaw/scenarios.h"
#include "oracle.h"

using namespace histlaw;
using oracle::cd;

namespace {

struct Outcome {
    bool ok = true;
    double worst = 0;
    std::string note;

    void near(double got, double want, double tol) {
        double dev = std::abs(got - want);
        worst = std::max(worst, dev);
        ok = ok && dev < tol;
    }
    void require(bool c) {
        ok = ok && c;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Distribution at(const Scenario &s, const std::string &label) {
    return single_particle(s.site_count, s.labels.at(label).index);
}

double ratio_of(const std::vector<cd> &cs) {
    cd sum = 0;
    double inc = 0;
    for (auto c : cs) {
        sum += c;
        inc += std::norm(c);
    }
    return std::norm(sum) / inc;
}

Outcome criterion_1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const double r = 1 / std::sqrt(2.0);
    std::vector<Amplitude> cancel{r, -r};
    o.near(interference_ratio(cancel), 0, 1e-12);

    auto mz = build_mach_zehnder(std::numbers::pi);
    auto f = propagate(mz, 1);
    o.near(interference_factor(f[1], mz.kernel, 2, at(mz, "screen:X")), 0, 1e-12);

    // Three equal-magnitude histories (+, -, +) at Y: oracle ratio from their Feynman amplitudes.
    auto three = build_three_history();
    auto hs = enumerate_histories(three);
    std::vector<cd> into_y;
    for (const auto &h : hs) {
        if (h.slices.back() == at(three, "screen:Y")) {
            into_y.push_back(h.feynman_amplitude);
        }
    }
    double want_third = ratio_of(into_y);
    o.near(want_third, 1.0 / 3.0, 1e-12);
    for (const auto &h : hs) {
        if (h.slices.back() == at(three, "screen:Y")) {
            o.near(end_time_interference_factor(three, h), 1.0 / 3.0, 1e-12);
        }
    }

    // Resultant half the pre-split amplitude: |1 + e^{i t}| / 2 = 1/2.
    double t = std::acos(-0.75);
    std::vector<Amplitude> half{r, r * std::polar(1.0, t)};
    o.near(interference_ratio(half), 0.25, 1e-12);
    auto mzh = build_mach_zehnder(t);
    auto fh = propagate(mzh, 1);
    o.near(interference_factor(fh[1], mzh.kernel, 2, at(mzh, "screen:X")), 0.25, 1e-12);

    double secs = seconds_since(t0);
    o.require(secs < 1);
    o.note = "I = 0, 1/3, 1/4 (" + std::to_string(secs) + " s)";
    return o;
}

Outcome criterion_2() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    double worst_total = 0;
    size_t histories = 0;
    for (int i = 0; i < 50; i++) {
        size_t n = 1 + i % 4;
        size_t slices = 1 + i % 6;
        auto dense = oracle::random_dense(n, slices, 9000 + i);
        auto s = dense.scenario();
        auto born = dense.born();
        auto hs = enumerate_histories(s);
        histories += hs.size();
        o.require(hs.size() <= 100000);
        std::vector<double> sums(n, 0);
        double total = 0;
        for (const auto &h : hs) {
            sums[oracle::sites_of(h.slices).back()] += h.probability;
            total += h.probability;
        }
        for (size_t d = 0; d < n; d++) {
            o.near(sums[d], born[d], 1e-10);
        }
        worst_total = std::max(worst_total, std::abs(total - 1));
        o.require(std::abs(total - 1) < 1e-9);
    }
    double secs = seconds_since(t0);
    o.require(secs < 60);
    char buf[160];
    std::snprintf(buf, sizeof buf, "50 scenarios, %zu histories, |total-1| <= %.2e (%.2f s)", histories, worst_total, secs);
    o.note = buf;
    return o;
}

Outcome criterion_3() {
    Outcome o;
    auto s = build_three_history();
    auto hs = enumerate_histories(s);
    size_t found = 0;
    for (const auto &h : hs) {
        bool via_merge = h.slices[2] == at(s, "screen:X") && h.slices[3] == at(s, "screen:Y");
        if (via_merge) {
            found++;
            o.near(h.probability, 0, 1e-12);
            o.near(end_time_interference_factor(s, h), 1.0 / 3.0, 1e-12);
        }
    }
    o.require(found == 2);
    o.note = "histories A, B: P = 0 per-slice, end-time factor 1/3";
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const double want[] = {1.57e7, 1.66e-27, 2.34e-26, 2.75e-53, 2.60e-19};
    auto oracle_values = [](double hbar) {
        double lambda = 400e-9, m = 0.1;
        double k = 2 * std::numbers::pi / lambda;
        double p = hbar * k;
        double v = std::sqrt(2.0) * p / m;
        double e = 0.5 * m * v * v;
        return std::vector<double>{k, p, v, e, e / hbar};
    };
    auto three_sf = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2e", x);
        return std::string(buf);
    };
    // Library against the independent formulas, both hbar values.
    for (double hbar : {kReducedPlanck, 1.055e-34}) {
        auto r = apparatus_recoil(400e-9, 0.1, hbar);
        auto ref = oracle_values(hbar);
        const double got[] = {r.wavevector, r.momentum, r.velocity, r.energy, r.angular_frequency};
        for (int i = 0; i < 5; i++) {
            o.require(std::abs(got[i] / ref[i] - 1) < 1e-12);
        }
    }
    auto q = apparatus_recoil(400e-9, 0.1, 1.055e-34);
    const double got_q[] = {q.wavevector, q.momentum, q.velocity, q.energy, q.angular_frequency};
    auto c = apparatus_recoil(400e-9, 0.1);
    const double got_c[] = {c.wavevector, c.momentum, c.velocity, c.energy, c.angular_frequency};
    int exact_codata = 0;
    for (int i = 0; i < 5; i++) {
        o.require(three_sf(got_q[i]) == three_sf(want[i]));
        double rel = std::abs(got_c[i] / want[i] - 1);
        o.worst = std::max(o.worst, rel);
        o.require(rel < 5e-3);
        exact_codata += three_sf(got_c[i]) == three_sf(want[i]);
    }
    o.note = "3 s.f. exact at hbar = 1.055e-34; CODATA hbar rounds " + std::to_string(exact_codata) +
             "/5 exactly (E = " + three_sf(c.energy) + ")";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    for (int k = 0; k < 32; k++) {
        double phi = -std::numbers::pi + 2 * std::numbers::pi * (k + 0.37) / 32;
        auto s = build_mach_zehnder(phi);
        double c = std::cos((phi + kSplitterPhaseOffset) / 2);
        o.near(born_probability(s, at(s, "screen:X")), c * c, 1e-10);
    }
    o.note = "32 phases, splitter offset " + std::to_string(kSplitterPhaseOffset);
    return o;
}

Outcome criterion_6() {
    Outcome o;
    auto open = build_which_way(false);
    auto blocked = build_which_way(true);
    auto p_open = screen_profile(open);
    auto p_blocked = screen_profile(blocked);
    for (size_t k = 0; k < p_open.size(); k++) {
        o.near(p_open[k], (1 + std::cos(2 * std::numbers::pi * (double)k / (double)p_open.size())) / 8, 1e-12);
        o.near(p_blocked[k], 1.0 / 8, 1e-12);
    }
    auto vis = [](const std::vector<double> &p) {
        double hi = *std::max_element(p.begin(), p.end());
        double lo = *std::min_element(p.begin(), p.end());
        return (hi - lo) / (hi + lo);
    };
    o.near(vis(p_open), 1, 1e-9);
    o.near(vis(p_blocked), 0, 1e-9);
    o.near(visibility(p_open), vis(p_open), 1e-15);
    auto hs = enumerate_histories(blocked);
    o.near(history_marginal(hs, blocked.labels.at("route:A"), 1), 0.5, 1e-10);
    o.near(history_marginal(hs, blocked.labels.at("route:B"), 1), 0.5, 1e-10);
    o.note = "visibility " + std::to_string(vis(p_open)) + " / " + std::to_string(vis(p_blocked));
    return o;
}

Outcome criterion_7() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    double worst_off = 0, min_on = 1, min_obs = 1;
    for (int n = 0; n <= 3; n++) {
        std::vector<bool> off(5, false), on(5, false);
        on[kDielectricReturnStep] = true;
        auto reflected = [](const Scenario &s) {
            double p = 0;
            for (const auto &h : enumerate_histories(s)) {
                p += s.labels.at("reflected").matches(h.slices.back()) ? h.probability : 0;
            }
            return p;
        };
        auto plain = build_dielectric(2 * n + 1, off);
        double r_off = reflected(plain);
        worst_off = std::max(worst_off, r_off);
        o.require(r_off < 1e-10);

        auto blocked = build_dielectric(2 * n + 1, on);
        double absorbed = 0;
        for (const auto &h : enumerate_histories(blocked)) {
            if (blocked.labels.at("bottom_reflection").matches(h.slices[kDielectricReturnStep]) &&
                blocked.labels.at("sink:blocker").matches(h.slices.back())) {
                absorbed += h.probability;
            }
        }
        min_on = std::min(min_on, absorbed);

        auto observed = build_dielectric(2 * n + 1, off, true);
        double r_obs = 0;
        for (const auto &h : enumerate_histories(observed)) {
            r_obs += observed.labels.at("reflected").matches(h.slices.back()) ? h.probability : 0;
        }
        min_obs = std::min(min_obs, r_obs);
    }
    o.require(min_on > 0.01);
    o.require(min_obs > 0.01);
    double secs = seconds_since(t0);
    o.require(secs < 5);
    o.worst = worst_off;
    char buf[160];
    std::snprintf(buf, sizeof buf, "off %.1e, blocked-absorbed %.4f, observed %.4f (%.3f s)", worst_off, min_on, min_obs, secs);
    o.note = buf;
    return o;
}

Outcome criterion_8() {
    Outcome o;
    auto dense = oracle::random_dense(3, 4, 4242);
    auto s = dense.scenario();
    std::map<std::vector<size_t>, double> exact;
    for (const auto &p : dense.histories()) {
        exact[p.sites] = p.probability;
    }
    const size_t n = 100000;
    auto samples = sample_histories(s, 2024, n);
    std::map<std::vector<size_t>, double> freq;
    for (const auto &h : samples) {
        freq[oracle::sites_of(h.slices)] += 1.0 / n;
    }
    double tv = 0;
    for (const auto &[k, p] : exact) {
        tv += std::abs(p - (freq.count(k) ? freq[k] : 0));
    }
    for (const auto &[k, f] : freq) {
        tv += exact.count(k) ? 0 : f;
    }
    tv /= 2;
    o.worst = tv;
    o.require(tv < 0.02);

    auto again = sample_histories(s, 2024, n);
    bool same = again.size() == samples.size();
    for (size_t i = 0; same && i < samples.size(); i++) {
        same = samples[i].slices == again[i].slices && samples[i].probability == again[i].probability;
    }
    o.require(same);
    RunOptions ro;
    ro.mode = RunMode::sample;
    ro.seed = 2024;
    ro.count = 5000;
    o.require(run_report(s, ro) == run_report(s, ro));
    char buf[128];
    std::snprintf(buf, sizeof buf, "TV = %.4f over %zu samples, reruns identical: %s", tv, n, same ? "yes" : "no");
    o.note = buf;
    return o;
}

Outcome criterion_9() {
    Outcome o;
    for (int i = 0; i < 20; i++) {
        size_t n = 2 + i % 3;
        size_t slices = 3 + i % 3;
        auto dense = oracle::random_dense(n, slices, 7100 + i, true);
        std::map<std::vector<size_t>, double> exact;
        for (const auto &p : dense.histories()) {
            exact[p.sites] = p.probability;
        }
        auto second = to_second_order(dense.scenario());
        auto hs = enumerate_histories(second);
        o.require(second.second_order());
        o.require(hs.size() == exact.size());
        for (const auto &h : hs) {
            auto it = exact.find(oracle::sites_of(h.slices));
            o.require(it != exact.end());
            o.near(h.probability, it == exact.end() ? -1 : it->second, 1e-10);
        }
    }
    o.note = "20 instances";
    return o;
}

Outcome criterion_10() {
    Outcome o;
    auto s = build_epr();
    double both_pass = 0, both_absorbed = 0, mismatch = 0, pass1 = 0, pass2 = 0;
    for (const auto &h : enumerate_histories(s)) {
        const auto &d = h.slices.back();
        bool p1 = s.labels.at("pass:1").matches(d), p2 = s.labels.at("pass:2").matches(d);
        bool a1 = s.labels.at("sink:1").matches(d), a2 = s.labels.at("sink:2").matches(d);
        both_pass += p1 && p2 ? h.probability : 0;
        both_absorbed += a1 && a2 ? h.probability : 0;
        mismatch += (p1 && a2) || (a1 && p2) ? h.probability : 0;
        pass1 += p1 ? h.probability : 0;
        pass2 += p2 ? h.probability : 0;
    }
    o.near(both_pass, 0.5, 1e-12);
    o.near(both_absorbed, 0.5, 1e-12);
    o.near(mismatch, 0, 1e-12);
    o.near(pass1 * pass2, 0.25, 1e-12);
    o.note = "joint pass 1/2, joint absorbed 1/2, mismatch 0, marginal product 1/4";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"interference_factor_exactness", criterion_1},
        {"born_consistency", criterion_2},
        {"three_history_correction", criterion_3},
        {"recoil_arithmetic", criterion_4},
        {"mach_zehnder_fringe", criterion_5},
        {"which_way_decoherence", criterion_6},
        {"dielectric_quarter_wave", criterion_7},
        {"sampler_convergence", criterion_8},
        {"second_order_reduction", criterion_9},
        {"epr_correlations", criterion_10},
    };
    int failures = 0;
    int id = 0;
    for (const auto &[name, run] : criteria) {
        id++;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        failures += !o.ok;
        std::printf("%s criterion %2d %-30s max_dev=%.3e  %s\n", o.ok ? "PASS" : "FAIL", id, name, o.worst, o.note.c_str());
    }
    std::printf("%d/%d criteria passed\n", id - failures, id);
    return failures == 0 ? 0 : 1;
}
