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

#include <random>

#include "doctest.h"
#include "histlaw/engine.h"
#include "histlaw/history_law.h"
#include "histlaw/interference.h"
#include "histlaw/scenarios.h"
#include "oracle.h"

using namespace histlaw;

TEST_CASE("interference ratio closed forms") {
    const double r = 1 / std::sqrt(2.0);
    CHECK(interference_ratio(std::vector<Amplitude>{r, -r}) == 0);
    CHECK(interference_ratio(std::vector<Amplitude>{r, r}) == doctest::Approx(2));
    CHECK(interference_ratio(std::vector<Amplitude>{Amplitude(0, 3)}) == doctest::Approx(1));
    CHECK(interference_ratio(std::vector<Amplitude>{}) == 1);
    CHECK(interference_ratio(std::vector<Amplitude>{0, 0}) == 1);
    CHECK(interference_ratio(std::vector<Amplitude>{1, 1, 1}) == doctest::Approx(3));
}

TEST_CASE("interference ratio properties on random contributions") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    for (int trial = 0; trial < 200; trial++) {
        size_t m = 1 + trial % 7;
        std::vector<Amplitude> cs;
        for (size_t i = 0; i < m; i++) {
            cs.emplace_back(g(rng), g(rng));
        }
        double base = interference_ratio(cs);
        CHECK(base >= 0);
        CHECK(base <= m + 1e-12);

        // Common phase and common scale do not change the ratio.
        Amplitude w = std::polar(0.1 + std::abs(g(rng)), u(rng));
        std::vector<Amplitude> moved = cs;
        for (auto &c : moved) {
            c *= w;
        }
        CHECK(interference_ratio(moved) == doctest::Approx(base).epsilon(1e-12));

        // Order independence.
        std::vector<Amplitude> reversed(cs.rbegin(), cs.rend());
        CHECK(interference_ratio(reversed) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("factor from contributions matches the dense oracle") {
    auto dense = oracle::random_dense(3, 3, 5);
    auto s = dense.scenario();
    auto fields = propagate(s, 3);
    auto psi = dense.fields();
    for (size_t a = 1; a <= 3; a++) {
        for (size_t d = 0; d < 3; d++) {
            oracle::cd coh = 0;
            double inc = 0;
            for (size_t c = 0; c < 3; c++) {
                auto x = psi[a - 1][c] * dense.steps[a - 1][d][c];
                coh += x;
                inc += std::norm(x);
            }
            double got = interference_factor(fields[a - 1], s.kernel, a, single_particle(3, d));
            CHECK(got == doctest::Approx(std::norm(coh) / inc).epsilon(1e-12));
        }
    }
}

TEST_CASE("factor agrees bit for bit with the forward pass") {
    auto s = build_random_unitary(4, 4, 8);
    auto chain = make_chain(s);
    auto pass = forward_pass(chain, chain.steps, {});
    auto fields = propagate(s, 4);
    for (size_t k = 1; k <= 4; k++) {
        for (const auto &[d, in] : pass.inflows[k]) {
            CHECK(interference_factor(fields[k - 1], s.kernel, k, d) == pass.interference(k, d));
        }
    }
}

TEST_CASE("argument checks") {
    auto s = build_mach_zehnder(0);
    auto fields = propagate(s, 1);
    CHECK_THROWS_AS(interference_factor(fields[0], s.kernel, 0, single_particle(5, 0)), InvalidArgument);
    auto second = build_random_second_order(2, 3, 1);
    auto pf = propagate(second, 2);
    CHECK_THROWS_AS(interference_factor(pf[0], second.kernel, 2, single_particle(2, 0)), InvalidArgument);
    CHECK_THROWS_AS(
        pair_interference_factor(pf[0], second.kernel, 1, {single_particle(2, 0), single_particle(2, 0)}),
        InvalidArgument);
}

TEST_CASE("pair factor of a predecessor-independent kernel is the first-order factor of the earlier element") {
    // Pair (d_{a-1}, d_a) collects psi(d_{a-2}, d_{a-1}) step(d_{a-1} -> d_a); with a
    // predecessor-independent kernel the step factors out, leaving the
    // first-order inflow ratio into d_{a-1}.
    auto first = build_random_unitary(3, 4, 21);
    auto second = to_second_order(first);
    auto f1 = propagate(first, 4);
    auto f2 = propagate(second, 4);  // slices 1..4
    for (size_t slice = 2; slice <= 4; slice++) {
        for (size_t m = 0; m < 3; m++) {
            for (size_t l = 0; l < 3; l++) {
                auto middle = single_particle(3, m);
                auto last = single_particle(3, l);
                double pair_factor = pair_interference_factor(f2[slice - 2], second.kernel, slice, {middle, last});
                double earlier = interference_factor(f1[slice - 2], first.kernel, slice - 1, middle);
                CHECK(pair_factor == doctest::Approx(earlier).epsilon(1e-10));
            }
        }
    }
}
