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

#include <unordered_set>

#include "doctest.h"
#include "histlaw/model.h"
#include "histlaw/scenarios.h"

using namespace histlaw;

TEST_CASE("distribution equality covers occupancy and tags") {
    auto a = single_particle(3, 1);
    auto b = single_particle(3, 1);
    CHECK(a == b);
    CHECK(DistributionHash{}(a) == DistributionHash{}(b));
    CHECK(single_particle(3, 1, {0}) != single_particle(3, 1, {1}));
    CHECK(single_particle(3, 0) != single_particle(3, 1));
    CHECK(occupied(3, {2, 0}) == occupied(3, {0, 2}));
    CHECK(occupied(3, {1, 1}).particle_count() == 2);
    CHECK(occupied(3, {1, 1}) != single_particle(3, 1));

    std::unordered_set<Distribution, DistributionHash> set{a, b, single_particle(3, 2), single_particle(3, 2, {7})};
    CHECK(set.size() == 3);
}

TEST_CASE("pair join and split round trip") {
    auto p = single_particle(4, 1, {3});
    auto c = occupied(4, {0, 2}, {5});
    auto [p2, c2] = split_pair(join_pair(p, c));
    CHECK(p2 == p);
    CHECK(c2 == c);
}

TEST_CASE("kernel support is canonical") {
    Kernel k;
    k.step = [](size_t, const Distribution *, const Distribution &) -> Transitions {
        return {{single_particle(3, 2), 0.5}, {single_particle(3, 0), 0.25}, {single_particle(3, 2), 0.25}, {single_particle(3, 1), 0}};
    };
    auto s = k.support(0, nullptr, single_particle(3, 0));
    REQUIRE(s.size() == 2);
    CHECK(s[0].to < s[1].to);
    for (const auto &t : s) {
        if (t.to == single_particle(3, 2)) {
            CHECK(t.amplitude == Amplitude(0.75));
        } else {
            CHECK(t.to == single_particle(3, 0));
            CHECK(t.amplitude == Amplitude(0.25));
        }
    }
}

TEST_CASE("render") {
    auto s = build_which_way(false);
    CHECK(s.render(single_particle(s.site_count, 0, {0, 0})) == "S[0,0]");
    auto mz = build_mach_zehnder(0);
    CHECK(mz.render(std::vector<Distribution>{single_particle(5, 0), single_particle(5, 1), single_particle(5, 3)}) == "S>A>X");
    CHECK(mz.render(Distribution{{0, 0, 0, 0, 0}, {}}) == "vac");
}

TEST_CASE("validate_scenario rejects malformed input") {
    auto good = build_mach_zehnder(0);
    CHECK_NOTHROW(validate_scenario(good));

    auto bad_shape = good;
    bad_shape.initial.terms = {{single_particle(4, 0), 1}};
    CHECK_THROWS_AS(validate_scenario(bad_shape), InvalidArgument);

    auto not_normalized = good;
    not_normalized.initial.terms = {{single_particle(5, 0), 0.5}};
    CHECK_THROWS_AS(validate_scenario(not_normalized), InvalidArgument);

    auto empty = good;
    empty.initial.terms.clear();
    CHECK_THROWS_AS(validate_scenario(empty), InvalidArgument);

    auto bad_label = good;
    bad_label.labels["bogus"] = {Label::Kind::site, 99, 1};
    CHECK_THROWS_AS(validate_scenario(bad_label), InvalidArgument);

    auto nan = good;
    nan.initial.terms = {{single_particle(5, 0), Amplitude(std::nan(""), 0)}};
    CHECK_THROWS_AS(validate_scenario(nan), InvalidArgument);
}

TEST_CASE("validate_kernel on unitary and lossy kernels") {
    auto mz = build_mach_zehnder(1.3);
    auto v = validate_kernel(mz);
    CHECK(v.is_unitary);
    CHECK(v.max_norm_drift < 1e-12);

    auto lossy = mz;
    lossy.kernel.step = [](size_t j, const Distribution *, const Distribution &d) -> Transitions {
        if (j == 0) {
            return {{single_particle(5, 1), 0.5}};
        }
        return {{d, 1}};
    };
    lossy.unitary = false;
    auto lv = validate_kernel(lossy);
    CHECK_FALSE(lv.is_unitary);
    CHECK(lv.max_norm_drift == doctest::Approx(0.75));

    auto absorbing = mz;
    absorbing.kernel.step = [](size_t, const Distribution *, const Distribution &) -> Transitions {
        return {};
    };
    CHECK_THROWS_AS(validate_kernel(absorbing), NotUnitary);
    absorbing.unitary = false;
    auto av = validate_kernel(absorbing);
    CHECK_FALSE(av.is_unitary);
    CHECK(av.absorbing.size() == 1);
}

TEST_CASE("every builder emits a kernel that passes validation") {
    for (const auto &info : builder_registry()) {
        CAPTURE(info.name);
        auto s = build_scenario(info.name, {});
        auto v = validate_kernel(s);
        if (s.unitary) {
            CHECK(v.is_unitary);
            CHECK(v.max_norm_drift < 1e-9);
        }
    }
}
