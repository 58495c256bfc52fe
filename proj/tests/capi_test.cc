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

#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "histlaw.h"

TEST_CASE("registry listing") {
    REQUIRE(hl_builder_count() >= 10);
    bool found = false;
    for (size_t i = 0; i < hl_builder_count(); i++) {
        if (std::string(hl_builder_name(i)) == "mach_zehnder") {
            found = true;
            const char *name = nullptr, *type = nullptr, *def = nullptr, *help = nullptr;
            REQUIRE(hl_builder_param(i, 0, &name, &type, &def, &help) == HL_OK);
            CHECK(std::string(name) == "phase_diff");
            CHECK(std::string(type) == "real");
        }
    }
    CHECK(found);
    CHECK(hl_builder_name(9999) == nullptr);
    CHECK(hl_builder_param(9999, 0, nullptr, nullptr, nullptr, nullptr) == HL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("build, query and free") {
    const char *keys[] = {"phase_diff"};
    const char *values[] = {"3.141592653589793"};
    hl_scenario *s = nullptr;
    REQUIRE(hl_scenario_build("mach_zehnder", keys, values, 1, &s) == HL_OK);
    CHECK(std::string(hl_scenario_name(s)) == "mach_zehnder");
    CHECK(hl_scenario_slice_count(s) == 2);
    CHECK(hl_scenario_site_count(s) == 5);
    CHECK(hl_scenario_second_order(s) == 0);

    int unitary = 0;
    double drift = 1;
    CHECK(hl_scenario_validate(s, &unitary, &drift) == HL_OK);
    CHECK(unitary == 1);
    CHECK(drift < 1e-12);

    double p = 1;
    CHECK(hl_marginal(s, "screen:X", nullptr, &p) == HL_OK);
    CHECK(p < 1e-10);
    CHECK(hl_marginal(s, "nope", nullptr, &p) == HL_ERR_INVALID_ARGUMENT);
    CHECK(std::string(hl_last_error()).find("nope") != std::string::npos);

    double disc = 1, total = 0;
    int passed = 0;
    CHECK(hl_born_consistency(s, nullptr, &disc, &total, &passed) == HL_OK);
    CHECK(passed == 1);
    CHECK(total == doctest::Approx(1));

    double count = 0;
    CHECK(hl_history_count(s, nullptr, &count) == HL_OK);
    CHECK(count == 4);
    hl_scenario_free(s);
}

TEST_CASE("error codes") {
    hl_scenario *s = reinterpret_cast<hl_scenario *>(1);
    CHECK(hl_scenario_build("nope", nullptr, nullptr, 0, &s) == HL_ERR_UNKNOWN_SCENARIO);
    CHECK(s == nullptr);
    const char *keys[] = {"bogus"};
    const char *values[] = {"1"};
    CHECK(hl_scenario_build("epr", keys, values, 1, &s) == HL_ERR_UNKNOWN_PARAMETER);
    const char *bad_values[] = {"x"};
    const char *phase[] = {"phase_diff"};
    CHECK(hl_scenario_build("mach_zehnder", phase, bad_values, 1, &s) == HL_ERR_INVALID_ARGUMENT);
    CHECK(hl_scenario_build(nullptr, nullptr, nullptr, 0, &s) == HL_ERR_INVALID_ARGUMENT);
    CHECK(std::string(hl_status_name(HL_ERR_OVERFLOW)) == "enumeration_overflow");

    REQUIRE(hl_scenario_build("which_way", nullptr, nullptr, 0, &s) == HL_OK);
    hl_limits tight{3, 3};
    char *text = nullptr;
    CHECK(hl_run(s, HL_MODE_ENUMERATE, HL_FORMAT_JSON, 0, 0, &tight, &text) == HL_ERR_OVERFLOW);
    CHECK(text == nullptr);
    CHECK(std::string(hl_last_error()).find("slice") != std::string::npos);
    hl_scenario_free(s);

    REQUIRE(hl_scenario_build("random_second_order", nullptr, nullptr, 0, &s) == HL_OK);
    hl_histories *hs = nullptr;
    CHECK(hl_sample(s, 1, 10, nullptr, &hs) == HL_ERR_NOT_UNITARY);
    CHECK(hs == nullptr);
    hl_scenario_free(s);
}

TEST_CASE("run and histories") {
    hl_scenario *s = nullptr;
    REQUIRE(hl_scenario_build("three_history", nullptr, nullptr, 0, &s) == HL_OK);
    char *a = nullptr, *b = nullptr;
    REQUIRE(hl_run(s, HL_MODE_ENUMERATE, HL_FORMAT_CSV, 42, 0, nullptr, &a) == HL_OK);
    REQUIRE(hl_run(s, HL_MODE_ENUMERATE, HL_FORMAT_CSV, 42, 0, nullptr, &b) == HL_OK);
    CHECK(std::strcmp(a, b) == 0);
    CHECK(std::string(a).rfind("history_id,slice_sequence,", 0) == 0);
    hl_string_free(a);
    hl_string_free(b);

    hl_histories *hs = nullptr;
    REQUIRE(hl_enumerate(s, nullptr, &hs) == HL_OK);
    REQUIRE(hl_histories_size(hs) == 9);
    int zeros = 0;
    for (size_t i = 0; i < hl_histories_size(hs); i++) {
        double p, re, im, prod;
        REQUIRE(hl_history_get(hs, i, &p, &re, &im, &prod) == HL_OK);
        std::string seq = hl_history_render(hs, i);
        if (seq == "S>A>X>Y" || seq == "S>B>X>Y") {
            CHECK(p == 0);
            zeros++;
        }
    }
    CHECK(zeros == 2);
    CHECK(hl_history_get(hs, 99, nullptr, nullptr, nullptr, nullptr) == HL_ERR_INVALID_ARGUMENT);
    CHECK(hl_history_render(hs, 99) == nullptr);
    hl_histories_free(hs);

    REQUIRE(hl_sample(s, 3, 100, nullptr, &hs) == HL_OK);
    CHECK(hl_histories_size(hs) == 100);
    hl_histories_free(hs);
    hl_scenario_free(s);
}

TEST_CASE("config loading with overrides") {
    const char *path = "capi_test_config.json";
    FILE *f = std::fopen(path, "w");
    REQUIRE(f != nullptr);
    std::fputs("{\"scenario\": \"mach_zehnder\", \"params\": {\"phase_diff\": 0, \"slices\": 3}}", f);
    std::fclose(f);
    const char *keys[] = {"phase_diff"};
    const char *values[] = {"3.141592653589793"};
    hl_scenario *s = nullptr;
    REQUIRE(hl_scenario_load_config(path, keys, values, 1, &s) == HL_OK);
    CHECK(hl_scenario_slice_count(s) == 3);
    double p = 1;
    CHECK(hl_marginal(s, "screen:X", nullptr, &p) == HL_OK);
    CHECK(p < 1e-10);
    hl_scenario_free(s);
    std::remove(path);
    CHECK(hl_scenario_load_config("/nonexistent.json", nullptr, nullptr, 0, &s) == HL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("numeric helpers") {
    const double re[] = {1 / std::sqrt(2.0), -1 / std::sqrt(2.0)};
    const double im[] = {0, 0};
    CHECK(hl_interference_ratio(re, im, 2) == 0);
    CHECK(hl_interference_ratio(nullptr, nullptr, 0) == 1);
    double out[5];
    REQUIRE(hl_apparatus_recoil(400e-9, 0.1, 0, out) == HL_OK);
    CHECK(out[0] == doctest::Approx(1.5708e7).epsilon(1e-4));
    CHECK(hl_apparatus_recoil(-1, 0.1, 0, out) == HL_ERR_INVALID_ARGUMENT);
    hl_limits l;
    hl_limits_default(&l);
    CHECK(l.max_states > 0);
    CHECK(std::string(hl_version()).size() > 0);
}

TEST_CASE("self check through the C API") {
    char *report = nullptr;
    int ok = 0;
    CHECK(hl_self_check(1, 0, &report, &ok) == HL_OK);
    CHECK(ok == 1);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("FAIL") == std::string::npos);
    hl_string_free(report);

    CHECK(hl_self_check(1, 1e-3, &report, &ok) == HL_ERR_CHECK_FAILED);
    CHECK(ok == 0);
    CHECK(std::string(report).find("FAIL  2 born_consistency") != std::string::npos);
    hl_string_free(report);
}
