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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "histlaw.h"

namespace {

int exit_code(hl_status status) {
    switch (status) {
        case HL_OK:
            return 0;
        case HL_ERR_UNKNOWN_SCENARIO:
        case HL_ERR_UNKNOWN_PARAMETER:
            return 2;
        case HL_ERR_OVERFLOW:
            return 3;
        case HL_ERR_CHECK_FAILED:
            return 4;
        default:
            return 1;
    }
}

int report_error(hl_status status) {
    std::cerr << "histlaw: " << hl_status_name(status) << ": " << hl_last_error() << "\n";
    return exit_code(status);
}

int cmd_list() {
    for (size_t i = 0; i < hl_builder_count(); i++) {
        std::cout << hl_builder_name(i) << "  " << hl_builder_help(i) << "\n";
        for (size_t j = 0; j < hl_builder_param_count(i); j++) {
            const char *name, *type, *def, *help;
            hl_builder_param(i, j, &name, &type, &def, &help);
            std::cout << "    " << name << " (" << type << ", default '" << def << "')  " << help << "\n";
        }
    }
    return 0;
}

struct RunArgs {
    std::string scenario;
    std::string config;
    std::vector<std::string> params;
    std::string mode = "marginals";
    std::string format = "json";
    size_t slices = 0;
    uint64_t seed = 0;
    size_t count = 1000;
    std::string out;
};

int cmd_run(const RunArgs &a) {
    hl_mode mode;
    if (a.mode == "enumerate") {
        mode = HL_MODE_ENUMERATE;
    } else if (a.mode == "sample") {
        mode = HL_MODE_SAMPLE;
    } else if (a.mode == "marginals") {
        mode = HL_MODE_MARGINALS;
    } else {
        mode = HL_MODE_IMAP;
    }
    hl_format format = a.format == "csv" ? HL_FORMAT_CSV : HL_FORMAT_JSON;

    std::vector<std::string> keys, values;
    for (const auto &p : a.params) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "histlaw: --param expects key=value, got '" << p << "'\n";
            return 1;
        }
        keys.push_back(p.substr(0, eq));
        values.push_back(p.substr(eq + 1));
    }
    std::string slices_text = std::to_string(a.slices);
    if (a.slices > 0) {
        keys.push_back("slices");
        values.push_back(slices_text);
    }
    std::vector<const char *> kp, vp;
    for (size_t i = 0; i < keys.size(); i++) {
        kp.push_back(keys[i].c_str());
        vp.push_back(values[i].c_str());
    }

    hl_scenario *scenario = nullptr;
    hl_status st;
    if (!a.config.empty()) {
        st = hl_scenario_load_config(a.config.c_str(), kp.data(), vp.data(), kp.size(), &scenario);
    } else if (!a.scenario.empty()) {
        st = hl_scenario_build(a.scenario.c_str(), kp.data(), vp.data(), kp.size(), &scenario);
    } else {
        std::cerr << "histlaw: run needs --scenario or --config\n";
        return 1;
    }
    if (st != HL_OK) {
        return report_error(st);
    }

    hl_limits limits;
    hl_limits_default(&limits);
    char *text = nullptr;
    st = hl_run(scenario, mode, format, a.seed, a.count, &limits, &text);
    hl_scenario_free(scenario);
    if (st != HL_OK) {
        return report_error(st);
    }
    int rc = 0;
    if (a.out.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream f(a.out, std::ios::binary);
        f << text;
        if (!f) {
            std::cerr << "histlaw: cannot write '" << a.out << "'\n";
            rc = 1;
        }
    }
    hl_string_free(text);
    return rc;
}

int cmd_self_check(bool quick, double perturbation) {
    char *report = nullptr;
    int all_passed = 0;
    hl_status st = hl_self_check(quick ? 1 : 0, perturbation, &report, &all_passed);
    if (report) {
        std::fputs(report, stdout);
        hl_string_free(report);
    }
    if (st != HL_OK && st != HL_ERR_CHECK_FAILED) {
        return report_error(st);
    }
    std::cout << (all_passed ? "all checks passed" : "self-check FAILED") << "\n";
    return all_passed ? 0 : 4;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Fine-grained history simulator"};
    app.require_subcommand(1);

    auto *list = app.add_subcommand("list", "List scenario builders and their parameters");

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Build a scenario and run one mode");
    run->add_option("--scenario", run_args.scenario, "Builder name (see list)");
    run->add_option("--config", run_args.config, "JSON scenario config file")->check(CLI::ExistingFile);
    run->add_option("--param", run_args.params, "Builder parameter key=value (repeatable)");
    run->add_option("--mode", run_args.mode, "enumerate | sample | marginals | imap")
        ->check(CLI::IsMember({"enumerate", "sample", "marginals", "imap"}));
    run->add_option("--format", run_args.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--slices", run_args.slices, "Number of time steps (overrides the builder default)");
    run->add_option("--seed", run_args.seed, "Sampler seed");
    run->add_option("--count", run_args.count, "Number of sampled histories");
    run->add_option("--out", run_args.out, "Write results to this file instead of stdout");

    bool quick = false;
    double perturbation = 0;
    auto *check = app.add_subcommand("self-check", "Run the built-in acceptance battery");
    check->add_flag("--quick", quick, "Reduced instance counts");
    check->add_option("--perturb", perturbation, "Relative perturbation injected into the Born check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (*list) {
        return cmd_list();
    }
    if (*run) {
        return cmd_run(run_args);
    }
    return cmd_self_check(quick, perturbation);
}
