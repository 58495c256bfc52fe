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

#ifndef HISTLAW_REPORT_H
#define HISTLAW_REPORT_H

#include <string>

#include "engine.h"

namespace histlaw {

enum class RunMode { enumerate, sample, marginals, imap };
enum class OutputFormat { json, csv };

RunMode parse_mode(const std::string &text);
OutputFormat parse_format(const std::string &text);
const char *mode_name(RunMode mode);

struct RunOptions {
    RunMode mode = RunMode::marginals;
    OutputFormat format = OutputFormat::json;
    uint64_t seed = 0;
    size_t count = 1000;
    Limits limits;
};

inline constexpr const char *kSchemaId = "histlaw-result/1";
inline constexpr const char *kCsvHistoryHeader =
    "history_id,slice_sequence,feynman_re,feynman_im,interference_product,probability";

/// Runs one mode and serializes the result. Numbers use 17 significant digits,
/// so output is byte-identical for identical inputs.
std::string run_report(const Scenario &scenario, const RunOptions &options);

/// printf("%.17g") with JSON-safe spelling of non-finite values.
std::string format_number(double x);

/// Scenario name plus builder parameters from a JSON config file:
/// {"scenario": "name", "params": {"key": value, ...}}.
struct ScenarioConfig {
    std::string scenario;
    std::map<std::string, std::string> params;
};
ScenarioConfig load_config(const std::string &path);
ScenarioConfig parse_config(const std::string &text);

}  // namespace histlaw

#endif
