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

#ifndef HISTLAW_SELF_CHECK_H
#define HISTLAW_SELF_CHECK_H

#include <string>
#include <vector>

namespace histlaw {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Largest deviation from the expected value seen by the check.
    double max_discrepancy = 0;
    std::string detail;
    double seconds = 0;
};

struct SelfCheckOptions {
    /// Fewer random instances and samples.
    bool quick = false;
    /// Relative perturbation applied to the history side of the Born check.
    double perturbation = 0;
};

/// Runs the built-in battery, one result per check, in id order.
std::vector<CheckResult> self_check(const SelfCheckOptions &options = {});

/// "PASS  3 three_history_correction  max_dev=... (0.01 s)".
std::string format_check(const CheckResult &result);

}  // namespace histlaw

#endif
