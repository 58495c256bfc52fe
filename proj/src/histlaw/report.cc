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

#include "report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "history_law.h"
#include "json.hpp"

namespace histlaw {

namespace {

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\t':
                out += "\\t";
                break;
            default:
                if ((unsigned char)c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// Minimal streaming JSON writer; commas are inserted automatically.
class Writer {
   public:
    void begin_object() {
        prefix();
        out_ += '{';
        first_.push_back(true);
    }
    void end_object() {
        first_.pop_back();
        out_ += '}';
    }
    void begin_array() {
        prefix();
        out_ += '[';
        first_.push_back(true);
    }
    void end_array() {
        first_.pop_back();
        out_ += ']';
    }
    void key(const std::string &k) {
        prefix();
        out_ += '"' + escape(k) + "\":";
        after_key_ = true;
    }
    void str(const std::string &v) {
        prefix();
        out_ += '"' + escape(v) + '"';
    }
    void num(double v) {
        prefix();
        out_ += format_number(v);
    }
    void integer(uint64_t v) {
        prefix();
        out_ += std::to_string(v);
    }
    void boolean(bool v) {
        prefix();
        out_ += v ? "true" : "false";
    }
    void newline() {
        out_ += '\n';
    }
    std::string take() {
        out_ += '\n';
        return std::move(out_);
    }

    void field(const std::string &k, const std::string &v) {
        key(k);
        str(v);
    }
    void field(const std::string &k, const char *v) {
        key(k);
        str(v);
    }
    void field(const std::string &k, double v) {
        key(k);
        num(v);
    }
    void field_int(const std::string &k, uint64_t v) {
        key(k);
        integer(v);
    }
    void field_bool(const std::string &k, bool v) {
        key(k);
        boolean(v);
    }

   private:
    void prefix() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) {
                out_ += ',';
            }
            first_.back() = false;
        }
    }

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

void write_header(Writer &w, const Scenario &s, const RunOptions &o) {
    w.field("schema", kSchemaId);
    w.key("scenario");
    w.begin_object();
    w.field("name", s.name);
    w.key("params");
    w.begin_object();
    for (const auto &[k, v] : s.params) {
        w.field(k, v);
    }
    w.end_object();
    w.field_int("slices", s.slice_count());
    w.field_int("sites", s.site_count);
    w.field_int("tags", s.tag_count);
    w.field("order", s.second_order() ? "second" : "first");
    w.field_bool("unitary", s.unitary);
    w.end_object();
    w.field("mode", mode_name(o.mode));
    w.field_int("seed", o.seed);
    w.field("generator", kGeneratorName);
    w.key("tolerances");
    w.begin_object();
    w.field("probability", kProbabilityTolerance);
    w.field("norm_drift", kNormDriftTolerance);
    w.field("prune", kPruneThreshold);
    w.end_object();
    w.key("limits");
    w.begin_object();
    w.field_int("max_states", o.limits.max_states);
    w.field_int("max_histories", o.limits.max_histories);
    w.end_object();
}

void write_history(Writer &w, const Scenario &s, size_t id, const History &h) {
    w.newline();
    w.begin_object();
    w.field_int("id", id);
    w.field("slices", s.render(h.slices));
    w.key("feynman");
    w.begin_array();
    w.num(h.feynman_amplitude.real());
    w.num(h.feynman_amplitude.imag());
    w.end_array();
    w.field("interference_product", h.interference_product);
    w.field("probability", h.probability);
    w.end_object();
}

std::string csv_field(const std::string &v) {
    if (v.find_first_of(",\"\n") == std::string::npos) {
        return v;
    }
    std::string out = "\"";
    for (char c : v) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + '"';
}

std::string csv_histories(const Scenario &s, const std::vector<History> &hs) {
    std::string out = kCsvHistoryHeader;
    out += '\n';
    for (size_t i = 0; i < hs.size(); i++) {
        const auto &h = hs[i];
        out += std::to_string(i) + ',' + csv_field(s.render(h.slices)) + ',' + format_number(h.feynman_amplitude.real()) + ',' +
               format_number(h.feynman_amplitude.imag()) + ',' + format_number(h.interference_product) + ',' +
               format_number(h.probability) + '\n';
    }
    return out;
}

/// Final outcome probabilities keyed by rendered final distribution.
std::map<std::string, double> final_outcomes(const Scenario &s, const Limits &limits) {
    auto fields = propagate(s, s.slice_count(), limits);
    std::map<std::string, double> out;
    for (const auto &[d, a] : fields.back().entries) {
        auto key = s.second_order() ? split_pair(d).second : d;
        out[s.render(key)] += std::norm(a);
    }
    return out;
}

struct ImapEntry {
    size_t slice;
    std::string distribution;
    double born;
    double interference;
};

std::vector<ImapEntry> imap_entries(const Scenario &s, const Limits &limits) {
    Chain chain = make_chain(s);
    ForwardPass pass = forward_pass(chain, chain.steps, limits);
    std::vector<ImapEntry> out;
    for (size_t k = 0; k < pass.fields.size(); k++) {
        std::set<Distribution> states;
        for (const auto &[d, a] : pass.fields[k]) {
            states.insert(d);
        }
        for (const auto &[d, in] : pass.inflows[k]) {
            states.insert(d);
        }
        for (const auto &d : states) {
            auto it = pass.fields[k].find(d);
            double born = it == pass.fields[k].end() ? 0 : std::norm(it->second);
            std::string name;
            if (chain.pairs) {
                auto [prev, cur] = split_pair(d);
                name = s.render(prev) + "|" + s.render(cur);
            } else {
                name = s.render(d);
            }
            out.push_back({k + chain.slice_offset, name, born, pass.interference(k, d)});
        }
    }
    return out;
}

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string out;
    bool first = true;
    for (const auto &c : cells) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += csv_field(c);
    }
    return out + '\n';
}

}  // namespace

RunMode parse_mode(const std::string &text) {
    if (text == "enumerate") {
        return RunMode::enumerate;
    }
    if (text == "sample") {
        return RunMode::sample;
    }
    if (text == "marginals") {
        return RunMode::marginals;
    }
    if (text == "imap") {
        return RunMode::imap;
    }
    throw InvalidArgument("unknown mode '" + text + "' (enumerate|sample|marginals|imap)");
}

OutputFormat parse_format(const std::string &text) {
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw InvalidArgument("unknown format '" + text + "' (json|csv)");
}

const char *mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::enumerate:
            return "enumerate";
        case RunMode::sample:
            return "sample";
        case RunMode::marginals:
            return "marginals";
        case RunMode::imap:
            return "imap";
    }
    return "?";
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "null";
    }
    if (std::isinf(x)) {
        return x > 0 ? "1e999" : "-1e999";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string run_report(const Scenario &s, const RunOptions &o) {
    Writer w;
    if (o.mode == RunMode::enumerate || o.mode == RunMode::sample) {
        std::vector<History> hs;
        ConsistencyReport check;
        if (o.mode == RunMode::enumerate) {
            hs = enumerate_histories(s, o.limits);
            check = marginal_consistency(s, o.limits);
        } else {
            hs = sample_histories(s, o.seed, o.count, o.limits);
        }
        if (o.format == OutputFormat::csv) {
            return csv_histories(s, hs);
        }
        w.begin_object();
        write_header(w, s, o);
        if (o.mode == RunMode::enumerate) {
            w.key("born_check");
            w.begin_object();
            w.field_bool("passed", check.passed);
            w.field("max_discrepancy", check.max_discrepancy);
            w.field("total_probability", check.total_probability);
            w.field_int("outcomes", check.outcome_count);
            w.end_object();
        } else {
            w.field_int("count", o.count);
        }
        w.field_int("history_count", hs.size());
        w.key("histories");
        w.begin_array();
        for (size_t i = 0; i < hs.size(); i++) {
            write_history(w, s, i, hs[i]);
        }
        w.end_array();
        w.end_object();
        return w.take();
    }

    if (o.mode == RunMode::marginals) {
        auto marginals = final_marginals(s, o.limits);
        auto outcomes = final_outcomes(s, o.limits);
        if (o.format == OutputFormat::csv) {
            std::string out = "kind,name,probability\n";
            for (const auto &[k, v] : marginals) {
                out += csv_line({"label", k, format_number(v)});
            }
            for (const auto &[k, v] : outcomes) {
                out += csv_line({"outcome", k, format_number(v)});
            }
            return out;
        }
        double total = 0;
        for (const auto &[k, v] : outcomes) {
            total += v;
        }
        w.begin_object();
        write_header(w, s, o);
        w.key("marginals");
        w.begin_object();
        for (const auto &[k, v] : marginals) {
            w.field(k, v);
        }
        w.end_object();
        w.key("outcomes");
        w.begin_object();
        for (const auto &[k, v] : outcomes) {
            w.field(k, v);
        }
        w.end_object();
        w.field("total_norm", total);
        w.end_object();
        return w.take();
    }

    auto entries = imap_entries(s, o.limits);
    if (o.format == OutputFormat::csv) {
        std::string out = "slice,distribution,born,interference\n";
        for (const auto &e : entries) {
            out += csv_line({std::to_string(e.slice), e.distribution, format_number(e.born), format_number(e.interference)});
        }
        return out;
    }
    w.begin_object();
    write_header(w, s, o);
    w.key("imap");
    w.begin_array();
    for (const auto &e : entries) {
        w.newline();
        w.begin_object();
        w.field_int("slice", e.slice);
        w.field("distribution", e.distribution);
        w.field("born", e.born);
        w.field("interference", e.interference);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.take();
}

ScenarioConfig parse_config(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    if (!j.is_object() || !j.contains("scenario") || !j["scenario"].is_string()) {
        throw InvalidArgument("config: expected an object with a string 'scenario'");
    }
    ScenarioConfig c;
    c.scenario = j["scenario"].get<std::string>();
    if (!j.contains("params")) {
        return c;
    }
    if (!j["params"].is_object()) {
        throw InvalidArgument("config: 'params' must be an object");
    }
    for (const auto &[k, v] : j["params"].items()) {
        if (v.is_string()) {
            c.params[k] = v.get<std::string>();
        } else if (v.is_boolean()) {
            c.params[k] = v.get<bool>() ? "true" : "false";
        } else if (v.is_number_integer()) {
            c.params[k] = std::to_string(v.get<long long>());
        } else if (v.is_number()) {
            c.params[k] = format_number(v.get<double>());
        } else if (v.is_array()) {
            std::string schedule;
            for (const auto &e : v) {
                if (!e.is_boolean() && !e.is_number_integer()) {
                    throw InvalidArgument("config: parameter '" + k + "' array entries must be bool or 0/1");
                }
                schedule += (e.is_boolean() ? e.get<bool>() : e.get<long long>() != 0) ? '1' : '0';
            }
            c.params[k] = schedule;
        } else {
            throw InvalidArgument("config: unsupported value for parameter '" + k + "'");
        }
    }
    return c;
}

ScenarioConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("config: cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace histlaw
