// Copyright 2026 The qiglab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qiglab/harness.hpp"

namespace qiglab {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Format parse_format(const std::string &name) {
    if (name == "jsonl") {
        return Format::jsonl;
    }
    if (name == "csv") {
        return Format::csv;
    }
    throw UsageError("format", "expected jsonl or csv, got '" + name + "'");
}

namespace {

std::string json_string(const std::string &s) {
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
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
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

const char *json_bool(bool b) { return b ? "true" : "false"; }

std::string value_text(const Value &v, bool json) {
    if (const auto *d = std::get_if<double>(&v)) {
        return format_double(*d);
    }
    if (const auto *i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    if (const auto *b = std::get_if<bool>(&v)) {
        return json_bool(*b);
    }
    const auto &s = std::get<std::string>(v);
    return json ? json_string(s) : s;
}

template <class T, class F>
std::string json_array(const std::vector<T> &xs, F fmt) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += fmt(xs[i]);
    }
    return out + "]";
}

std::string csv_cell(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

} // namespace

void emit_jsonl(const ExperimentRecord &record, std::ostream &out) {
    const ExperimentConfig &c = record.config;
    out << "{\"type\":\"config\""
        << ",\"command\":" << json_string(c.command)
        << ",\"alpha\":" << json_array(c.alphas, format_double)
        << ",\"metric\":" << json_array(c.metrics, json_string)
        << ",\"pairs\":" << json_array(c.pairs, json_string)
        << ",\"dim\":"
        << json_array(c.dims, [](int d) { return std::to_string(d); })
        << ",\"family\":" << json_string(c.family)
        << ",\"manifold\":" << json_string(c.manifold)
        << ",\"seed\":" << c.seed << ",\"trials\":" << c.trials
        << ",\"grid\":" << c.grid << ",\"steps\":" << c.steps
        << ",\"tol\":" << format_double(c.tol)
        << ",\"gap\":" << format_double(c.gap)
        << ",\"expect\":" << json_string(c.expect)
        << ",\"format\":" << json_string(c.format)
        << ",\"output\":" << json_string(c.output)
        << ",\"version\":" << json_string(record.version) << "}\n";
    for (std::size_t i = 0; i < record.cases.size(); ++i) {
        const CaseResult &cr = record.cases[i];
        out << "{\"type\":\"case\",\"index\":" << i
            << ",\"name\":" << json_string(cr.name)
            << ",\"passed\":" << json_bool(cr.passed)
            << ",\"inconclusive\":" << json_bool(cr.inconclusive)
            << ",\"results\":{";
        for (std::size_t k = 0; k < cr.fields.size(); ++k) {
            if (k > 0) {
                out << ",";
            }
            out << json_string(cr.fields[k].key) << ":"
                << value_text(cr.fields[k].value, true);
        }
        out << "}}\n";
    }
    out << "{\"type\":\"summary\",\"command\":" << json_string(c.command)
        << ",\"cases\":" << record.cases.size()
        << ",\"passed\":" << json_bool(record.passed())
        << ",\"inconclusive\":" << json_bool(record.inconclusive())
        << ",\"exit_code\":" << record.exit_code()
        << ",\"version\":" << json_string(record.version)
        << ",\"wall_clock_s\":" << format_double(record.wall_clock_s) << "}\n";
}

void emit_csv(const ExperimentRecord &record, std::ostream &out) {
    out << kCsvHeader << "\n";
    for (std::size_t i = 0; i < record.cases.size(); ++i) {
        const CaseResult &cr = record.cases[i];
        for (const Field &f : cr.fields) {
            out << csv_cell(record.config.command) << "," << i << ","
                << csv_cell(cr.name) << "," << csv_cell(f.key) << ","
                << csv_cell(value_text(f.value, false)) << ","
                << json_bool(cr.passed) << "," << json_bool(cr.inconclusive)
                << "\n";
        }
    }
}

void emit(const ExperimentRecord &record, Format format, std::ostream &out) {
    if (format == Format::jsonl) {
        emit_jsonl(record, out);
    } else {
        emit_csv(record, out);
    }
}

} // namespace qiglab
