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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qiglab/harness.hpp"

namespace {

using nlohmann::json;
using qiglab::CaseResult;
using qiglab::ExperimentRecord;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = qiglab::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> parse_lines(const std::string &text) {
    std::vector<json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            lines.push_back(json::parse(line));
        }
    }
    return lines;
}

std::string strip_wall_clock(const std::string &s) {
    static const std::regex re("\"wall_clock_s\":[^,}]*");
    return std::regex_replace(s, re, "\"wall_clock_s\":_");
}

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

ExperimentRecord sample_record() {
    ExperimentRecord r;
    r.config.command = "duality";
    r.version = "test";
    CaseResult c;
    c.name = "case, with \"quotes\"";
    c.fields = {{"third", 1.0 / 3.0},
                {"tiny", 1e-300},
                {"pi", 3.141592653589793},
                {"neg", -0.1},
                {"count", std::int64_t{42}},
                {"flag", true},
                {"label", std::string("a,\tb")}};
    c.passed = false;
    c.inconclusive = true;
    r.cases.push_back(c);
    return r;
}

TEST(Emit, EmptyRecordGivesHeaderOnlyCsv) {
    ExperimentRecord r;
    r.config.command = "duality";
    std::ostringstream out;
    qiglab::emit_csv(r, out);
    EXPECT_EQ(out.str(), std::string(qiglab::kCsvHeader) + "\n");
}

TEST(Emit, FormatDouble) {
    EXPECT_EQ(qiglab::format_double(0.5), "0.5");
    EXPECT_EQ(qiglab::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(qiglab::format_double(std::numeric_limits<double>::infinity()),
              "null");
    EXPECT_EQ(qiglab::format_double(std::nan("")), "null");
}

TEST(Emit, JsonLinesRoundTripIsBitExact) {
    const auto r = sample_record();
    std::ostringstream out;
    qiglab::emit_jsonl(r, out);
    const auto lines = parse_lines(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0]["type"], "config");
    EXPECT_EQ(lines[2]["type"], "summary");
    const auto &res = lines[1]["results"];
    for (const auto &f : r.cases[0].fields) {
        if (const auto *d = std::get_if<double>(&f.value)) {
            EXPECT_TRUE(bit_equal(res[f.key].get<double>(), *d)) << f.key;
        }
    }
    EXPECT_EQ(res["count"].get<std::int64_t>(), 42);
    EXPECT_EQ(res["flag"].get<bool>(), true);
    EXPECT_EQ(res["label"].get<std::string>(), "a,\tb");
    EXPECT_EQ(lines[1]["name"].get<std::string>(), "case, with \"quotes\"");
}

TEST(Emit, StableKeyOrder) {
    std::ostringstream out;
    qiglab::emit_jsonl(sample_record(), out);
    const std::string s = out.str();
    const auto third = s.find("\"third\"");
    const auto tiny = s.find("\"tiny\"");
    const auto label = s.find("\"label\"");
    EXPECT_LT(third, tiny);
    EXPECT_LT(tiny, label);
    EXPECT_LT(s.find("\"type\":\"config\""), s.find("\"type\":\"case\""));
}

TEST(Emit, InconclusiveFlagColumn) {
    const auto r = sample_record();
    std::ostringstream csv;
    qiglab::emit_csv(r, csv);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, qiglab::kCsvHeader);
    std::string row;
    int rows = 0;
    while (std::getline(in, row)) {
        if (row.rfind("duality,", 0) == 0) {
            ++rows;
            EXPECT_EQ(row.substr(row.size() - std::strlen(",false,true")),
                      ",false,true");
        }
    }
    EXPECT_GE(rows, 6);
    std::ostringstream js;
    qiglab::emit_jsonl(r, js);
    const auto lines = parse_lines(js.str());
    EXPECT_TRUE(lines[1]["inconclusive"].get<bool>());
    EXPECT_TRUE(lines[2]["inconclusive"].get<int>() == 1);
    EXPECT_EQ(r.exit_code(), qiglab::kExitInconclusive);
}

TEST(Record, ExitCodes) {
    ExperimentRecord r;
    EXPECT_EQ(r.exit_code(), qiglab::kExitPass);
    CaseResult ok;
    ok.passed = true;
    r.cases.push_back(ok);
    EXPECT_EQ(r.exit_code(), qiglab::kExitPass);
    CaseResult maybe;
    maybe.inconclusive = true;
    r.cases.push_back(maybe);
    EXPECT_EQ(r.exit_code(), qiglab::kExitInconclusive);
    CaseResult bad;
    r.cases.push_back(bad);
    EXPECT_EQ(r.exit_code(), qiglab::kExitFail);
}

TEST(Cli, DualityPositiveExample) {
    const auto r = cli({"duality", "--alpha", "0.5", "--metric", "wyd", "--dim",
                        "2", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto lines = parse_lines(r.out);
    ASSERT_GE(lines.size(), 3u);
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        EXPECT_LE(lines[i]["results"]["defect"].get<double>(), 5e-5);
        EXPECT_TRUE(lines[i]["passed"].get<bool>());
    }
    EXPECT_EQ(lines.back()["exit_code"].get<int>(), 0);
}

TEST(Cli, DualityFalsificationExample) {
    const std::vector<std::string> args = {"duality", "--alpha", "0",
                                           "--metric", "bures", "--dim",
                                           "2", "--seed", "7"};
    const auto r = cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    const auto lines = parse_lines(r.out);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        worst = std::max(worst, lines[i]["results"]["defect"].get<double>());
        EXPECT_EQ(lines[i]["results"]["verdict"], "not_dual");
    }
    EXPECT_GE(worst, 1e-2);
    auto strict = args;
    strict.insert(strict.end(), {"--expect", "dual"});
    EXPECT_EQ(cli(strict).code, qiglab::kExitFail);
}

TEST(Cli, InconclusiveExitCode) {
    const auto r = cli({"duality", "--alpha", "0", "--metric", "bures", "--dim",
                        "2", "--tol", "1e-6", "--gap", "100"});
    EXPECT_EQ(r.code, qiglab::kExitInconclusive);
    const auto lines = parse_lines(r.out);
    EXPECT_TRUE(lines[1]["inconclusive"].get<bool>());
}

TEST(Cli, MonotonicityExample) {
    const auto r = cli({"monotonicity", "--metric", "wyd", "--alpha", "0.4",
                        "--trials", "1000", "--seed", "7"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto lines = parse_lines(r.out);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_GE(lines[1]["results"]["min_margin"].get<double>(), -1e-9);
    EXPECT_EQ(lines[1]["results"]["trials"].get<int>(), 1000);
}

TEST(Cli, EveryCommandRunsWithDefaults) {
    for (const auto &name : qiglab::command_names()) {
        std::vector<std::string> args = {name};
        if (name == "monotonicity") {
            args.insert(args.end(), {"--trials", "40"});
        }
        const auto r = cli(args);
        EXPECT_EQ(r.code, 0) << name << ": " << r.err;
        const auto lines = parse_lines(r.out);
        ASSERT_GE(lines.size(), 3u) << name;
        EXPECT_EQ(lines.front()["command"], name);
        EXPECT_EQ(lines.back()["type"], "summary");
    }
}

TEST(Cli, DeterministicModuloWallClock) {
    const std::vector<std::string> args = {"uniqueness-scan", "--alpha", "0.5",
                                           "--seed", "11"};
    const auto a = cli(args);
    const auto b = cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(strip_wall_clock(a.out), strip_wall_clock(b.out));
    EXPECT_NE(a.out.find("wall_clock_s"), std::string::npos);
    const auto c = cli({"uniqueness-scan", "--alpha", "0.5", "--seed", "12"});
    EXPECT_NE(strip_wall_clock(a.out), strip_wall_clock(c.out));
}

TEST(Cli, UsageErrorsNameTheField) {
    struct Bad {
        std::vector<std::string> args;
        std::string field;
    };
    const std::vector<Bad> bad = {
        {{"duality", "--alpha", "1.5"}, "alpha"},
        {{"duality", "--trials", "-3"}, "trials"},
        {{"duality", "--tol", "-1"}, "tol"},
        {{"duality", "--metric", "nonsense"}, "metric"},
        {{"duality", "--manifold", "torus"}, "manifold"},
        {{"duality", "--format", "xml"}, "format"},
        {{"duality", "--steps", "0"}, "steps"},
    };
    for (const auto &b : bad) {
        const auto r = cli(b.args);
        EXPECT_EQ(r.code, qiglab::kExitUsage) << b.field;
        EXPECT_NE(r.err.find(b.field), std::string::npos) << r.err;
    }
    EXPECT_EQ(cli({"frobnicate"}).code, qiglab::kExitUsage);
    EXPECT_EQ(cli({}).code, qiglab::kExitUsage);
    EXPECT_EQ(cli({"duality", "--bogus-flag"}).code, qiglab::kExitUsage);
}

TEST(Cli, ValidateDirectly) {
    qiglab::ExperimentConfig c;
    c.command = "duality";
    c.alphas = {0.5, -2.0};
    try {
        c.validate();
        FAIL() << "expected UsageError";
    } catch (const qiglab::UsageError &e) {
        EXPECT_EQ(e.field(), "alpha");
    }
}

TEST(Cli, UnwritableOutput) {
    const auto r = cli({"potential", "--output", "/nonexistent-dir/x/out.jsonl"});
    EXPECT_EQ(r.code, qiglab::kExitUsage);
    EXPECT_NE(r.err.find("output"), std::string::npos);
}

TEST(Cli, OutputFileAndCsv) {
    const auto path =
        std::filesystem::temp_directory_path() / "qiglab_test_out.csv";
    const auto r = cli({"potential", "--format", "csv", "-o", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, qiglab::kCsvHeader);
    std::string row;
    EXPECT_TRUE(static_cast<bool>(std::getline(in, row)));
    std::filesystem::remove(path);
}

TEST(Cli, ConfigFilePrecedence) {
    const auto path =
        std::filesystem::temp_directory_path() / "qiglab_test_config.ini";
    {
        std::ofstream f(path);
        f << "alpha=0.5\nseed=3\nmetric=bures\n";
    }
    const auto r = cli({"duality", "--config", path.string(), "--seed", "9"});
    std::filesystem::remove(path);
    const auto lines = parse_lines(r.out);
    ASSERT_FALSE(lines.empty()) << r.err;
    const auto &cfg = lines.front();
    EXPECT_EQ(cfg["seed"].get<std::uint64_t>(), 9u);
    EXPECT_EQ(cfg["alpha"], json::array({0.5}));
    EXPECT_EQ(cfg["metric"], json::array({"bures"}));
    EXPECT_EQ(cfg["grid"].get<int>(), 3);
}

TEST(Cli, HelpDocumentsCsvColumns) {
    const auto r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE((r.out + r.err).find(qiglab::kCsvHeader), std::string::npos);
}

TEST(Cli, Version) {
    const auto r = cli({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE((r.out + r.err).find("0.1.0"), std::string::npos);
}

} // namespace
