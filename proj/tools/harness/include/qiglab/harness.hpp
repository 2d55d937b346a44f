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

/** @file
 * Experiment runner behind the qiglab command-line tool.
 *
 * A run maps an ExperimentConfig to an ExperimentRecord: one case per
 * (parameter combination, family) with named numeric results and pass /
 * inconclusive flags. Records are emitted as JSON lines or long-format CSV.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qiglab {

/// Invalid configuration; the message starts with the offending field.
class UsageError : public std::invalid_argument {
  public:
    UsageError(const std::string &field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(field) {}
    [[nodiscard]] const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitUsage = 2,
    kExitInconclusive = 3,
};

[[nodiscard]] const std::vector<std::string> &command_names();

struct ExperimentConfig {
    std::string command;
    std::vector<double> alphas;      ///< empty: command default
    std::vector<std::string> metrics;
    std::vector<std::string> pairs;  ///< "metric@alpha"
    std::vector<int> dims;           ///< empty: command default
    std::string family = "documented";
    std::string manifold = "both";
    std::uint64_t seed = 7;
    int trials = 0;                  ///< 0: command default
    int grid = 3;
    int steps = 256;
    double tol = 0.0;                ///< 0: command default
    double gap = 0.0;                ///< 0: command default
    std::string expect = "auto";
    std::string format = "jsonl";
    std::string output = "-";

    /// Throws UsageError naming the field.
    void validate() const;
};

using Value = std::variant<double, std::int64_t, bool, std::string>;

struct Field {
    std::string key;
    Value value;
};

struct CaseResult {
    std::string name;
    std::vector<Field> fields;
    bool passed = false;
    bool inconclusive = false;
};

struct ExperimentRecord {
    ExperimentConfig config;
    std::vector<CaseResult> cases;
    double wall_clock_s = 0.0;
    std::string version;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] bool inconclusive() const;
    /// 1 if any case failed, else 3 if any was inconclusive, else 0.
    [[nodiscard]] int exit_code() const;
};

/// Validates, then dispatches on config.command.
[[nodiscard]] ExperimentRecord run(const ExperimentConfig &config);

enum class Format { jsonl, csv };

[[nodiscard]] Format parse_format(const std::string &name);

/// JSON lines: a "config" line, one "case" line per case, then a
/// "summary" line (the only one carrying wall_clock_s).
void emit_jsonl(const ExperimentRecord &record, std::ostream &out);

/// Long format, one row per result value.
void emit_csv(const ExperimentRecord &record, std::ostream &out);

void emit(const ExperimentRecord &record, Format format, std::ostream &out);

inline constexpr const char *kCsvHeader =
    "command,case_index,case_name,key,value,passed,inconclusive";

/// %.17g, or null for non-finite values.
[[nodiscard]] std::string format_double(double v);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace qiglab
