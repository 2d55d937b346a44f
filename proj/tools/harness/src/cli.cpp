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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qig/error.hpp"
#include "qig/version.hpp"
#include "qiglab/harness.hpp"

namespace qiglab {

namespace {

constexpr const char *kFooter = R"(Commands (default alphas / dims in brackets):
  duality             duality defect of (g_f, nabla^alpha, nabla^-alpha)
                      on the documented families [alpha -0.5,0,0.5; metric wyd]
  transport-duality   g(tau_alpha Y, tau_-alpha Z) along a documented curve
                      [alpha 0,0.5; metric wyd,bures]
  potential           Hessian of (2/(1+alpha)) Tr sigma vs the metric, dual
                      coordinate and Legendre checks [alpha -0.5,0,0.5; dim 2]
  uniqueness-scan     defects of WYD, its multiples and competitors [alpha 0.5]
  monotonicity        Monte-Carlo contraction under channels [trials 1000]
  flatness            flatness in affine coordinates, path dependence on the
                      states [alpha -0.5,0,0.5; dim 2]
  convexity-failure   nabla^alpha vs the convex mix of nabla^(+-1), classical
                      reduction [alpha -0.5,0,0.5]
  entropy-projection  relative-entropy projection onto Gibbs families
                      [dim 3; trials 20]
  metric-table        metric values and kernel/direct WYD agreement
                      [alpha -0.9,-0.5,0,0.5,0.9; dim 2,3,4; trials 50]

Metrics: wyd (WYD at p=(1+alpha)/2, BKM at alpha=+-1), wyd:<p>, bkm, bures, rld.
With --expect auto, a case passes when the verdict matches the theory: dual
exactly for WYD((1+alpha)/2).

CSV columns: command,case_index,case_name,key,value,passed,inconclusive
  (one row per result value; header only when there are no cases)
JSON lines: a config line, one case line per case, a summary line with
  wall_clock_s.
Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 inconclusive.
Config file: flat key = value lines using the long option names; command
  line flags override the file, which overrides the defaults.)";

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"qiglab: numerical laboratory for dual connections on "
                 "density matrices"};
    app.footer(kFooter);
    app.set_version_flag("--version", std::string(qig::kVersion));
    app.set_config("--config", "", "Read options from a key = value file");

    ExperimentConfig cfg;
    app.add_option("command", cfg.command, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--alpha", cfg.alphas, "Comma-separated alpha values")
        ->delimiter(',');
    app.add_option("--metric", cfg.metrics, "Comma-separated metric names")
        ->delimiter(',');
    app.add_option("--pairs", cfg.pairs,
                   "Comma-separated metric@alpha pairs (duality)")
        ->delimiter(',');
    app.add_option("--dim", cfg.dims, "Comma-separated matrix sizes")
        ->delimiter(',');
    app.add_option("--family", cfg.family, "documented or witness")
        ->capture_default_str();
    app.add_option("--manifold", cfg.manifold, "both, states or extended")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Trial count (0: command default)");
    app.add_option("--grid", cfg.grid, "Sample points per family")
        ->capture_default_str();
    app.add_option("--steps", cfg.steps, "Transport steps (even)")
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "Positive tolerance (0: default)");
    app.add_option("--gap", cfg.gap, "Falsification gap (0: default)");
    app.add_option("--expect", cfg.expect, "auto, dual or not-dual")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "jsonl or csv")
        ->capture_default_str();
    app.add_option("--output,-o", cfg.output, "Output path, - for stdout")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const ExperimentRecord record = run(cfg);
        const Format format = parse_format(cfg.format);
        if (cfg.output == "-") {
            emit(record, format, out);
        } else {
            std::ofstream file(cfg.output);
            if (!file) {
                err << "output: cannot open '" << cfg.output << "' for writing\n";
                return kExitUsage;
            }
            emit(record, format, file);
            if (!file) {
                err << "output: write to '" << cfg.output << "' failed\n";
                return kExitUsage;
            }
        }
        return record.exit_code();
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qig::DiscretizationError &e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qiglab");
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace qiglab
