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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "qig/duality_lab.hpp"
#include "qig/error.hpp"
#include "qig/families.hpp"
#include "qig/random.hpp"
#include "qig/version.hpp"
#include "qiglab/harness.hpp"

namespace qiglab {

using qig::ManifoldKind;
using qig::MonotoneFunctionSpec;
using qig::Verdict;

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{
        "duality",         "transport-duality", "potential",
        "uniqueness-scan", "monotonicity",      "flatness",
        "convexity-failure", "entropy-projection", "metric-table"};
    return names;
}

namespace {

bool one_of(const std::string &v, std::initializer_list<const char *> opts) {
    return std::any_of(opts.begin(), opts.end(),
                       [&](const char *o) { return v == o; });
}

struct PairSpec {
    std::string metric;
    double alpha;
};

PairSpec parse_pair(const std::string &s) {
    const auto at = s.rfind('@');
    if (at == std::string::npos || at == 0 || at + 1 == s.size()) {
        throw UsageError("pairs", "expected metric@alpha, got '" + s + "'");
    }
    std::size_t used = 0;
    double alpha = 0.0;
    try {
        alpha = std::stod(s.substr(at + 1), &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != s.size() - at - 1) {
        throw UsageError("pairs", "bad alpha in '" + s + "'");
    }
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        throw UsageError("pairs", "alpha outside [-1, 1] in '" + s + "'");
    }
    return {s.substr(0, at), alpha};
}

MonotoneFunctionSpec resolve_metric(const std::string &name, double alpha,
                                    const char *field = "metric") {
    try {
        return qig::metric_by_name(name, alpha);
    } catch (const qig::ParameterError &e) {
        throw UsageError(field, e.what());
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (std::find(command_names().begin(), command_names().end(), command) ==
        command_names().end()) {
        throw UsageError("command", "unknown command '" + command + "'");
    }
    for (double a : alphas) {
        if (!(a >= -1.0 && a <= 1.0)) {
            throw UsageError("alpha", "values must lie in [-1, 1]");
        }
    }
    for (const auto &m : metrics) {
        (void)resolve_metric(m, 0.0);
    }
    for (const auto &p : pairs) {
        const PairSpec ps = parse_pair(p);
        (void)resolve_metric(ps.metric, ps.alpha, "pairs");
    }
    for (int d : dims) {
        if (d < 1 || d > 8) {
            throw UsageError("dim", "values must lie in [1, 8]");
        }
    }
    if (!one_of(family, {"documented", "witness"})) {
        throw UsageError("family", "expected documented or witness");
    }
    if (!one_of(manifold, {"both", "states", "extended"})) {
        throw UsageError("manifold", "expected both, states or extended");
    }
    if (trials < 0) {
        throw UsageError("trials", "must be positive");
    }
    if (grid < 1) {
        throw UsageError("grid", "must be positive");
    }
    if (steps < 2 || steps % 2 != 0) {
        throw UsageError("steps", "must be a positive even number");
    }
    if (tol < 0.0 || !std::isfinite(tol)) {
        throw UsageError("tol", "must be positive");
    }
    if (gap < 0.0 || !std::isfinite(gap)) {
        throw UsageError("gap", "must be positive");
    }
    if (!one_of(expect, {"auto", "dual", "not-dual"})) {
        throw UsageError("expect", "expected auto, dual or not-dual");
    }
    (void)parse_format(format);
    if (output.empty()) {
        throw UsageError("output", "empty path");
    }
}

bool ExperimentRecord::passed() const {
    return std::all_of(cases.begin(), cases.end(),
                       [](const CaseResult &c) { return c.passed; });
}

bool ExperimentRecord::inconclusive() const {
    return std::any_of(cases.begin(), cases.end(),
                       [](const CaseResult &c) { return c.inconclusive; });
}

int ExperimentRecord::exit_code() const {
    for (const auto &c : cases) {
        if (!c.passed && !c.inconclusive) {
            return kExitFail;
        }
    }
    return inconclusive() ? kExitInconclusive : kExitPass;
}

namespace {

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

class CaseBuilder {
  public:
    explicit CaseBuilder(std::string name) { c_.name = std::move(name); }
    CaseBuilder &num(const std::string &k, double v) {
        c_.fields.push_back({k, v});
        return *this;
    }
    CaseBuilder &integer(const std::string &k, std::int64_t v) {
        c_.fields.push_back({k, v});
        return *this;
    }
    CaseBuilder &flag(const std::string &k, bool v) {
        c_.fields.push_back({k, v});
        return *this;
    }
    CaseBuilder &text(const std::string &k, std::string v) {
        c_.fields.push_back({k, std::move(v)});
        return *this;
    }
    CaseResult done(bool passed, bool inconclusive = false) {
        c_.passed = passed && !inconclusive;
        c_.inconclusive = inconclusive;
        return std::move(c_);
    }

  private:
    CaseResult c_;
};

struct Ctx {
    const ExperimentConfig &cfg;
    std::vector<CaseResult> &out;

    std::vector<double> alphas(std::vector<double> fallback) const {
        return cfg.alphas.empty() ? fallback : cfg.alphas;
    }
    std::vector<int> dims(std::vector<int> fallback) const {
        return cfg.dims.empty() ? fallback : cfg.dims;
    }
    std::vector<std::string> metrics(std::vector<std::string> fallback) const {
        return cfg.metrics.empty() ? fallback : cfg.metrics;
    }
    int trials(int fallback) const { return cfg.trials > 0 ? cfg.trials : fallback; }
    double tol(double fallback) const { return cfg.tol > 0.0 ? cfg.tol : fallback; }
    double gap(double fallback) const { return cfg.gap > 0.0 ? cfg.gap : fallback; }
    bool wants(ManifoldKind k) const {
        return cfg.manifold == "both" || cfg.manifold == qig::to_string(k);
    }
};

bool same_function(const MonotoneFunctionSpec &a, const MonotoneFunctionSpec &b) {
    for (int k = -6; k <= 6; ++k) {
        const double x = std::ldexp(1.0, k);
        const double fa = a(x);
        const double fb = b(x);
        if (std::abs(fa - fb) > 1e-12 * std::max(1.0, std::abs(fb))) {
            return false;
        }
    }
    return true;
}

/// Theory: f makes the (+-alpha)-connections dual iff f is WYD((1+alpha)/2).
bool expect_dual(const Ctx &ctx, const MonotoneFunctionSpec &f, double alpha) {
    if (ctx.cfg.expect == "dual") {
        return true;
    }
    if (ctx.cfg.expect == "not-dual") {
        return false;
    }
    return same_function(f, qig::petz::wyd_for_alpha(alpha));
}

CaseResult verdict_case(CaseBuilder b, double value, double tol, double gap,
                        bool want_dual) {
    const Verdict v = qig::classify(value, tol, gap);
    b.num("tol", tol)
        .num("gap", gap)
        .text("expected", want_dual ? "dual" : "not_dual")
        .text("verdict", qig::to_string(v));
    const bool inconclusive = v == Verdict::inconclusive;
    return b.done((v == Verdict::dual) == want_dual, inconclusive);
}

std::vector<qig::DefectCase> selected_cases(const Ctx &ctx) {
    if (ctx.cfg.family == "witness") {
        return {qig::witness_case(ctx.cfg.seed, ctx.cfg.grid)};
    }
    std::vector<qig::DefectCase> out;
    for (auto &c : qig::documented_ensemble(ctx.cfg.seed, ctx.cfg.grid)) {
        const auto n = static_cast<int>(
            c.family.point(qig::RealVector::Zero(c.family.param_dim())).dim());
        const bool dim_ok = ctx.cfg.dims.empty() ||
                            std::find(ctx.cfg.dims.begin(), ctx.cfg.dims.end(),
                                      n) != ctx.cfg.dims.end();
        if (dim_ok && ctx.wants(c.kind)) {
            out.push_back(std::move(c));
        }
    }
    if (out.empty()) {
        throw UsageError("dim", "no documented family matches the selection");
    }
    return out;
}

// ---------------------------------------------------------------------------

void cmd_duality(Ctx &ctx) {
    std::vector<PairSpec> combos;
    if (!ctx.cfg.pairs.empty()) {
        for (const auto &p : ctx.cfg.pairs) {
            combos.push_back(parse_pair(p));
        }
    } else {
        for (double a : ctx.alphas({-0.5, 0.0, 0.5})) {
            for (const auto &m : ctx.metrics({"wyd"})) {
                combos.push_back({m, a});
            }
        }
    }
    const auto cases = selected_cases(ctx);
    const double tol = ctx.tol(qig::kDualityTolerance);
    const double gap = ctx.gap(qig::kFalsificationGap);
    for (const auto &combo : combos) {
        const MonotoneFunctionSpec f = resolve_metric(combo.metric, combo.alpha);
        const bool want = expect_dual(ctx, f, combo.alpha);
        for (const auto &c : cases) {
            const auto r = qig::duality_defect(c.family, c.grid, f, combo.alpha,
                                               c.kind);
            CaseBuilder b(f.name + "@" + short_num(combo.alpha) + " " +
                          c.family.name() + "/" + qig::to_string(c.kind));
            b.text("metric", f.name)
                .num("alpha", combo.alpha)
                .text("family", c.family.name())
                .text("manifold", qig::to_string(c.kind))
                .integer("grid_points", static_cast<std::int64_t>(c.grid.size()))
                .num("defect", r.defect);
            ctx.out.push_back(verdict_case(std::move(b), r.defect, tol, gap, want));
        }
    }
}

void cmd_transport(Ctx &ctx) {
    const double gap = ctx.gap(1e-3);
    for (double a : ctx.alphas({0.0, 0.5})) {
        for (const auto &m : ctx.metrics({"wyd", "bures"})) {
            const MonotoneFunctionSpec f = resolve_metric(m, a);
            const bool want = expect_dual(ctx, f, a);
            for (ManifoldKind kind : {ManifoldKind::extended, ManifoldKind::states}) {
                if (!ctx.wants(kind)) {
                    continue;
                }
                qig::CurveSpec curve = qig::documented_transport_curve(kind);
                curve.step_count = ctx.cfg.steps;
                const auto [y, z] = qig::documented_transport_vectors(curve);
                const auto r = qig::transport_duality_check(curve, f, a, y, z, kind);
                const double tol =
                    ctx.tol(kind == ManifoldKind::extended ? 1e-6 : 1e-5);
                CaseBuilder b(f.name + "@" + short_num(a) + " " +
                              curve.family.name() + "/" + qig::to_string(kind));
                b.text("metric", f.name)
                    .num("alpha", a)
                    .text("manifold", qig::to_string(kind))
                    .integer("samples", static_cast<std::int64_t>(r.t.size()))
                    .num("initial_value", r.values.front())
                    .num("deviation", r.deviation);
                ctx.out.push_back(verdict_case(std::move(b), r.deviation, tol, gap, want));
            }
        }
    }
}

void cmd_potential(Ctx &ctx) {
    const double tol = ctx.tol(1e-5);
    for (double a : ctx.alphas({-0.5, 0.0, 0.5})) {
        if (a == -1.0) {
            throw UsageError("alpha", "the potential needs alpha > -1");
        }
        for (int n : ctx.dims({2})) {
            const auto basis = qig::hermitian_basis(n);
            const auto fam = qig::affine_family(a, basis);
            for (int k = 0; k < ctx.cfg.grid; ++k) {
                qig::Rng rng(qig::split_seed(ctx.cfg.seed, static_cast<std::uint64_t>(k)));
                const auto w = qig::random_weight(rng, n);
                const auto xi = qig::affine_coordinates(w, a, basis);
                qig::PotentialOptions opts;
                opts.seed = qig::split_seed(ctx.cfg.seed, 1000 + static_cast<std::uint64_t>(k));
                const auto p = qig::potential_check(fam, xi, a, opts);
                const auto d = qig::dual_coordinate_check(fam, {xi}, a);
                const bool ok = p.residual <= tol && p.regression_residual <= 1e-6 &&
                                d.jacobian_residual <= tol && d.legendre_residual <= tol;
                ctx.out.push_back(
                    CaseBuilder("alpha=" + short_num(a) + " N=" + std::to_string(n) +
                                " point=" + std::to_string(k))
                        .num("alpha", a)
                        .integer("dim", n)
                        .num("flatness", p.flatness)
                        .num("hessian_residual", p.residual)
                        .num("regression_residual", p.regression_residual)
                        .integer("regression_points", p.regression_points)
                        .num("jacobian_residual", d.jacobian_residual)
                        .num("legendre_residual", d.legendre_residual)
                        .num("tol", tol)
                        .num("regression_tol", 1e-6)
                        .done(ok));
            }
        }
    }
}

void cmd_uniqueness(Ctx &ctx) {
    const auto cases = selected_cases(ctx);
    const double tol = ctx.tol(qig::kDualityTolerance);
    const double gap = ctx.gap(qig::kFalsificationGap);
    for (double a : ctx.alphas({0.5})) {
        auto candidates = qig::default_uniqueness_candidates(a);
        const bool near_limit = std::abs(a) > 0.99 && std::abs(a) < 1.0;
        if (near_limit) {
            // BKM is the limit of the reference here, not a competitor.
            candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                            [](const auto &c) { return c.f.name == "bkm"; }),
                             candidates.end());
            const double d = qig::ensemble_defect(cases, qig::petz::bkm(), a);
            ctx.out.push_back(CaseBuilder("bkm-limit@" + short_num(a))
                                  .num("alpha", a)
                                  .num("defect", d)
                                  .num("threshold", 1e-2)
                                  .done(d <= 1e-2));
        }
        const auto res = qig::uniqueness_scan(a, candidates, cases);
        for (const auto &e : res.entries) {
            const Verdict v = qig::classify(e.defect, tol, gap);
            const bool inc = v == Verdict::inconclusive;
            ctx.out.push_back(
                CaseBuilder(e.name + "@" + short_num(a))
                    .text("candidate", e.name)
                    .num("alpha", a)
                    .num("defect", e.defect)
                    .num("tol", tol)
                    .num("gap", gap)
                    .text("expected", e.expect_dual ? "dual" : "not_dual")
                    .text("verdict", qig::to_string(v))
                    .done((v == Verdict::dual) == e.expect_dual, inc));
        }
        ctx.out.push_back(CaseBuilder("scan@" + short_num(a))
                              .num("alpha", a)
                              .integer("candidates", static_cast<std::int64_t>(res.entries.size()))
                              .flag("reference_minimal", res.reference_minimal)
                              .done(res.reference_minimal));
    }
}

void cmd_monotonicity(Ctx &ctx) {
    const double tol = ctx.tol(qig::kMonotonicityTolerance);
    const int trials = ctx.trials(1000);
    for (double a : ctx.alphas({0.0})) {
        for (const auto &m : ctx.metrics({"wyd:0.2", "wyd:0.5", "wyd:0.8", "bkm",
                                          "bures", "rld"})) {
            const MonotoneFunctionSpec f = resolve_metric(m, a);
            const auto r = qig::monotonicity_campaign(f, trials, ctx.cfg.seed);
            const double frac = r.depolarizing_trials == 0
                                    ? 1.0
                                    : static_cast<double>(r.depolarizing_positive) /
                                          r.depolarizing_trials;
            const bool ok = r.min_margin >= -tol && frac >= 0.99;
            ctx.out.push_back(CaseBuilder(f.name)
                                  .text("metric", f.name)
                                  .integer("trials", r.trials)
                                  .num("min_margin", r.min_margin)
                                  .num("tol", tol)
                                  .integer("depolarizing_trials", r.depolarizing_trials)
                                  .integer("depolarizing_positive", r.depolarizing_positive)
                                  .num("depolarizing_positive_fraction", frac)
                                  .integer("regularized", r.regularized)
                                  .integer("inconclusive_trials", r.inconclusive)
                                  .done(ok, r.inconclusive > 0));
        }
    }
}

void cmd_flatness(Ctx &ctx) {
    const double tol = ctx.tol(qig::kFlatnessTolerance);
    const double gap = ctx.gap(qig::kPathDependenceWitness);
    for (double a : ctx.alphas({-0.5, 0.0, 0.5})) {
        for (int n : ctx.dims({2})) {
            const auto r = qig::flatness_check(a, n, ctx.cfg.seed, ctx.cfg.grid);
            ctx.out.push_back(CaseBuilder("affine alpha=" + short_num(a) +
                                          " N=" + std::to_string(n))
                                  .num("alpha", a)
                                  .integer("dim", n)
                                  .integer("points", r.points)
                                  .num("max_residual", r.max_residual)
                                  .num("tol", tol)
                                  .done(r.max_residual <= tol));
        }
        if (std::abs(a) < 1.0) {
            const auto p = qig::path_dependence_witness(a, ctx.cfg.steps);
            ctx.out.push_back(CaseBuilder("path-dependence alpha=" + short_num(a))
                                  .num("alpha", a)
                                  .integer("steps", ctx.cfg.steps)
                                  .num("difference", p.difference)
                                  .num("threshold", gap)
                                  .done(p.difference >= gap));
        }
    }
}

void cmd_convexity(Ctx &ctx) {
    const double gap = ctx.gap(qig::kFalsificationGap);
    for (double a : ctx.alphas({-0.5, 0.0, 0.5})) {
        const auto r = qig::convexity_failure_check(a, ctx.cfg.seed, ctx.cfg.grid);
        const bool endpoint = std::abs(a) == 1.0;
        const bool ok =
            r.classical_difference <= qig::kClassicalTolerance &&
            (endpoint ? r.quantum_difference <= qig::kClassicalTolerance &&
                            r.bkm_defect <= qig::kDualityTolerance
                      : r.quantum_difference >= qig::kConvexityWitness &&
                            r.bkm_defect >= gap);
        ctx.out.push_back(CaseBuilder("alpha=" + short_num(a))
                              .num("alpha", a)
                              .num("quantum_difference", r.quantum_difference)
                              .num("classical_difference", r.classical_difference)
                              .num("bkm_defect", r.bkm_defect)
                              .num("witness_threshold", qig::kConvexityWitness)
                              .num("classical_tol", qig::kClassicalTolerance)
                              .num("gap", gap)
                              .done(ok));
    }
    const auto c = qig::classical_reduction_check(ctx.cfg.seed, ctx.trials(20));
    ctx.out.push_back(CaseBuilder("classical-reduction")
                          .integer("samples", c.samples)
                          .num("fisher_deviation", c.fisher_deviation)
                          .num("alpha_spread", c.alpha_spread)
                          .num("tol", qig::kClassicalReductionTolerance)
                          .done(c.fisher_deviation <= qig::kClassicalReductionTolerance &&
                                c.alpha_spread <= qig::kClassicalReductionTolerance));
}

void cmd_entropy(Ctx &ctx) {
    const int trials = ctx.trials(20);
    for (int n : ctx.dims({3})) {
        if (n < 2) {
            throw UsageError("dim", "entropy-projection needs N >= 2");
        }
        for (int k = 0; k < trials; ++k) {
            qig::Rng rng(qig::split_seed(ctx.cfg.seed, static_cast<std::uint64_t>(k)));
            const qig::GibbsFamily g(
                {qig::random_hermitian(rng, n), qig::random_hermitian(rng, n)});
            const auto rho = qig::random_state(rng, n);
            const auto d = qig::random_tangent(rng, rho);
            const auto r = qig::entropy_projection_demo(rho, g);
            const auto t = qig::relative_entropy_taylor_check(rho, d);
            const bool ok = r.converged &&
                            r.mean_mismatch <= qig::kMeanMatchingTolerance &&
                            r.orthogonality <= qig::kOrthogonalityTolerance &&
                            t.abs_error <= qig::kTaylorTolerance &&
                            t.symmetric_relative_error <= qig::kTaylorSymmetricTolerance;
            ctx.out.push_back(
                CaseBuilder("N=" + std::to_string(n) + " instance=" + std::to_string(k))
                    .integer("dim", n)
                    .integer("iterations", r.iterations)
                    .flag("converged", r.converged)
                    .num("gradient_norm", r.gradient_norm)
                    .num("mean_mismatch", r.mean_mismatch)
                    .num("orthogonality", r.orthogonality)
                    .num("divergence", r.divergence)
                    .num("taylor_t", t.t)
                    .num("taylor_abs_error", t.abs_error)
                    .num("taylor_symmetric_relative_error", t.symmetric_relative_error)
                    .done(ok));
        }
    }
}

void cmd_metric_table(Ctx &ctx) {
    const double tol = ctx.tol(qig::kKernelDirectTolerance);
    const int trials = ctx.trials(50);
    const auto builtin = qig::builtin_functions(std::vector<double>{0.2, 0.5, 0.8});
    for (int n : ctx.dims({2, 3, 4})) {
        if (n < 2) {
            throw UsageError("dim", "metric-table needs N >= 2");
        }
        qig::Rng rng(qig::split_seed(ctx.cfg.seed, 5000 + static_cast<std::uint64_t>(n)));
        const auto rho = qig::random_state(rng, n);
        const auto a = qig::random_tangent(rng, rho);
        CaseBuilder values("values N=" + std::to_string(n));
        values.integer("dim", n);
        for (const auto &f : builtin) {
            values.num(f.name, qig::metric_eval(rho, f, a, a));
        }
        ctx.out.push_back(values.done(true));
        for (double al : ctx.alphas({-0.9, -0.5, 0.0, 0.5, 0.9})) {
            const auto r = qig::kernel_direct_equivalence(n, al, trials, ctx.cfg.seed);
            ctx.out.push_back(CaseBuilder("kernel-direct N=" + std::to_string(n) +
                                          " alpha=" + short_num(al))
                                  .integer("dim", n)
                                  .num("alpha", al)
                                  .integer("trials", r.trials)
                                  .num("max_relative_error", r.max_relative_error)
                                  .num("tol", tol)
                                  .done(r.max_relative_error <= tol));
        }
    }
}

} // namespace

ExperimentRecord run(const ExperimentConfig &config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentRecord record;
    record.config = config;
    record.version = qig::kVersion;
    Ctx ctx{config, record.cases};
    static const std::map<std::string, std::function<void(Ctx &)>> table{
        {"duality", cmd_duality},
        {"transport-duality", cmd_transport},
        {"potential", cmd_potential},
        {"uniqueness-scan", cmd_uniqueness},
        {"monotonicity", cmd_monotonicity},
        {"flatness", cmd_flatness},
        {"convexity-failure", cmd_convexity},
        {"entropy-projection", cmd_entropy},
        {"metric-table", cmd_metric_table},
    };
    table.at(config.command)(ctx);
    record.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return record;
}

} // namespace qiglab
