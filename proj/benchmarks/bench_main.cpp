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

#include <benchmark/benchmark.h>

#include "qig/duality_lab.hpp"
#include "qig/families.hpp"
#include "qig/random.hpp"

namespace {

void BM_SpectralDecompose(benchmark::State &state) {
    qig::Rng rng(1);
    const auto a = qig::random_hermitian(rng, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qig::spectral_decompose(a));
    }
}
BENCHMARK(BM_SpectralDecompose)->RangeMultiplier(2)->Range(2, 32);

void BM_MetricEval(benchmark::State &state) {
    qig::Rng rng(2);
    const auto rho = qig::random_state(rng, state.range(0));
    const auto a = qig::random_tangent(rng, rho);
    const auto b = qig::random_tangent(rng, rho);
    const auto f = qig::petz::wyd(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qig::metric_eval(rho, f, a, b));
    }
}
BENCHMARK(BM_MetricEval)->RangeMultiplier(2)->Range(2, 16);

void BM_WydDirect(benchmark::State &state) {
    qig::Rng rng(3);
    const auto rho = qig::random_state(rng, state.range(0));
    const auto a = qig::random_tangent(rng, rho);
    const auto b = qig::random_tangent(rng, rho);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qig::wyd_direct(rho, -0.4, a, b));
    }
}
BENCHMARK(BM_WydDirect)->RangeMultiplier(2)->Range(2, 16);

void BM_CovariantDerivativeOnM(benchmark::State &state) {
    const auto fam = qig::qutrit_state_family();
    const qig::RealVector theta = qig::RealVector::Constant(3, 0.05);
    const auto scheme = state.range(0) == 0
                            ? qig::SecondDerivativeScheme::analytic
                            : qig::SecondDerivativeScheme::stencil;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qig::covariant_derivative_on_M(fam, theta, 0, 1, 0.5, scheme));
    }
}
BENCHMARK(BM_CovariantDerivativeOnM)->Arg(0)->Arg(1);

void BM_DualityDefectWitness(benchmark::State &state) {
    const auto w = qig::witness_case(7);
    const auto f = qig::petz::bures();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qig::duality_defect(w.family, w.grid, f, 0.0, w.kind));
    }
}
BENCHMARK(BM_DualityDefectWitness)->Unit(benchmark::kMillisecond);

void BM_TransportOnM(benchmark::State &state) {
    auto curve = qig::documented_transport_curve(qig::ManifoldKind::states);
    curve.step_count = static_cast<int>(state.range(0));
    const auto [y, z] = qig::documented_transport_vectors(curve);
    (void)z;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qig::parallel_transport_on_M(curve, y, 0.5));
    }
}
BENCHMARK(BM_TransportOnM)->Arg(64)->Arg(256)->Arg(1024)
    ->Unit(benchmark::kMicrosecond);

void BM_MonotonicityCampaign(benchmark::State &state) {
    const auto f = qig::petz::wyd(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qig::monotonicity_campaign(f, 100, 7));
    }
}
BENCHMARK(BM_MonotonicityCampaign)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
