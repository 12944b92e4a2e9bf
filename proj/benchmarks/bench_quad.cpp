// Copyright 2026 The cbell Authors
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

#include <benchmark/benchmark.h>

#include <cmath>

#include "cbell/quad.hpp"

namespace {

void BM_Integrate1d(benchmark::State& state) {
    cbell::quad::IntegrationSpec spec;
    spec.abs_tol = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cbell::quad::integrate_1d([](double x) { return std::exp(-x * x) * std::cos(3 * x); }, 0.0, 6.0, spec));
    }
}
BENCHMARK(BM_Integrate1d);

void BM_RadialPair(benchmark::State& state) {
    cbell::quad::IntegrationSpec spec;
    spec.abs_tol = 1e-8;
    cbell::quad::RadialPairDomain domain;
    domain.outer_max = 5.0;
    domain.inner_max = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cbell::quad::integrate_radial_pair(
            [](double r, double s, double) { return std::exp(-r * r - s * s); }, domain, spec));
    }
}
BENCHMARK(BM_RadialPair)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
