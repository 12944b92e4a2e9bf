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

#include <vector>

#include "cbell/specfun.hpp"

namespace {

void BM_Laguerre(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double x = 3.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cbell::specfun::laguerre(n, x));
        x += 1e-12;
    }
}
BENCHMARK(BM_Laguerre)->Arg(8)->Arg(64)->Arg(200);

void BM_LaguerreTable(benchmark::State& state) {
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        cbell::specfun::laguerre_table(5.5, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_LaguerreTable)->Arg(64)->Arg(256);

// One point per branch: series, Miller recurrence, asymptotic.
void BM_BesselJ01(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(cbell::specfun::bessel_j01(x));
}
BENCHMARK(BM_BesselJ01)->Arg(50)->Arg(200)->Arg(800);

void BM_LaguerreSum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cbell::specfun::laguerre_sum(2.0, 3.0, 120));
}
BENCHMARK(BM_LaguerreSum);

}  // namespace

BENCHMARK_MAIN();
