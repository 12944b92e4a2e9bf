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

#include "cbell/fock.hpp"

namespace {

void BM_Displacement(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cbell::displacement(cbell::PhasePoint(0.8, -0.3), dim));
}
BENCHMARK(BM_Displacement)->Arg(32)->Arg(64)->Arg(128);

void BM_Quantizer(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cbell::quantizer(cbell::PhasePoint(0.8, -0.3), dim));
}
BENCHMARK(BM_Quantizer)->Arg(32)->Arg(64);

void BM_DisplacementElement(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cbell::displacement_element(20, 7, cbell::PhasePoint(1.1, 0.4)));
}
BENCHMARK(BM_DisplacementElement);

}  // namespace

BENCHMARK_MAIN();
