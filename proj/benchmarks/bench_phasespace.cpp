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

#include "cbell/phasespace.hpp"

namespace {

void BM_KernelIntegral(benchmark::State& state) {
    cbell::quad::IntegrationSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(cbell::kernel_integral(0.5, 0.5, spec));
}
BENCHMARK(BM_KernelIntegral)->Unit(benchmark::kMillisecond);

void BM_SingleParticleBound(benchmark::State& state) {
    const cbell::SingleParticleCase c = cbell::SingleParticleCase::standard();
    for (auto _ : state) benchmark::DoNotOptimize(cbell::sp_hv_bound(c));
}
BENCHMARK(BM_SingleParticleBound)->Unit(benchmark::kMillisecond);

void BM_DirectIntegral(benchmark::State& state) {
    const cbell::BipartiteCase c = cbell::BipartiteCase::standard(4);
    for (auto _ : state) benchmark::DoNotOptimize(cbell::bp_direct_integral(c, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DirectIntegral)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
