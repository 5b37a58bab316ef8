// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qgate/gate_lab.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/lattice.hpp"
#include "qgate/lattice_gates.hpp"
#include "qgate/permanent.hpp"
#include "qgate/random.hpp"

namespace {

using namespace qgate;

void BM_Ryser(benchmark::State& state) {
  Rng rng(1);
  const CMatrix u = haar_unitary(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(u));
}
BENCHMARK(BM_Ryser)->DenseRange(4, 16, 4);

void BM_LiftToFock(benchmark::State& state) {
  Rng rng(2);
  const int modes = static_cast<int>(state.range(0));
  const CMatrix u = haar_unitary(modes, rng);
  const auto b = FockBasis::enumerate(modes, MaxTotalPhotons{3});
  for (auto _ : state) benchmark::DoNotOptimize(lift_to_fock(u, *b));
  state.counters["dim"] = static_cast<double>(b->size());
}
BENCHMARK(BM_LiftToFock)->Arg(3)->Arg(4)->Arg(5);

void BM_BuildHamiltonian(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_bh_hamiltonian({100.0, 1.0, 10, 8}));
}
BENCHMARK(BM_BuildHamiltonian)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  const auto h = build_bh_hamiltonian({static_cast<double>(state.range(0)), 1.0, 10, 8});
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h).energy);
}
BENCHMARK(BM_GroundState)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_NSOneStart(benchmark::State& state) {
  SynthesisOptions o;
  o.seeds = 1;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_ns(std::numbers::pi, o).result.success_probability);
}
BENCHMARK(BM_NSOneStart)->Unit(benchmark::kMillisecond);

void BM_SimulateCZ(benchmark::State& state) {
  TwoSpeciesParams p;
  p.U_ab = 2.0;
  const double j = 0.05;
  const auto pulse = PulseProfile::sin2(8.0 * std::numbers::pi / (3.0 * j * j), 0.0, j);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_gate(pulse, p, GateKind::cz).phi_cz);
}
BENCHMARK(BM_SimulateCZ)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
