// Copyright 2026 The GallinaC Authors.
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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "gallinac/cminor.hpp"
#include "gallinac/denote.hpp"
#include "gallinac/fuzz.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/ir.hpp"
#include "gallinac/opsem.hpp"
#include "gallinac/shallow.hpp"

namespace {

using namespace gallinac;

Program reversal(std::size_t k) {
  std::vector<Word> vals(k);
  for (std::size_t i = 0; i < k; ++i) vals[i] = 10 * (i + 1);
  return shallow::reverse_program(shallow::list_prologue_main(vals));
}

void BM_DenoteReversal(benchmark::State& state) {
  const Program p = reversal(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(denote_program(p, State{}, 64));
  }
}
BENCHMARK(BM_DenoteReversal);

void BM_MachineReversal(benchmark::State& state) {
  const Program p = reversal(8);
  const std::uint64_t budget = agreement_budget(64, node_count(p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_steps_program(p, State{}, budget));
  }
}
BENCHMARK(BM_MachineReversal);

void BM_IrReversal(benchmark::State& state) {
  const IrProgram ir = lower_to_ir(reversal(8)).value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ir(ir, 64));
  }
}
BENCHMARK(BM_IrReversal);

void BM_CminorReversal(benchmark::State& state) {
  const CmProgram cm = lower_to_cminor(lower_to_ir(reversal(8)).value());
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cminor(cm, 1000000));
  }
}
BENCHMARK(BM_CminorReversal);

void BM_LowerPipeline(benchmark::State& state) {
  const Program p = reversal(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower_to_cminor(lower_to_ir(p).value()));
  }
}
BENCHMARK(BM_LowerPipeline);

void BM_ParseSerialize(benchmark::State& state) {
  const std::string text = serialize(reversal(8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize(parse_program(text).value()));
  }
}
BENCHMARK(BM_ParseSerialize);

void BM_GenProgram(benchmark::State& state) {
  GenConfig cfg;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(gen_program(cfg));
  }
}
BENCHMARK(BM_GenProgram);

void BM_DifferentialCase(benchmark::State& state) {
  GenConfig cfg;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    const Program p = gen_program(cfg);
    benchmark::DoNotOptimize(
        differential_run(p, cfg.fuel, cfg.step_budget, cfg.seed));
  }
}
BENCHMARK(BM_DifferentialCase);

}  // namespace

BENCHMARK_MAIN();
