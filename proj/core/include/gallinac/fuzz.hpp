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
//
// Random program generation and the differential harness that runs a
// program through all four stages (denotational, machine, ir, cminor)
// and checks that their outcomes are related.
//
// Generated programs are well formed by construction and kind sound:
// every expression has a statically known value kind, heap cells only
// ever hold nats, and eq/neq always compare values of one kind. Kind
// soundness matters because the backends collapse unit, bool and nat
// into words; a source program that fails on a kind error (say, eq on
// a bool and a nat) would run fine after lowering, and the differential
// would flag a disagreement that no compiler bug caused. Heap faults,
// unbound store variables, explicit fail, and nontermination are all
// still reachable, so the interesting failure classes stay covered.

#ifndef GALLINAC_FUZZ_HPP_
#define GALLINAC_FUZZ_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gallinac/ast.hpp"

namespace gallinac {

// Knobs for the generator. Generation is deterministic: the same config
// (including the seed) always yields the same program.
struct GenConfig {
  std::uint64_t seed = 0;

  std::size_t max_depth = 4;       // command nesting in main
  std::size_t max_loops = 2;       // loop nesting bound
  std::size_t max_helpers = 2;     // auxiliary loop-free functions
  std::size_t max_counter = 8;     // iterations of a counter-bounded loop
  std::size_t nat_pool = 5;        // constants are drawn from [0, nat_pool)
  std::size_t max_prologue_cells = 8;

  // Probability, in percent, that a while loop is counter-bounded. The
  // remainder are `while (ret true)` loops that never terminate.
  std::size_t loop_bias_pct = 90;

  // Budgets for differential runs. The step budgets for the machine and
  // the cminor interpreter are derived from the fuel and the program
  // size when left at zero.
  std::uint64_t fuel = 128;
  std::uint64_t step_budget = 0;
};

Program gen_program(const GenConfig& cfg);

// One stage's outcome, rendered for reports.
struct StageOutcome {
  std::string stage;   // "denote", "opsem", "ir", "cminor"
  std::string kind;    // "done", "failed", "bottom"
  std::string detail;  // value rendering or failure reason
};

// The differential verdict for one program.
//
// agree      all stages terminated and every adjacent pair is related
// all-bottom every stage ran out of budget
// disagree   some pair of stages is unrelated; details say which
//
// A mix of bottom and terminating stages at the base budgets is treated
// as suspect (fuel and step budgets are incomparable) and the whole run
// is retried once with 10x budgets before it may count as disagreement.
struct DiffVerdict {
  enum class Kind { Agree, AllBottom, Disagree };

  Kind kind = Kind::Agree;
  std::vector<StageOutcome> stages;
  std::string details;       // set for disagree
  std::string program_text;  // serialized program, set for disagree
  std::uint64_t seed = 0;    // replay seed as given by the caller
  bool escalated = false;    // the 10x retry was taken

  bool agreed() const { return kind != Kind::Disagree; }
};

DiffVerdict differential_run(const Program& p, std::uint64_t fuel,
                             std::uint64_t step_budget = 0,
                             std::uint64_t seed = 0);

// Greedy subterm-removal shrinking: repeatedly replaces a node of main
// by one of its children (or a trivial return) while the program stays
// well formed and the differential still disagrees. Bounded to at most
// `max_attempts` candidate evaluations.
Program shrink_program(const Program& p, std::uint64_t fuel,
                       std::uint64_t step_budget = 0,
                       std::size_t max_attempts = 1000);

// Aggregate of a validation campaign. Case seeds are cfg.seed + index,
// and the report is ordered by case index no matter how the cases ran.
struct ValidationCase {
  std::uint64_t seed = 0;
  DiffVerdict::Kind verdict = DiffVerdict::Kind::Agree;
  std::string details;
};

struct ValidationReport {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t agree = 0;
  std::size_t all_bottom = 0;
  std::size_t disagree = 0;
  std::vector<ValidationCase> cases;
  std::vector<std::string> counterexamples;  // shrunk, serialized

  bool ok() const { return disagree == 0; }
};

ValidationReport run_validation(const GenConfig& cfg, std::size_t count);

std::string report_to_json(const ValidationReport& r);

}  // namespace gallinac

#endif  // GALLINAC_FUZZ_HPP_
