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

#ifndef GALLINAC_OPSEM_HPP_
#define GALLINAC_OPSEM_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/state.hpp"

namespace gallinac {

// Small-step continuation machine. A configuration focuses either on a
// command still to run or on a value flowing back into the continuation.
// Every configuration has exactly one successor or is terminal, so the
// machine is deterministic and total; divergence shows up as running past
// any step budget, never as being stuck.

struct Frame {
  enum class Kind {
    Bind,         // awaiting the bound command's value
    EnvPop,       // restore the temporary scope to `mark`
    Seq,          // discard the value, run `k1`
    WhileCond,    // value is the loop condition; k1 is the while node
    WhileBody,    // body finished; re-test the condition of k1
    VarBind,      // bind the store variable `name`, then run k1
    StorePop,     // restore the store scope to `mark`
    CallRestore,  // reinstate the caller's temporary environment
  };

  Kind kind;
  std::string name;
  CmdPtr k1;
  ScopedBindings saved_env;       // CallRestore only
  ScopedBindings::Mark mark = 0;  // EnvPop / StorePop only

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct MachineConfig {
  CmdPtr focus_cmd;  // when null, the focus is `focus_val`
  Value focus_val;
  std::vector<Frame> kont;
  State state;

  bool value_focus() const { return focus_cmd == nullptr; }
};

MachineConfig initial_config(CmdPtr c, State s);

// Exactly one of `next` and `terminal` is engaged. Terminal outcomes are
// Done or Failed; Bottom is only ever produced by a runner's budget.
struct StepResult {
  std::optional<MachineConfig> next;
  std::optional<Approx> terminal;
};

StepResult step(MachineConfig cfg, const Program& prog);

// Drives the machine for at most max_steps transitions, returning Bottom
// if no terminal configuration is reached. When `trace` is given, one line
// per step is written: the head constructor of the focus and the
// continuation depth.
Approx run_steps(const Cmd& c, const Program& prog, State s,
                 std::uint64_t max_steps, std::ostream* trace = nullptr,
                 std::uint64_t* steps_taken = nullptr);

Approx run_steps_program(const Program& prog, State s, std::uint64_t max_steps,
                         std::ostream* trace = nullptr);

// Step budget that comfortably covers a run the denotational semantics
// completes with the given fuel, for the program sizes the generator and
// the fixtures produce.
std::uint64_t agreement_budget(std::uint64_t fuel, std::size_t nodes,
                               std::uint64_t k = 64);

}  // namespace gallinac

#endif  // GALLINAC_OPSEM_HPP_
