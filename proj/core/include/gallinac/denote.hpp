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

#ifndef GALLINAC_DENOTE_HPP_
#define GALLINAC_DENOTE_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/state.hpp"

namespace gallinac {

// Pure expression evaluation. Reads the environment and the heap (for
// bounds-checked pointer shifts) and never changes the state.
Result<Value> eval_expr(const Expr& e, const State& s);

// Heap effects observed during a run, used by the frame-rule footprint
// guard. Only successful operations are recorded.
struct HeapWriteLog {
  std::set<Cell> stored;
  std::set<BlockId> freed;
  std::set<BlockId> allocated;
};

// Denotational semantics under a fuel budget. Fuel is a global budget of
// while unfoldings: every arrival at a loop head, including the one that
// sees the condition go false, consumes one unit. Exhaustion yields
// Bottom. Raising the fuel can only move a Bottom result to a final one;
// final results never change (tested as monotonicity and stabilization).
Approx denote_cmd(const Cmd& c, const Program& prog, State s,
                  std::uint64_t fuel);

// Same, recording heap writes into *log as the run progresses. The log is
// filled even when the outcome is Failed or Bottom.
Approx denote_cmd_logged(const Cmd& c, const Program& prog, State s,
                         std::uint64_t fuel, HeapWriteLog* log);

// Runs the program's main command.
Approx denote_program(const Program& prog, State s, std::uint64_t fuel);

// The approximation chain: denote at fuels 0, 1, ..., max_fuel. Adjacent
// elements are ordered by approx_leq and the chain is constant after the
// first non-Bottom entry.
std::vector<Approx> kleene_chain(const Cmd& c, const Program& prog,
                                 const State& s, std::uint64_t max_fuel);

// One unfolding of a loop: do t <- cond; if t then (body ;; while) else
// ret unit, with a binder name that cannot collide with source programs.
// denote(while(c,b), fuel) == denote(unfold(c,b), fuel - 1) for fuel >= 1.
CmdPtr unfold_while(const CmdPtr& cond, const CmdPtr& body);

}  // namespace gallinac

#endif  // GALLINAC_DENOTE_HPP_
