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

#ifndef GALLINAC_CMINOR_HPP_
#define GALLINAC_CMINOR_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gallinac/ir.hpp"
#include "gallinac/result.hpp"

namespace gallinac {

// Second lowering stage: a statement language in the Cminor style.
// Commands no longer produce values; every computation is lowered
// destination-passing into an assignment to a temporary. Control flow is
// loops plus numbered exits (exit n leaves n+1 enclosing loops), and all
// memory access goes through two statements, load and store, over pointer
// expressions; stack slots are addressed with the stackaddr expression
// into the activation's stack block.
//
// The interpreter meters work with a step budget instead of fuel: every
// statement executed costs one step, and an exhausted budget is Bottom.

struct CmExpr;
using CmExprPtr = std::shared_ptr<const CmExpr>;

enum class CmExprKind {
  ConstWord,
  ConstNull,
  ReadTemp,
  StackAddr,  // pointer to slot `index` of the running frame's stack block
  Not,
  Add,
  Sub,
  Eq,
  Neq,
  And,
  Or,
  Lt,
  Shift,
};

struct CmExpr {
  CmExprKind kind;
  Word wval = 0;
  std::size_t index = 0;  // ReadTemp, StackAddr
  CmExprPtr lhs;
  CmExprPtr rhs;
};

struct CmStmt;
using CmStmtPtr = std::shared_ptr<const CmStmt>;

enum class CmStmtKind {
  Seq,         // children in order
  AssignTemp,  // temp `index` := e1
  Load,        // temp `index` := *e1
  Store,       // *e1 := e2
  If,          // e1 nonzero -> first child, else second; ctx labels faults
  Loop,        // repeat the single child until an exit unwinds it
  Exit,        // leave `index`+1 enclosing loops
  Scope,       // slot `index` is active while the single child runs
  OuterLoad,   // temp `index` := innermost active slot of store name e-index
  OuterStore,
  Call,        // temp `index` := call function `target` with args
  Return,
  Alloc,       // temp `index` := fresh block of `count` cells, init e1
  Free,
  Fail,
  Diverge,
};

struct CmStmt {
  CmStmtKind kind;
  std::size_t index = 0;   // dst temp, exit count, scope slot
  std::size_t target = 0;  // Call function id, OuterLoad/OuterStore name id
  Word count = 0;          // Alloc
  std::string ctx;         // If: context label for condition kind faults
  CmExprPtr e1;
  CmExprPtr e2;
  std::vector<CmExprPtr> args;
  std::vector<CmStmtPtr> children;
};

struct CmFunction {
  std::string name;
  std::size_t n_params = 0;
  std::vector<std::string> temp_names;       // ir temps, then scratch temps
  std::vector<std::size_t> local_store_ids;  // slot -> store name id
  CmStmtPtr body;

  std::size_t stack_size() const { return local_store_ids.size(); }
};

struct CmProgram {
  std::vector<std::string> store_names;
  std::vector<CmFunction> functions;  // same ids as the ir program

  std::size_t main_id() const { return functions.size() - 1; }
};

// Total on any ir program; numbering of scratch temps follows lowering
// order, so dumps are deterministic.
CmProgram lower_to_cminor(const IrProgram& p);

// Structural checks: every exit is enclosed by enough loops, every temp,
// slot, and function reference is in range.
VoidResult validate_cminor(const CmProgram& p);

using CmResult = IrResult;

// Runs main with a step budget; every statement entered costs one step.
CmResult run_cminor(const CmProgram& p, std::uint64_t budget);

// Deterministic line-oriented listing; function headers carry stack_size.
std::string dump_cminor(const CmProgram& p);

// Compares two backend outcomes. Lowering preserves allocation order
// exactly, block ids included, so finished runs must agree on the result
// value and the whole heap; failed runs must agree on the reason.
bool relate_backends(const IrResult& a, const IrResult& b,
                     std::string* why = nullptr);

}  // namespace gallinac

#endif  // GALLINAC_CMINOR_HPP_
