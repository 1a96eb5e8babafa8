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

#ifndef GALLINAC_IR_HPP_
#define GALLINAC_IR_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/memory.hpp"
#include "gallinac/result.hpp"

namespace gallinac {

// First lowering stage. Every name becomes a numeric id, temporaries
// become write-once-per-execution slots in a per-activation array, and
// store variables become cells of a frame block allocated on the heap at
// function entry and dropped at return. Units and bools collapse into
// words; pointers keep their provenance.
//
// Numbering is deterministic so dumps are byte-stable: functions get ids
// in definition order with main last; store variable names are numbered
// globally by first occurrence (definition order, then main); each
// function's temps are its parameters followed by its bind sites in
// preorder; its locals are its var sites in preorder.
//
// The lowering is defined for well-formed programs. It reports an error
// on lexically unbound temporaries and unknown call targets instead of
// producing code for them; every other source failure stays dynamic and
// keeps its reason text.

using IrValue = std::variant<Word, Pointer>;
using IrHeap = BlockMemory<IrValue>;

bool is_word(const IrValue& v);
bool is_ptr(const IrValue& v);
const char* ir_kind_name(const IrValue& v);
std::string to_string(const IrValue& v);

struct IrExpr;
using IrExprPtr = std::shared_ptr<const IrExpr>;

enum class IrExprKind {
  ConstWord,
  ConstNull,
  ReadTemp,
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

struct IrExpr {
  IrExprKind kind;
  Word wval = 0;          // ConstWord
  std::size_t temp = 0;   // ReadTemp
  IrExprPtr lhs;
  IrExprPtr rhs;
};

struct IrCmd;
using IrCmdPtr = std::shared_ptr<const IrCmd>;

enum class IrCmdKind {
  Ret,         // value of e1
  Bind,        // run c1, write its value to temp `index`, run c2
  Seq,
  Call,        // function `index`, args
  If,          // e1 selects c1 / c2; zero is false, a pointer faults
  While,       // c1 cond command, c2 body; costs one fuel per head arrival
  Scope,       // run c1, store to local slot `index`, run c2 with it active
  ReadLocal,   // own frame slot `index`
  WriteLocal,  // own frame slot `index` := e1
  ReadOuter,   // store name `index`, innermost active slot of outer frames
  WriteOuter,
  Alloc,       // `count` cells initialized to e1
  ReadPtr,     // e1 address
  WritePtr,    // e1 address, e2 value
  Free,        // e1 pointer
  Fail,
  Diverge,
};

struct IrCmd {
  IrCmdKind kind;
  std::size_t index = 0;
  Word count = 0;
  IrExprPtr e1;
  IrExprPtr e2;
  std::vector<IrExprPtr> args;
  IrCmdPtr c1;
  IrCmdPtr c2;
};

struct IrFunction {
  std::string name;  // source name; main is "%main", never a source name
  std::size_t n_params = 0;
  std::vector<std::string> temp_names;       // [0, n_params) are the params
  std::vector<std::string> local_names;      // by var site, preorder
  std::vector<std::size_t> local_store_ids;  // local slot -> store name id
  IrCmdPtr body;
};

struct IrProgram {
  std::vector<std::string> store_names;
  std::vector<IrFunction> functions;  // defs in order, then main

  std::size_t main_id() const { return functions.size() - 1; }
};

Result<IrProgram> lower_to_ir(const Program& p);

// Outcome of running a lowered program from the empty state.
struct IrResult {
  enum class Kind { Bottom, Failed, Done };
  Kind kind = Kind::Bottom;
  std::string reason;       // Failed
  IrValue value = Word{0};  // Done
  IrHeap heap;              // Done: final heap, dead frame blocks included

  bool is_bottom() const { return kind == Kind::Bottom; }
  bool is_failed() const { return kind == Kind::Failed; }
  bool is_done() const { return kind == Kind::Done; }
};

// Runs main. Fuel is a global budget of while-head arrivals, exactly as in
// the source semantics; exhaustion gives Bottom.
IrResult run_ir(const IrProgram& p, std::uint64_t fuel);

// Deterministic line-oriented listing of the whole program.
std::string dump_ir(const IrProgram& p);

// Relates a finished source-level run to a finished ir-level run. Frame
// blocks are backend bookkeeping and are ignored; the remaining blocks of
// the two heaps must match up pairwise in id order (same sizes, same
// liveness), giving a bijection under which cells and values must agree.
Result<std::map<BlockId, BlockId>> make_block_map(const Heap& src,
                                                  const IrHeap& ir);
bool value_lowers_to(const Value& v, const IrValue& w,
                     const std::map<BlockId, BlockId>& bmap);
bool relate_states(const Value& src_value, const Heap& src_heap,
                   const IrValue& ir_value, const IrHeap& ir_heap,
                   std::string* why = nullptr);

}  // namespace gallinac

#endif  // GALLINAC_IR_HPP_
