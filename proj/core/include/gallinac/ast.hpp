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

#ifndef GALLINAC_AST_HPP_
#define GALLINAC_AST_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gallinac/values.hpp"

namespace gallinac {

// Deep syntax. Expressions are pure; commands carry all effects. Nodes are
// immutable and shared, so subtrees can be reused freely when building
// programs.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
  FVar,   // read a temporary bound by do
  Unit,
  Bool,
  Nat,
  Null,
  Not,
  Add,    // wraparound
  Sub,    // truncated at zero
  Eq,
  Neq,
  And,
  Or,
  Lt,
  PtrShift,  // bounds-checked forward pointer arithmetic
};

struct Expr {
  ExprKind kind;
  std::string name;  // FVar
  bool bval = false;
  Word nval = 0;
  ExprPtr lhs;  // unary operand or left operand
  ExprPtr rhs;
};

ExprPtr e_fvar(std::string name);
ExprPtr e_unit();
ExprPtr e_bool(bool b);
ExprPtr e_nat(Word n);
ExprPtr e_null();
ExprPtr e_not(ExprPtr e);
ExprPtr e_add(ExprPtr a, ExprPtr b);
ExprPtr e_sub(ExprPtr a, ExprPtr b);
ExprPtr e_eq(ExprPtr a, ExprPtr b);
ExprPtr e_neq(ExprPtr a, ExprPtr b);
ExprPtr e_and(ExprPtr a, ExprPtr b);
ExprPtr e_or(ExprPtr a, ExprPtr b);
ExprPtr e_lt(ExprPtr a, ExprPtr b);
ExprPtr e_ptr_shift(ExprPtr p, ExprPtr k);

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

enum class CmdKind {
  Ret,       // yield an expression's value
  Bind,      // do x <- c1; c2
  Seq,       // c1 ;; c2
  Call,
  If,
  While,     // condition is itself a command
  Var,       // var x := c1 in c2 (mutable store cell)
  ReadVar,
  WriteVar,
  Alloc,     // literal cell count, evaluated initializer
  ReadPtr,
  WritePtr,
  Free,
  Fail,
  Loop,      // diverges
};

struct Cmd {
  CmdKind kind;
  std::string name;  // binder, variable, or callee
  ExprPtr e1;
  ExprPtr e2;
  CmdPtr c1;
  CmdPtr c2;
  std::vector<ExprPtr> args;  // Call
  Word count = 0;             // Alloc
};

CmdPtr c_ret(ExprPtr e);
CmdPtr c_bind(std::string name, CmdPtr c1, CmdPtr c2);
CmdPtr c_seq(CmdPtr c1, CmdPtr c2);
CmdPtr c_call(std::string fn, std::vector<ExprPtr> args);
CmdPtr c_if(ExprPtr cond, CmdPtr then_cmd, CmdPtr else_cmd);
CmdPtr c_while(CmdPtr cond, CmdPtr body);
CmdPtr c_var(std::string name, CmdPtr init, CmdPtr rest);
CmdPtr c_read_var(std::string name);
CmdPtr c_write_var(std::string name, ExprPtr e);
CmdPtr c_alloc(Word count, ExprPtr init);
CmdPtr c_read_ptr(ExprPtr p);
CmdPtr c_write_ptr(ExprPtr p, ExprPtr v);
CmdPtr c_free(ExprPtr p);
CmdPtr c_fail();
CmdPtr c_loop();

struct FunctionDef {
  std::vector<std::string> params;
  CmdPtr body;
};

// Functions are kept in definition order; names are unique (checked by
// well_formed and the parser).
struct Program {
  std::vector<std::pair<std::string, FunctionDef>> functions;
  CmdPtr main;

  const FunctionDef* find_function(std::string_view name) const;
};

bool expr_equal(const Expr& a, const Expr& b);
bool cmd_equal(const Cmd& a, const Cmd& b);
bool program_equal(const Program& a, const Program& b);

// Node counts (commands plus expressions) used to size step budgets.
std::size_t node_count(const Expr& e);
std::size_t node_count(const Cmd& c);
std::size_t node_count(const Program& p);

// The head constructor name as it appears in serialized form and traces,
// e.g. "ret", "read-var", "while".
const char* head_name(ExprKind k);
const char* head_name(CmdKind k);

// Identifier discipline shared by the parser and the shallow builders:
// nonempty, does not start with a digit, and contains only identifier
// bytes (alphanumerics, '_', '-', or any byte >= 0x80).
bool valid_identifier(std::string_view name);

}  // namespace gallinac

#endif  // GALLINAC_AST_HPP_
