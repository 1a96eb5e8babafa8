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

#include "gallinac/ast.hpp"

#include <cctype>

namespace gallinac {

namespace {

ExprPtr mk_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
CmdPtr mk_cmd(Cmd c) { return std::make_shared<const Cmd>(std::move(c)); }

ExprPtr binop(ExprKind k, ExprPtr a, ExprPtr b) {
  Expr e{k};
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return mk_expr(std::move(e));
}

}  // namespace

ExprPtr e_fvar(std::string name) {
  Expr e{ExprKind::FVar};
  e.name = std::move(name);
  return mk_expr(std::move(e));
}

ExprPtr e_unit() { return mk_expr(Expr{ExprKind::Unit}); }

ExprPtr e_bool(bool b) {
  Expr e{ExprKind::Bool};
  e.bval = b;
  return mk_expr(std::move(e));
}

ExprPtr e_nat(Word n) {
  Expr e{ExprKind::Nat};
  e.nval = wrap_word(n);
  return mk_expr(std::move(e));
}

ExprPtr e_null() { return mk_expr(Expr{ExprKind::Null}); }

ExprPtr e_not(ExprPtr a) {
  Expr e{ExprKind::Not};
  e.lhs = std::move(a);
  return mk_expr(std::move(e));
}

ExprPtr e_add(ExprPtr a, ExprPtr b) { return binop(ExprKind::Add, a, b); }
ExprPtr e_sub(ExprPtr a, ExprPtr b) { return binop(ExprKind::Sub, a, b); }
ExprPtr e_eq(ExprPtr a, ExprPtr b) { return binop(ExprKind::Eq, a, b); }
ExprPtr e_neq(ExprPtr a, ExprPtr b) { return binop(ExprKind::Neq, a, b); }
ExprPtr e_and(ExprPtr a, ExprPtr b) { return binop(ExprKind::And, a, b); }
ExprPtr e_or(ExprPtr a, ExprPtr b) { return binop(ExprKind::Or, a, b); }
ExprPtr e_lt(ExprPtr a, ExprPtr b) { return binop(ExprKind::Lt, a, b); }
ExprPtr e_ptr_shift(ExprPtr p, ExprPtr k) {
  return binop(ExprKind::PtrShift, p, k);
}

CmdPtr c_ret(ExprPtr e) {
  Cmd c{CmdKind::Ret};
  c.e1 = std::move(e);
  return mk_cmd(std::move(c));
}

CmdPtr c_bind(std::string name, CmdPtr c1, CmdPtr c2) {
  Cmd c{CmdKind::Bind};
  c.name = std::move(name);
  c.c1 = std::move(c1);
  c.c2 = std::move(c2);
  return mk_cmd(std::move(c));
}

CmdPtr c_seq(CmdPtr c1, CmdPtr c2) {
  Cmd c{CmdKind::Seq};
  c.c1 = std::move(c1);
  c.c2 = std::move(c2);
  return mk_cmd(std::move(c));
}

CmdPtr c_call(std::string fn, std::vector<ExprPtr> args) {
  Cmd c{CmdKind::Call};
  c.name = std::move(fn);
  c.args = std::move(args);
  return mk_cmd(std::move(c));
}

CmdPtr c_if(ExprPtr cond, CmdPtr then_cmd, CmdPtr else_cmd) {
  Cmd c{CmdKind::If};
  c.e1 = std::move(cond);
  c.c1 = std::move(then_cmd);
  c.c2 = std::move(else_cmd);
  return mk_cmd(std::move(c));
}

CmdPtr c_while(CmdPtr cond, CmdPtr body) {
  Cmd c{CmdKind::While};
  c.c1 = std::move(cond);
  c.c2 = std::move(body);
  return mk_cmd(std::move(c));
}

CmdPtr c_var(std::string name, CmdPtr init, CmdPtr rest) {
  Cmd c{CmdKind::Var};
  c.name = std::move(name);
  c.c1 = std::move(init);
  c.c2 = std::move(rest);
  return mk_cmd(std::move(c));
}

CmdPtr c_read_var(std::string name) {
  Cmd c{CmdKind::ReadVar};
  c.name = std::move(name);
  return mk_cmd(std::move(c));
}

CmdPtr c_write_var(std::string name, ExprPtr e) {
  Cmd c{CmdKind::WriteVar};
  c.name = std::move(name);
  c.e1 = std::move(e);
  return mk_cmd(std::move(c));
}

CmdPtr c_alloc(Word count, ExprPtr init) {
  Cmd c{CmdKind::Alloc};
  c.count = count;
  c.e1 = std::move(init);
  return mk_cmd(std::move(c));
}

CmdPtr c_read_ptr(ExprPtr p) {
  Cmd c{CmdKind::ReadPtr};
  c.e1 = std::move(p);
  return mk_cmd(std::move(c));
}

CmdPtr c_write_ptr(ExprPtr p, ExprPtr v) {
  Cmd c{CmdKind::WritePtr};
  c.e1 = std::move(p);
  c.e2 = std::move(v);
  return mk_cmd(std::move(c));
}

CmdPtr c_free(ExprPtr p) {
  Cmd c{CmdKind::Free};
  c.e1 = std::move(p);
  return mk_cmd(std::move(c));
}

CmdPtr c_fail() { return mk_cmd(Cmd{CmdKind::Fail}); }
CmdPtr c_loop() { return mk_cmd(Cmd{CmdKind::Loop}); }

const FunctionDef* Program::find_function(std::string_view name) const {
  for (const auto& [fname, def] : functions) {
    if (fname == name) return &def;
  }
  return nullptr;
}

namespace {

bool opt_expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return expr_equal(*a, *b);
}

bool opt_cmd_equal(const CmdPtr& a, const CmdPtr& b) {
  if (!a || !b) return !a && !b;
  return cmd_equal(*a, *b);
}

}  // namespace

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::FVar: return a.name == b.name;
    case ExprKind::Unit:
    case ExprKind::Null: return true;
    case ExprKind::Bool: return a.bval == b.bval;
    case ExprKind::Nat: return a.nval == b.nval;
    case ExprKind::Not: return opt_expr_equal(a.lhs, b.lhs);
    default:
      return opt_expr_equal(a.lhs, b.lhs) && opt_expr_equal(a.rhs, b.rhs);
  }
}

bool cmd_equal(const Cmd& a, const Cmd& b) {
  if (a.kind != b.kind || a.name != b.name || a.count != b.count) return false;
  if (!opt_expr_equal(a.e1, b.e1) || !opt_expr_equal(a.e2, b.e2)) return false;
  if (!opt_cmd_equal(a.c1, b.c1) || !opt_cmd_equal(a.c2, b.c2)) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!opt_expr_equal(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool program_equal(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    if (a.functions[i].first != b.functions[i].first) return false;
    if (a.functions[i].second.params != b.functions[i].second.params) {
      return false;
    }
    if (!opt_cmd_equal(a.functions[i].second.body, b.functions[i].second.body)) {
      return false;
    }
  }
  return opt_cmd_equal(a.main, b.main);
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  if (e.lhs) n += node_count(*e.lhs);
  if (e.rhs) n += node_count(*e.rhs);
  return n;
}

std::size_t node_count(const Cmd& c) {
  std::size_t n = 1;
  if (c.e1) n += node_count(*c.e1);
  if (c.e2) n += node_count(*c.e2);
  if (c.c1) n += node_count(*c.c1);
  if (c.c2) n += node_count(*c.c2);
  for (const auto& a : c.args) n += node_count(*a);
  return n;
}

std::size_t node_count(const Program& p) {
  std::size_t n = p.main ? node_count(*p.main) : 0;
  for (const auto& [name, def] : p.functions) n += node_count(*def.body);
  return n;
}

const char* head_name(ExprKind k) {
  switch (k) {
    case ExprKind::FVar: return "fvar";
    case ExprKind::Unit: return "unit";
    case ExprKind::Bool: return "bool";
    case ExprKind::Nat: return "nat";
    case ExprKind::Null: return "null";
    case ExprKind::Not: return "not";
    case ExprKind::Add: return "add";
    case ExprKind::Sub: return "sub";
    case ExprKind::Eq: return "eq";
    case ExprKind::Neq: return "neq";
    case ExprKind::And: return "and";
    case ExprKind::Or: return "or";
    case ExprKind::Lt: return "lt";
    case ExprKind::PtrShift: return "ptr-shift";
  }
  return "?";
}

const char* head_name(CmdKind k) {
  switch (k) {
    case CmdKind::Ret: return "ret";
    case CmdKind::Bind: return "bind";
    case CmdKind::Seq: return "seq";
    case CmdKind::Call: return "call";
    case CmdKind::If: return "if";
    case CmdKind::While: return "while";
    case CmdKind::Var: return "var";
    case CmdKind::ReadVar: return "read-var";
    case CmdKind::WriteVar: return "write-var";
    case CmdKind::Alloc: return "alloc";
    case CmdKind::ReadPtr: return "read-ptr";
    case CmdKind::WritePtr: return "write-ptr";
    case CmdKind::Free: return "free";
    case CmdKind::Fail: return "fail";
    case CmdKind::Loop: return "loop";
  }
  return "?";
}

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto ident_byte = [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '-' || c >= 0x80;
  };
  unsigned char first = static_cast<unsigned char>(name.front());
  if (std::isdigit(first) != 0 || !ident_byte(first)) return false;
  for (char ch : name) {
    if (!ident_byte(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace gallinac
