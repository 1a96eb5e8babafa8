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

#include "gallinac/gac.hpp"

#include <cctype>
#include <set>

namespace gallinac {

namespace {

Sexp head_list(const char* head, std::vector<Sexp> rest) {
  std::vector<Sexp> items;
  items.reserve(rest.size() + 1);
  items.push_back(Sexp::make_atom(head));
  for (auto& r : rest) items.push_back(std::move(r));
  return Sexp::make_list(std::move(items));
}

template <class T>
Result<T> err(const Sexp& node, std::string_view message) {
  return Result<T>::failure(sexp_error(node, message));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

Word parse_word(std::string_view digits) {
  Word acc = 0;
  for (char c : digits) acc = acc * 10 + static_cast<Word>(c - '0');
  return wrap_word(acc);
}

Result<std::string> parse_name(const Sexp& s, const char* what) {
  if (!s.is_atom) {
    return err<std::string>(s, std::string("expected ") + what + ", got a list");
  }
  if (!valid_identifier(s.atom)) {
    return err<std::string>(
        s, std::string("invalid ") + what + " '" + s.atom + "'");
  }
  return s.atom;
}

}  // namespace

Sexp expr_to_sexp(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Unit:
    case ExprKind::Null:
      return Sexp::make_atom(head_name(e.kind));
    case ExprKind::FVar:
      return head_list("fvar", {Sexp::make_atom(e.name)});
    case ExprKind::Bool:
      return head_list("bool", {Sexp::make_atom(e.bval ? "true" : "false")});
    case ExprKind::Nat:
      return head_list("nat", {Sexp::make_atom(std::to_string(e.nval))});
    case ExprKind::Not:
      return head_list("not", {expr_to_sexp(*e.lhs)});
    default:
      return head_list(head_name(e.kind),
                       {expr_to_sexp(*e.lhs), expr_to_sexp(*e.rhs)});
  }
}

Sexp cmd_to_sexp(const Cmd& c) {
  switch (c.kind) {
    case CmdKind::Ret:
      return head_list("ret", {expr_to_sexp(*c.e1)});
    case CmdKind::Bind:
      return head_list("bind", {Sexp::make_atom(c.name), cmd_to_sexp(*c.c1),
                                cmd_to_sexp(*c.c2)});
    case CmdKind::Seq:
      return head_list("seq", {cmd_to_sexp(*c.c1), cmd_to_sexp(*c.c2)});
    case CmdKind::Call: {
      std::vector<Sexp> rest;
      rest.push_back(Sexp::make_atom(c.name));
      for (const auto& a : c.args) rest.push_back(expr_to_sexp(*a));
      return head_list("call", std::move(rest));
    }
    case CmdKind::If:
      return head_list("if", {expr_to_sexp(*c.e1), cmd_to_sexp(*c.c1),
                              cmd_to_sexp(*c.c2)});
    case CmdKind::While:
      return head_list("while", {cmd_to_sexp(*c.c1), cmd_to_sexp(*c.c2)});
    case CmdKind::Var:
      return head_list("var", {Sexp::make_atom(c.name), cmd_to_sexp(*c.c1),
                               cmd_to_sexp(*c.c2)});
    case CmdKind::ReadVar:
      return head_list("read-var", {Sexp::make_atom(c.name)});
    case CmdKind::WriteVar:
      return head_list("write-var",
                       {Sexp::make_atom(c.name), expr_to_sexp(*c.e1)});
    case CmdKind::Alloc:
      return head_list("alloc", {Sexp::make_atom(std::to_string(c.count)),
                                 expr_to_sexp(*c.e1)});
    case CmdKind::ReadPtr:
      return head_list("read-ptr", {expr_to_sexp(*c.e1)});
    case CmdKind::WritePtr:
      return head_list("write-ptr",
                       {expr_to_sexp(*c.e1), expr_to_sexp(*c.e2)});
    case CmdKind::Free:
      return head_list("free", {expr_to_sexp(*c.e1)});
    case CmdKind::Fail:
    case CmdKind::Loop:
      return Sexp::make_atom(head_name(c.kind));
  }
  return Sexp::make_atom("?");
}

Sexp program_to_sexp(const Program& p) {
  std::vector<Sexp> rest;
  for (const auto& [name, def] : p.functions) {
    std::vector<Sexp> params;
    for (const auto& prm : def.params) params.push_back(Sexp::make_atom(prm));
    rest.push_back(head_list(
        "def", {Sexp::make_atom(name), Sexp::make_list(std::move(params)),
                cmd_to_sexp(*def.body)}));
  }
  rest.push_back(head_list("main", {cmd_to_sexp(*p.main)}));
  return head_list("program", std::move(rest));
}

Result<ExprPtr> expr_from_sexp(const Sexp& s) {
  if (s.is_atom) {
    if (s.atom == "unit") return e_unit();
    if (s.atom == "null") return e_null();
    return err<ExprPtr>(s, "unknown expression atom '" + s.atom + "'");
  }
  if (s.items.empty() || !s.items[0].is_atom) {
    return err<ExprPtr>(s, "expected an expression head");
  }
  const std::string& head = s.items[0].atom;
  auto arity = [&](std::size_t n) { return s.items.size() == n + 1; };
  auto arity_err = [&]() {
    return err<ExprPtr>(s, "wrong arity for '" + head + "'");
  };

  if (head == "fvar") {
    if (!arity(1)) return arity_err();
    auto name = parse_name(s.items[1], "temporary name");
    if (!name) return name.propagate<ExprPtr>();
    return e_fvar(*name);
  }
  if (head == "bool") {
    if (!arity(1) || !s.items[1].is_atom) return arity_err();
    if (s.items[1].atom == "true") return e_bool(true);
    if (s.items[1].atom == "false") return e_bool(false);
    return err<ExprPtr>(s.items[1], "expected true or false");
  }
  if (head == "nat") {
    if (!arity(1) || !s.items[1].is_atom) return arity_err();
    if (!all_digits(s.items[1].atom)) {
      return err<ExprPtr>(s.items[1], "expected a decimal literal");
    }
    return e_nat(parse_word(s.items[1].atom));
  }
  if (head == "not") {
    if (!arity(1)) return arity_err();
    auto a = expr_from_sexp(s.items[1]);
    if (!a) return a;
    return e_not(*a);
  }

  using Binop = ExprPtr (*)(ExprPtr, ExprPtr);
  static const std::pair<const char*, Binop> kBinops[] = {
      {"add", e_add}, {"sub", e_sub}, {"eq", e_eq},
      {"neq", e_neq}, {"and", e_and}, {"or", e_or},
      {"lt", e_lt},   {"ptr-shift", e_ptr_shift},
  };
  for (const auto& [name, fn] : kBinops) {
    if (head == name) {
      if (!arity(2)) return arity_err();
      auto a = expr_from_sexp(s.items[1]);
      if (!a) return a;
      auto b = expr_from_sexp(s.items[2]);
      if (!b) return b;
      return fn(*a, *b);
    }
  }
  return err<ExprPtr>(s.items[0], "unknown expression head '" + head + "'");
}

Result<CmdPtr> cmd_from_sexp(const Sexp& s) {
  if (s.is_atom) {
    if (s.atom == "fail") return c_fail();
    if (s.atom == "loop") return c_loop();
    return err<CmdPtr>(s, "unknown command atom '" + s.atom + "'");
  }
  if (s.items.empty() || !s.items[0].is_atom) {
    return err<CmdPtr>(s, "expected a command head");
  }
  const std::string& head = s.items[0].atom;
  auto arity = [&](std::size_t n) { return s.items.size() == n + 1; };
  auto arity_err = [&]() {
    return err<CmdPtr>(s, "wrong arity for '" + head + "'");
  };
  auto sub_expr = [&](std::size_t i) { return expr_from_sexp(s.items[i]); };
  auto sub_cmd = [&](std::size_t i) { return cmd_from_sexp(s.items[i]); };

  if (head == "ret") {
    if (!arity(1)) return arity_err();
    auto e = sub_expr(1);
    if (!e) return e.propagate<CmdPtr>();
    return c_ret(*e);
  }
  if (head == "bind" || head == "var") {
    if (!arity(3)) return arity_err();
    auto name = parse_name(s.items[1], head == "bind" ? "temporary name"
                                                      : "variable name");
    if (!name) return name.propagate<CmdPtr>();
    auto c1 = sub_cmd(2);
    if (!c1) return c1;
    auto c2 = sub_cmd(3);
    if (!c2) return c2;
    return head == "bind" ? c_bind(*name, *c1, *c2) : c_var(*name, *c1, *c2);
  }
  if (head == "seq" || head == "while") {
    if (!arity(2)) return arity_err();
    auto c1 = sub_cmd(1);
    if (!c1) return c1;
    auto c2 = sub_cmd(2);
    if (!c2) return c2;
    return head == "seq" ? c_seq(*c1, *c2) : c_while(*c1, *c2);
  }
  if (head == "call") {
    if (s.items.size() < 2) return arity_err();
    auto name = parse_name(s.items[1], "function name");
    if (!name) return name.propagate<CmdPtr>();
    std::vector<ExprPtr> args;
    for (std::size_t i = 2; i < s.items.size(); ++i) {
      auto a = sub_expr(i);
      if (!a) return a.propagate<CmdPtr>();
      args.push_back(*a);
    }
    return c_call(*name, std::move(args));
  }
  if (head == "if") {
    if (!arity(3)) return arity_err();
    auto e = sub_expr(1);
    if (!e) return e.propagate<CmdPtr>();
    auto c1 = sub_cmd(2);
    if (!c1) return c1;
    auto c2 = sub_cmd(3);
    if (!c2) return c2;
    return c_if(*e, *c1, *c2);
  }
  if (head == "read-var") {
    if (!arity(1)) return arity_err();
    auto name = parse_name(s.items[1], "variable name");
    if (!name) return name.propagate<CmdPtr>();
    return c_read_var(*name);
  }
  if (head == "write-var") {
    if (!arity(2)) return arity_err();
    auto name = parse_name(s.items[1], "variable name");
    if (!name) return name.propagate<CmdPtr>();
    auto e = sub_expr(2);
    if (!e) return e.propagate<CmdPtr>();
    return c_write_var(*name, *e);
  }
  if (head == "alloc") {
    if (!arity(2)) return arity_err();
    if (!s.items[1].is_atom || !all_digits(s.items[1].atom)) {
      return err<CmdPtr>(s.items[1], "expected a literal cell count");
    }
    auto e = sub_expr(2);
    if (!e) return e.propagate<CmdPtr>();
    return c_alloc(parse_word(s.items[1].atom), *e);
  }
  if (head == "read-ptr" || head == "free") {
    if (!arity(1)) return arity_err();
    auto e = sub_expr(1);
    if (!e) return e.propagate<CmdPtr>();
    return head == "read-ptr" ? c_read_ptr(*e) : c_free(*e);
  }
  if (head == "write-ptr") {
    if (!arity(2)) return arity_err();
    auto p = sub_expr(1);
    if (!p) return p.propagate<CmdPtr>();
    auto v = sub_expr(2);
    if (!v) return v.propagate<CmdPtr>();
    return c_write_ptr(*p, *v);
  }
  return err<CmdPtr>(s.items[0], "unknown command head '" + head + "'");
}

Result<std::pair<std::string, FunctionDef>> def_from_sexp(const Sexp& s) {
  using R = Result<std::pair<std::string, FunctionDef>>;
  if (s.is_atom || s.items.size() != 4 || !s.items[0].is_atom ||
      s.items[0].atom != "def") {
    return err<std::pair<std::string, FunctionDef>>(
        s, "expected (def <name> (<params>) <cmd>)");
  }
  auto name = parse_name(s.items[1], "function name");
  if (!name) return name.propagate<std::pair<std::string, FunctionDef>>();
  if (s.items[2].is_atom) {
    return err<std::pair<std::string, FunctionDef>>(
        s.items[2], "expected a parameter list");
  }
  FunctionDef def;
  for (const auto& prm : s.items[2].items) {
    auto pn = parse_name(prm, "parameter name");
    if (!pn) return pn.propagate<std::pair<std::string, FunctionDef>>();
    def.params.push_back(*pn);
  }
  auto body = cmd_from_sexp(s.items[3]);
  if (!body) return body.propagate<std::pair<std::string, FunctionDef>>();
  def.body = *body;
  return R(std::make_pair(*name, std::move(def)));
}

Result<Program> program_from_sexp(const Sexp& s) {
  if (s.is_atom || s.items.empty() || !s.items[0].is_atom ||
      s.items[0].atom != "program") {
    return err<Program>(s, "expected (program ...)");
  }
  Program p;
  std::set<std::string> seen;
  bool have_main = false;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& form = s.items[i];
    if (form.is_atom || form.items.empty() || !form.items[0].is_atom) {
      return err<Program>(form, "expected (def ...) or (main ...)");
    }
    const std::string& head = form.items[0].atom;
    if (head == "def") {
      if (have_main) {
        return err<Program>(form, "function definition after (main ...)");
      }
      auto def = def_from_sexp(form);
      if (!def) return def.propagate<Program>();
      if (!seen.insert(def->first).second) {
        return err<Program>(form.items[1],
                            "duplicate function '" + def->first + "'");
      }
      p.functions.push_back(std::move(*def));
    } else if (head == "main") {
      if (form.items.size() != 2) {
        return err<Program>(form, "wrong arity for 'main'");
      }
      if (have_main) return err<Program>(form, "duplicate (main ...)");
      auto body = cmd_from_sexp(form.items[1]);
      if (!body) return body.propagate<Program>();
      p.main = *body;
      have_main = true;
    } else {
      return err<Program>(form.items[0],
                          "expected 'def' or 'main', got '" + head + "'");
    }
  }
  if (!have_main) return err<Program>(s, "program has no (main ...)");
  return p;
}

std::string serialize(const Expr& e) { return write_sexpr(expr_to_sexp(e)); }
std::string serialize(const Cmd& c) { return write_sexpr(cmd_to_sexp(c)); }
std::string serialize(const Program& p) {
  return write_sexpr(program_to_sexp(p));
}

namespace {

Result<Sexp> single_form(std::string_view text) {
  auto forms = parse_sexprs(text);
  if (!forms) return forms.propagate<Sexp>();
  if (forms->size() != 1) {
    return Result<Sexp>::failure("expected exactly one top-level form, got " +
                                 std::to_string(forms->size()));
  }
  return std::move(forms->front());
}

}  // namespace

Result<ExprPtr> parse_expr(std::string_view text) {
  auto form = single_form(text);
  if (!form) return form.propagate<ExprPtr>();
  return expr_from_sexp(*form);
}

Result<CmdPtr> parse_cmd(std::string_view text) {
  auto form = single_form(text);
  if (!form) return form.propagate<CmdPtr>();
  return cmd_from_sexp(*form);
}

Result<Program> parse_program(std::string_view text) {
  auto form = single_form(text);
  if (!form) return form.propagate<Program>();
  return program_from_sexp(*form);
}

}  // namespace gallinac
