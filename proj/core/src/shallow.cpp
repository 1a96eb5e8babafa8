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

#include "gallinac/shallow.hpp"

#include <sstream>
#include <stdexcept>

namespace gallinac::shallow {

namespace {

[[noreturn]] void complain(const Loc& loc, const std::string& what) {
  std::ostringstream os;
  os << loc.file_name() << ":" << loc.line() << ": " << what;
  throw std::invalid_argument(os.str());
}

void need_name(const std::string& name, const char* what, const Loc& loc) {
  if (!valid_identifier(name)) {
    complain(loc, std::string(what) + ": invalid name '" + name + "'");
  }
}

void need(bool ok, const char* what, const Loc& loc) {
  if (!ok) complain(loc, std::string(what) + ": missing subtree");
}

}  // namespace

ExprPtr fvar(std::string name, Loc loc) {
  need_name(name, "fvar", loc);
  return e_fvar(std::move(name));
}

CmdPtr ret(ExprPtr e, Loc loc) {
  need(e != nullptr, "ret", loc);
  return c_ret(std::move(e));
}

CmdPtr bind(std::string name, CmdPtr c1, CmdPtr c2, Loc loc) {
  need_name(name, "bind", loc);
  need(c1 != nullptr && c2 != nullptr, "bind", loc);
  return c_bind(std::move(name), std::move(c1), std::move(c2));
}

CmdPtr seq(CmdPtr c1, CmdPtr c2, Loc loc) {
  need(c1 != nullptr && c2 != nullptr, "seq", loc);
  return c_seq(std::move(c1), std::move(c2));
}

CmdPtr call(std::string fn, std::vector<ExprPtr> args, Loc loc) {
  need_name(fn, "call", loc);
  for (const auto& a : args) need(a != nullptr, "call", loc);
  return c_call(std::move(fn), std::move(args));
}

CmdPtr if_(ExprPtr cond, CmdPtr then_cmd, CmdPtr else_cmd, Loc loc) {
  need(cond != nullptr && then_cmd != nullptr && else_cmd != nullptr, "if",
       loc);
  return c_if(std::move(cond), std::move(then_cmd), std::move(else_cmd));
}

CmdPtr while_(CmdPtr cond, CmdPtr body, Loc loc) {
  need(cond != nullptr && body != nullptr, "while", loc);
  return c_while(std::move(cond), std::move(body));
}

CmdPtr var(std::string name, CmdPtr init, CmdPtr rest, Loc loc) {
  need_name(name, "var", loc);
  need(init != nullptr && rest != nullptr, "var", loc);
  return c_var(std::move(name), std::move(init), std::move(rest));
}

CmdPtr read_var(std::string name, Loc loc) {
  need_name(name, "read-var", loc);
  return c_read_var(std::move(name));
}

CmdPtr write_var(std::string name, ExprPtr e, Loc loc) {
  need_name(name, "write-var", loc);
  need(e != nullptr, "write-var", loc);
  return c_write_var(std::move(name), std::move(e));
}

CmdPtr alloc(Word count, ExprPtr init, Loc loc) {
  need(init != nullptr, "alloc", loc);
  return c_alloc(count, std::move(init));
}

CmdPtr read_ptr(ExprPtr p, Loc loc) {
  need(p != nullptr, "read-ptr", loc);
  return c_read_ptr(std::move(p));
}

CmdPtr write_ptr(ExprPtr p, ExprPtr v, Loc loc) {
  need(p != nullptr && v != nullptr, "write-ptr", loc);
  return c_write_ptr(std::move(p), std::move(v));
}

CmdPtr free_(ExprPtr p, Loc loc) {
  need(p != nullptr, "free", loc);
  return c_free(std::move(p));
}

CmdPtr fail() { return c_fail(); }
CmdPtr loop() { return c_loop(); }

FunctionDef deref_next_def() {
  FunctionDef def;
  def.body = bind("ptr", read_var("node"),
                  bind("val",
                       read_ptr(e_ptr_shift(fvar("ptr"), e_nat(1))),
                       ret(fvar("val"))));
  return def;
}

FunctionDef cond_def() {
  FunctionDef def;
  def.body = bind("curr", read_var("node"),
                  ret(e_not(e_eq(fvar("curr"), e_null()))));
  return def;
}

FunctionDef reverse_def() {
  FunctionDef def;
  def.params = {"l"};
  CmdPtr step =
      bind("ptr", read_var("node"),
           bind("next", call("deref_next", {}),
                bind("prev", read_var("new_next"),
                     seq(write_ptr(e_ptr_shift(fvar("ptr"), e_nat(1)),
                                   fvar("prev")),
                         seq(write_var("new_next", fvar("ptr")),
                             write_var("node", fvar("next")))))));
  def.body = var("node", ret(fvar("l")),
                 var("new_next", ret(e_null()),
                     seq(while_(call("cond", {}), step),
                         read_var("new_next"))));
  return def;
}

Program reverse_program(CmdPtr main) {
  Program p;
  p.functions.emplace_back("deref_next", deref_next_def());
  p.functions.emplace_back("cond", cond_def());
  p.functions.emplace_back("reverse", reverse_def());
  p.main = std::move(main);
  return p;
}

CmdPtr list_prologue_main(std::span<const Word> values) {
  const std::size_t k = values.size();
  if (k == 0) return call("reverse", {e_null()});

  auto node_name = [](std::size_t i) { return "n" + std::to_string(i + 1); };

  // Innermost command: link the nodes, then call reverse on the head.
  CmdPtr tail = call("reverse", {fvar(node_name(0))});
  for (std::size_t i = k; i-- > 0;) {
    ExprPtr next =
        i + 1 < k ? fvar(node_name(i + 1)) : e_null();
    tail = seq(write_ptr(e_ptr_shift(fvar(node_name(i)), e_nat(1)), next),
               tail);
  }
  for (std::size_t i = k; i-- > 0;) {
    tail = bind(node_name(i), alloc(2, e_nat(values[i])), tail);
  }
  return tail;
}

}  // namespace gallinac::shallow
