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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "gallinac/ast.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/sexpr.hpp"
#include "testutil.hpp"

using namespace gallinac;

TEST_CASE("expression serialization is the canonical s-expression") {
  CHECK(serialize(*e_unit()) == "unit");
  CHECK(serialize(*e_null()) == "null");
  CHECK(serialize(*e_bool(true)) == "(bool true)");
  CHECK(serialize(*e_bool(false)) == "(bool false)");
  CHECK(serialize(*e_nat(17)) == "(nat 17)");
  CHECK(serialize(*e_fvar("x")) == "(fvar x)");
  CHECK(serialize(*e_not(e_fvar("b"))) == "(not (fvar b))");
  CHECK(serialize(*e_add(e_nat(1), e_nat(2))) == "(add (nat 1) (nat 2))");
  CHECK(serialize(*e_sub(e_nat(5), e_fvar("k"))) ==
        "(sub (nat 5) (fvar k))");
  CHECK(serialize(*e_eq(e_fvar("p"), e_null())) == "(eq (fvar p) null)");
  CHECK(serialize(*e_neq(e_nat(0), e_nat(1))) == "(neq (nat 0) (nat 1))");
  CHECK(serialize(*e_and(e_bool(true), e_fvar("b"))) ==
        "(and (bool true) (fvar b))");
  CHECK(serialize(*e_or(e_fvar("a"), e_fvar("b"))) ==
        "(or (fvar a) (fvar b))");
  CHECK(serialize(*e_lt(e_nat(0), e_fvar("n"))) == "(lt (nat 0) (fvar n))");
  CHECK(serialize(*e_ptr_shift(e_fvar("p"), e_nat(1))) ==
        "(ptr-shift (fvar p) (nat 1))");
}

TEST_CASE("command serialization is the canonical s-expression") {
  CHECK(serialize(*c_ret(e_unit())) == "(ret unit)");
  CHECK(serialize(*c_bind("x", c_ret(e_nat(1)), c_ret(e_fvar("x")))) ==
        "(bind x (ret (nat 1)) (ret (fvar x)))");
  CHECK(serialize(*c_seq(c_fail(), c_loop())) == "(seq fail loop)");
  CHECK(serialize(*c_call("f", {e_nat(1), e_fvar("y")})) ==
        "(call f (nat 1) (fvar y))");
  CHECK(serialize(*c_call("g", {})) == "(call g)");
  CHECK(serialize(*c_if(e_fvar("b"), c_ret(e_nat(1)), c_ret(e_nat(2)))) ==
        "(if (fvar b) (ret (nat 1)) (ret (nat 2)))");
  CHECK(serialize(*c_while(c_ret(e_bool(true)), c_ret(e_unit()))) ==
        "(while (ret (bool true)) (ret unit))");
  CHECK(serialize(*c_var("v", c_ret(e_nat(0)), c_read_var("v"))) ==
        "(var v (ret (nat 0)) (read-var v))");
  CHECK(serialize(*c_write_var("v", e_nat(3))) ==
        "(write-var v (nat 3))");
  CHECK(serialize(*c_alloc(2, e_nat(7))) == "(alloc 2 (nat 7))");
  CHECK(serialize(*c_read_ptr(e_fvar("p"))) == "(read-ptr (fvar p))");
  CHECK(serialize(*c_write_ptr(e_fvar("p"), e_nat(9))) ==
        "(write-ptr (fvar p) (nat 9))");
  CHECK(serialize(*c_free(e_fvar("p"))) == "(free (fvar p))");
}

TEST_CASE("program serialization names defs and main in order") {
  Program p;
  p.functions.emplace_back(
      "id", FunctionDef{{"x"}, c_ret(e_fvar("x"))});
  p.main = c_call("id", {e_nat(5)});
  CHECK(serialize(p) ==
        "(program (def id (x) (ret (fvar x))) (main (call id (nat 5))))");

  Program q;
  q.main = c_ret(e_unit());
  CHECK(serialize(q) == "(program (main (ret unit)))");
}

TEST_CASE("parse then serialize is the identity on fixtures") {
  for (const char* name : {"reverse.gac", "oob.gac", "uaf.gac", "loop.gac"}) {
    CAPTURE(name);
    const std::string text = testutil::slurp(testutil::fixture_path(name));
    auto p = parse_program(text);
    REQUIRE(p.ok());
    const std::string once = serialize(p.value());
    auto again = parse_program(once);
    REQUIRE(again.ok());
    CHECK(serialize(again.value()) == once);
  }
}

TEST_CASE("whitespace and comments do not affect the parse") {
  auto a = parse_cmd("(seq (ret unit) (ret (nat 3)))");
  auto b = parse_cmd(
      "; trailing comment\n(seq\n   (ret unit) ; mid comment\n"
      "   (ret (nat 3)))\n");
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(cmd_equal(*a.value(), *b.value()));
  CHECK(serialize(*b.value()) == "(seq (ret unit) (ret (nat 3)))");
}

TEST_CASE("parse errors carry source positions") {
  auto unterminated = parse_cmd("(seq (ret unit)");
  REQUIRE(!unterminated.ok());
  CHECK(unterminated.error() ==
        "line 1, col 1: unterminated list (missing ')')");

  auto stray = parse_cmd(")");
  REQUIRE(!stray.ok());
  CHECK(stray.error() == "line 1, col 1: unexpected ')'");

  auto two = parse_cmd("(ret unit) (ret unit)");
  REQUIRE(!two.ok());
  CHECK(two.error() == "expected exactly one top-level form, got 2");

  auto badhead = parse_cmd("(retr unit)");
  REQUIRE(!badhead.ok());
  CHECK(badhead.error() == "line 1, col 2: unknown command head 'retr'");

  auto arity = parse_cmd("(bind x (ret unit))");
  REQUIRE(!arity.ok());
  CHECK(arity.error() == "line 1, col 1: wrong arity for 'bind'");

  auto badlit = parse_expr("(nat abc)");
  REQUIRE(!badlit.ok());
  CHECK(badlit.error() == "line 1, col 6: expected a decimal literal");

  auto badbool = parse_expr("(bool yes)");
  REQUIRE(!badbool.ok());
  CHECK(badbool.error() == "line 1, col 7: expected true or false");

  auto badcount = parse_cmd("(alloc (nat 2) (nat 0))");
  REQUIRE(!badcount.ok());
  CHECK(badcount.error() == "line 1, col 8: expected a literal cell count");

  auto atomcmd = parse_cmd("retx");
  REQUIRE(!atomcmd.ok());
  CHECK(atomcmd.error() == "line 1, col 1: unknown command atom 'retx'");
}

TEST_CASE("program-level parse errors") {
  auto nomain = parse_program("(program (def f () (ret unit)))");
  REQUIRE(!nomain.ok());
  CHECK(nomain.error() == "line 1, col 1: program has no (main ...)");

  auto defafter =
      parse_program("(program (main (ret unit)) (def f () (ret unit)))");
  REQUIRE(!defafter.ok());
  CHECK(defafter.error() ==
        "line 1, col 28: function definition after (main ...)");

  auto dup = parse_program("(program (main (ret unit)) (main (ret unit)))");
  REQUIRE(!dup.ok());
  CHECK(dup.error() == "line 1, col 28: duplicate (main ...)");

  auto notprog = parse_program("(main (ret unit))");
  REQUIRE(!notprog.ok());
  CHECK(notprog.error() == "line 1, col 1: expected (program ...)");
}

TEST_CASE("fail and loop parse as bare atoms") {
  auto f = parse_cmd("fail");
  REQUIRE(f.ok());
  CHECK(f.value()->kind == CmdKind::Fail);
  auto l = parse_cmd("loop");
  REQUIRE(l.ok());
  CHECK(l.value()->kind == CmdKind::Loop);
}

TEST_CASE("node_count counts commands and expressions") {
  CHECK(node_count(*e_nat(1)) == 1);
  CHECK(node_count(*e_add(e_nat(1), e_nat(2))) == 3);
  CHECK(node_count(*c_ret(e_unit())) == 2);
  CHECK(node_count(*c_seq(c_fail(), c_loop())) == 3);
  CHECK(node_count(*c_if(e_fvar("b"), c_fail(), c_fail())) == 4);

  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_fail()});
  p.main = c_call("f", {});
  CHECK(node_count(p) == 2);
}

TEST_CASE("structural equality ignores sharing") {
  auto shared = e_nat(4);
  auto a = c_seq(c_ret(shared), c_ret(shared));
  auto b = c_seq(c_ret(e_nat(4)), c_ret(e_nat(4)));
  CHECK(cmd_equal(*a, *b));
  CHECK(!cmd_equal(*a, *c_seq(c_ret(e_nat(4)), c_ret(e_nat(5)))));

  auto p1 = parse_program(testutil::slurp(testutil::fixture_path(
      "reverse.gac")));
  REQUIRE(p1.ok());
  auto p2 = parse_program(serialize(p1.value()));
  REQUIRE(p2.ok());
  CHECK(program_equal(p1.value(), p2.value()));
}

TEST_CASE("identifier discipline") {
  CHECK(valid_identifier("x"));
  CHECK(valid_identifier("new_next"));
  CHECK(valid_identifier("deref-next"));
  CHECK(valid_identifier("a0"));
  CHECK(!valid_identifier(""));
  CHECK(!valid_identifier("0a"));
  CHECK(!valid_identifier("has space"));
  CHECK(!valid_identifier("paren("));
  CHECK(!valid_identifier("%main"));
}

TEST_CASE("head names match serialized forms") {
  CHECK(std::string(head_name(CmdKind::ReadVar)) == "read-var");
  CHECK(std::string(head_name(CmdKind::WritePtr)) == "write-ptr");
  CHECK(std::string(head_name(CmdKind::While)) == "while");
  CHECK(std::string(head_name(ExprKind::PtrShift)) == "ptr-shift");
  CHECK(std::string(head_name(ExprKind::FVar)) == "fvar");
}

TEST_CASE("sexpr writer round trips through the reader") {
  const std::string text = "(a (b c) (d (e) f))";
  auto forms = parse_sexprs(text);
  REQUIRE(forms.ok());
  REQUIRE(forms.value().size() == 1);
  CHECK(write_sexpr(forms.value()[0]) == text);
}
