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

#include <cstdint>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/denote.hpp"
#include "gallinac/shallow.hpp"
#include "gallinac/state.hpp"
#include "testutil.hpp"

using namespace gallinac;

namespace {

Program main_only(CmdPtr c) {
  Program p;
  p.main = std::move(c);
  return p;
}

// var i := n in while (0 < i) { i := i - 1 }, which arrives at the loop
// head n + 1 times.
CmdPtr countdown(Word n) {
  auto cond = c_bind("t", c_read_var("i"),
                     c_ret(e_lt(e_nat(0), e_fvar("t"))));
  auto dec = c_bind("v", c_read_var("i"),
                    c_write_var("i", e_sub(e_fvar("v"), e_nat(1))));
  return c_var("i", c_ret(e_nat(n)), c_while(cond, dec));
}

}  // namespace

TEST_CASE("pure commands need no fuel") {
  const Program empty;
  State s;
  auto r = denote_cmd(*c_ret(e_add(e_nat(2), e_nat(3))), empty, s, 0);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::nat(5));

  auto f = denote_cmd(*c_fail(), empty, s, 0);
  REQUIRE(f.is_failed());
  CHECK(f.reason() == "explicit fail");
}

TEST_CASE("bind threads the value and scopes the temporary") {
  const Program empty;
  auto c = c_bind("x", c_ret(e_nat(4)),
                  c_ret(e_add(e_fvar("x"), e_fvar("x"))));
  auto r = denote_cmd(*c, empty, State{}, 0);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::nat(8));
  // The binder does not survive the bind.
  CHECK(r.state().env.empty());

  auto bad = denote_cmd(*c_bind("x", c_fail(), c_ret(e_nat(1))), empty,
                        State{}, 0);
  REQUIRE(bad.is_failed());
  CHECK(bad.reason() == "explicit fail");
}

TEST_CASE("seq discards the first value") {
  auto r = denote_cmd(*c_seq(c_ret(e_nat(9)), c_ret(e_bool(true))),
                      Program{}, State{}, 0);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::boolean(true));
}

TEST_CASE("expression failures carry their position") {
  const Program empty;
  State s;
  auto cases = std::vector<std::pair<CmdPtr, const char*>>{
      {c_ret(e_not(e_nat(1))), "not operand: expected bool, got nat"},
      {c_ret(e_add(e_bool(true), e_nat(1))),
       "add operand: expected nat, got bool"},
      {c_ret(e_sub(e_nat(1), e_unit())),
       "sub operand: expected nat, got unit"},
      {c_ret(e_lt(e_null(), e_nat(1))),
       "lt operand: expected nat, got ptr"},
      {c_ret(e_and(e_nat(0), e_bool(true))),
       "and operand: expected bool, got nat"},
      {c_ret(e_or(e_bool(false), e_nat(1))),
       "or operand: expected bool, got nat"},
      {c_ret(e_eq(e_nat(0), e_bool(false))),
       "eq on mixed kinds (nat and bool)"},
      {c_ret(e_neq(e_unit(), e_null())),
       "neq on mixed kinds (unit and ptr)"},
      {c_ret(e_ptr_shift(e_nat(1), e_nat(0))),
       "ptr-shift base: expected ptr, got nat"},
      {c_ret(e_ptr_shift(e_null(), e_bool(true))),
       "ptr-shift amount: expected nat, got bool"},
      {c_if(e_nat(1), c_fail(), c_fail()),
       "if condition: expected bool, got nat"},
      {c_read_ptr(e_nat(1)), "read-ptr address: expected ptr, got nat"},
      {c_write_ptr(e_unit(), e_nat(0)),
       "write-ptr address: expected ptr, got unit"},
      {c_free(e_bool(true)), "free target: expected ptr, got bool"},
  };
  for (const auto& [cmd, want] : cases) {
    CAPTURE(want);
    auto r = denote_cmd(*cmd, empty, s, 0);
    REQUIRE(r.is_failed());
    CHECK(r.reason() == want);
  }
}

TEST_CASE("and and or are strict in both operands") {
  const Program empty;
  // A lazy and would short-circuit past the bad right operand.
  auto short_and = denote_cmd(*c_ret(e_and(e_bool(false), e_nat(1))),
                              empty, State{}, 0);
  REQUIRE(short_and.is_failed());

  auto short_or = denote_cmd(*c_ret(e_or(e_bool(true), e_nat(1))),
                             empty, State{}, 0);
  REQUIRE(short_or.is_failed());

  // Left operand errors win over right operand errors.
  auto both = denote_cmd(*c_ret(e_add(e_fvar("u1"), e_fvar("u2"))),
                         empty, State{}, 0);
  REQUIRE(both.is_failed());
  CHECK(both.reason() == "unbound temporary 'u1'");

  // Operands are evaluated left to right before any kind check.
  auto evalorder = denote_cmd(*c_ret(e_add(e_unit(), e_fvar("u2"))),
                              empty, State{}, 0);
  REQUIRE(evalorder.is_failed());
  CHECK(evalorder.reason() == "unbound temporary 'u2'");
}

TEST_CASE("equality compares within a kind") {
  const Program empty;
  auto t = denote_cmd(*c_ret(e_eq(e_null(), e_null())), empty, State{}, 0);
  REQUIRE(t.is_done());
  CHECK(t.value() == Value::boolean(true));

  auto n = denote_cmd(*c_ret(e_neq(e_nat(2), e_nat(3))), empty, State{}, 0);
  REQUIRE(n.is_done());
  CHECK(n.value() == Value::boolean(true));
}

TEST_CASE("fuel counts loop head arrivals") {
  Program p = main_only(countdown(3));
  // Three iterations plus the final false check: four arrivals.
  CHECK(denote_program(p, State{}, 3).is_bottom());
  auto done = denote_program(p, State{}, 4);
  REQUIRE(done.is_done());
  CHECK(done.value() == Value::unit());
  CHECK(done.state().store.empty());

  // The same run under more fuel is unchanged.
  CHECK(denote_program(p, State{}, 64) == done);
}

TEST_CASE("loop yields bottom regardless of fuel") {
  auto r = denote_cmd(*c_loop(), Program{}, State{}, 1000000);
  CHECK(r.is_bottom());
  CHECK(denote_cmd(*c_seq(c_ret(e_nat(1)), c_loop()), Program{}, State{},
                   1000000)
            .is_bottom());
}

TEST_CASE("a while-true loop exhausts any finite fuel") {
  auto w = c_while(c_ret(e_bool(true)), c_ret(e_unit()));
  for (std::uint64_t fuel : {0u, 1u, 7u, 100u}) {
    CHECK(denote_cmd(*w, Program{}, State{}, fuel).is_bottom());
  }
}

TEST_CASE("the while condition is checked after fuel is spent") {
  auto w = c_while(c_ret(e_nat(1)), c_ret(e_unit()));
  CHECK(denote_cmd(*w, Program{}, State{}, 0).is_bottom());
  auto r = denote_cmd(*w, Program{}, State{}, 1);
  REQUIRE(r.is_failed());
  CHECK(r.reason() == "while condition: expected bool, got nat");
}

TEST_CASE("kleene chains are monotone and stabilize") {
  Program p = main_only(countdown(3));
  auto chain = kleene_chain(*p.main, p, State{}, 8);
  REQUIRE(chain.size() == 9);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    CAPTURE(i);
    CHECK(approx_leq(chain[i], chain[i + 1]));
  }
  for (std::size_t i = 0; i < 4; ++i) CHECK(chain[i].is_bottom());
  for (std::size_t i = 4; i < chain.size(); ++i) {
    CHECK(chain[i] == chain[4]);
  }
  REQUIRE(chain[4].is_done());
}

TEST_CASE("one unfolding costs exactly one unit of fuel") {
  auto cond = c_bind("t", c_read_var("i"),
                     c_ret(e_lt(e_nat(0), e_fvar("t"))));
  auto dec = c_bind("v", c_read_var("i"),
                    c_write_var("i", e_sub(e_fvar("v"), e_nat(1))));
  auto w = c_while(cond, dec);
  auto unfolded = unfold_while(cond, dec);

  const Program empty;
  State s;
  s.store.bind("i", Value::nat(2));
  for (std::uint64_t fuel = 1; fuel <= 6; ++fuel) {
    CAPTURE(fuel);
    CHECK(denote_cmd(*w, empty, s, fuel) ==
          denote_cmd(*unfolded, empty, s, fuel - 1));
  }
}

TEST_CASE("calls swap the temporary environment") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_ret(e_fvar("x"))});
  p.main = c_bind("x", c_ret(e_nat(5)), c_call("f", {}));
  auto r = denote_program(p, State{}, 16);
  REQUIRE(r.is_failed());
  CHECK(r.reason() == "unbound temporary 'x'");

  Program q;
  q.functions.emplace_back("g", FunctionDef{{"a"}, c_ret(e_fvar("a"))});
  q.main = c_bind("x", c_ret(e_nat(5)), c_call("g", {e_fvar("x")}));
  auto ok = denote_program(q, State{}, 16);
  REQUIRE(ok.is_done());
  CHECK(ok.value() == Value::nat(5));
}

TEST_CASE("call failure order: function, arity, then arguments") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{"a"}, c_ret(e_fvar("a"))});
  p.main = c_ret(e_unit());

  // Unknown callee wins over an unevaluable argument.
  auto unk = denote_cmd(*c_call("nope", {e_fvar("missing")}), p, State{}, 4);
  REQUIRE(unk.is_failed());
  CHECK(unk.reason() == "unknown function 'nope'");

  // Arity wins over an unevaluable argument.
  auto ar = denote_cmd(*c_call("f", {}), p, State{}, 4);
  REQUIRE(ar.is_failed());
  CHECK(ar.reason() == "arity mismatch calling 'f': expected 1, got 0");

  auto arg = denote_cmd(*c_call("f", {e_fvar("missing")}), p, State{}, 4);
  REQUIRE(arg.is_failed());
  CHECK(arg.reason() == "unbound temporary 'missing'");
}

TEST_CASE("the store is dynamically scoped across calls") {
  Program p;
  p.functions.emplace_back("probe", FunctionDef{{}, c_read_var("v")});
  p.main = c_var("v", c_ret(e_nat(7)), c_call("probe", {}));
  auto r = denote_program(p, State{}, 16);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::nat(7));

  // Writes inside the callee land in the caller's variable.
  Program q;
  q.functions.emplace_back("bump",
                           FunctionDef{{}, c_write_var("v", e_nat(9))});
  q.main = c_var("v", c_ret(e_nat(0)),
                 c_seq(c_call("bump", {}), c_read_var("v")));
  auto w = denote_program(q, State{}, 16);
  REQUIRE(w.is_done());
  CHECK(w.value() == Value::nat(9));
}

TEST_CASE("alloc evaluates the initializer before the size check") {
  auto bad = denote_cmd(*c_alloc(0, e_fvar("missing")), Program{}, State{},
                        0);
  REQUIRE(bad.is_failed());
  CHECK(bad.reason() == "unbound temporary 'missing'");

  auto zero = denote_cmd(*c_alloc(0, e_nat(1)), Program{}, State{}, 0);
  REQUIRE(zero.is_failed());
  CHECK(zero.reason() == "alloc of zero cells");
}

TEST_CASE("heap commands round trip values") {
  auto c = c_bind(
      "p", c_alloc(2, e_nat(0)),
      c_seq(c_write_ptr(e_ptr_shift(e_fvar("p"), e_nat(1)), e_nat(33)),
            c_read_ptr(e_ptr_shift(e_fvar("p"), e_nat(1)))));
  auto r = denote_cmd(*c, Program{}, State{}, 0);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::nat(33));
  CHECK(r.state().heap.cell_count() == 2);
}

TEST_CASE("list reversal produces the mirrored heap") {
  const std::vector<Word> vals{10, 20, 30};
  Program p = shallow::reverse_program(shallow::list_prologue_main(vals));
  auto r = denote_program(p, State{}, 64);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::pointer({3, 0}));
  CHECK(r.state().heap.cells() == testutil::reversed_list_cells(vals));
  CHECK(r.state().heap.blocks().size() == 3);

  // Three nodes means four arrivals at the loop head.
  CHECK(denote_program(p, State{}, 3).is_bottom());
  CHECK(denote_program(p, State{}, 4).is_done());
}

TEST_CASE("reversing the empty list returns null") {
  Program p = shallow::reverse_program(
      shallow::list_prologue_main(std::vector<Word>{}));
  auto r = denote_program(p, State{}, 4);
  REQUIRE(r.is_done());
  CHECK(r.value() == Value::null());
  CHECK(r.state().heap.cell_count() == 0);
  CHECK(denote_program(p, State{}, 0).is_bottom());
  CHECK(denote_program(p, State{}, 1).is_done());
}

TEST_CASE("the write log records stores, allocs, and frees") {
  auto c = c_bind("p", c_alloc(1, e_nat(0)),
                  c_seq(c_write_ptr(e_fvar("p"), e_nat(5)),
                        c_free(e_fvar("p"))));
  HeapWriteLog log;
  auto r = denote_cmd_logged(*c, Program{}, State{}, 0, &log);
  REQUIRE(r.is_done());
  CHECK(log.allocated == std::set<BlockId>{1});
  CHECK(log.stored == std::set<Cell>{{1, 0}});
  CHECK(log.freed == std::set<BlockId>{1});

  // The log is still filled on a failing run.
  HeapWriteLog log2;
  auto f = denote_cmd_logged(
      *c_bind("p", c_alloc(1, e_nat(0)),
              c_seq(c_write_ptr(e_fvar("p"), e_nat(5)), c_fail())),
      Program{}, State{}, 0, &log2);
  REQUIRE(f.is_failed());
  CHECK(log2.stored == std::set<Cell>{{1, 0}});
}

TEST_CASE("failure reasons from the heap surface unchanged") {
  auto oob = c_bind("p", c_alloc(2, e_nat(7)),
                    c_read_ptr(e_ptr_shift(e_fvar("p"), e_nat(2))));
  auto r = denote_cmd(*oob, Program{}, State{}, 0);
  REQUIRE(r.is_failed());
  CHECK(r.reason() == "load out of bounds on b1 (size 2, offset 2)");

  auto uaf = c_bind("p", c_alloc(1, e_nat(3)),
                    c_seq(c_free(e_fvar("p")), c_read_ptr(e_fvar("p"))));
  auto u = denote_cmd(*uaf, Program{}, State{}, 0);
  REQUIRE(u.is_failed());
  CHECK(u.reason() == "load on freed block b1");
}
