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

#include <algorithm>
#include <string>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/wellformed.hpp"
#include "testutil.hpp"

using namespace gallinac;

namespace {

Program main_only(CmdPtr c) {
  Program p;
  p.main = std::move(c);
  return p;
}

bool has_code(const std::vector<Diagnostic>& ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST_CASE("the reversal fixture is well formed") {
  auto p = parse_program(testutil::slurp(testutil::fixture_path(
      "reverse.gac")));
  REQUIRE(p.ok());
  CHECK(well_formed(p.value()).empty());
}

TEST_CASE("unbound temporaries are reported per use site") {
  auto ds = well_formed(main_only(c_ret(e_fvar("x"))));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "unbound-temp");
  CHECK(ds[0].message == "unbound temporary 'x' in main");
}

TEST_CASE("a bind scopes its temporary over the body only") {
  // The init may not see the binder; the body may.
  auto bad = main_only(
      c_bind("x", c_ret(e_fvar("x")), c_ret(e_fvar("x"))));
  auto ds = well_formed(bad);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "unbound-temp");

  auto good = main_only(
      c_bind("x", c_ret(e_nat(1)), c_ret(e_fvar("x"))));
  CHECK(well_formed(good).empty());
}

TEST_CASE("function parameters seed the temporary scope") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{"a"}, c_ret(e_fvar("a"))});
  p.main = c_call("f", {e_nat(1)});
  CHECK(well_formed(p).empty());

  Program q;
  q.functions.emplace_back("f", FunctionDef{{"a"}, c_ret(e_fvar("b"))});
  q.main = c_call("f", {e_nat(1)});
  auto ds = well_formed(q);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message == "unbound temporary 'b' in f");
}

TEST_CASE("same-frame store shadowing is rejected") {
  auto bad = main_only(c_var(
      "x", c_ret(e_nat(0)),
      c_var("x", c_ret(e_nat(1)), c_ret(e_unit()))));
  auto ds = well_formed(bad);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "store-var-shadowing");
  CHECK(ds[0].message ==
        "variable 'x' shadows an active variable of the same function in "
        "main");
}

TEST_CASE("a var in the initializer of a var is not shadowing") {
  // The outer variable only becomes active after its initializer ran.
  auto ok = main_only(c_var(
      "x", c_var("x", c_ret(e_nat(0)), c_read_var("x")),
      c_read_var("x")));
  CHECK(well_formed(ok).empty());
}

TEST_CASE("sequential vars of the same name do not shadow") {
  auto ok = main_only(c_seq(
      c_var("x", c_ret(e_nat(0)), c_read_var("x")),
      c_var("x", c_ret(e_nat(1)), c_read_var("x"))));
  CHECK(well_formed(ok).empty());
}

TEST_CASE("cross-function shadowing is allowed") {
  Program p;
  p.functions.emplace_back(
      "f", FunctionDef{{}, c_var("x", c_ret(e_nat(2)), c_read_var("x"))});
  p.main = c_var("x", c_ret(e_nat(1)), c_call("f", {}));
  CHECK(well_formed(p).empty());
}

TEST_CASE("callees see variables of their callers") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_read_var("v")});
  p.main = c_var("v", c_ret(e_nat(0)), c_call("f", {}));
  CHECK(well_formed(p).empty());
}

TEST_CASE("unreachable functions are checked against an empty scope") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_read_var("v")});
  p.main = c_var("v", c_ret(e_nat(0)), c_ret(e_unit()));
  auto ds = well_formed(p);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "unbound-store-var");
  CHECK(ds[0].message == "store variable 'v' is not in scope in f");
}

TEST_CASE("unbound store variables are reported") {
  auto ds = well_formed(main_only(c_read_var("v")));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "unbound-store-var");
  CHECK(ds[0].message == "store variable 'v' is not in scope in main");

  auto ws = well_formed(main_only(c_write_var("w", e_nat(1))));
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].code == "unbound-store-var");
}

TEST_CASE("unknown callees and arity mismatches") {
  auto ds = well_formed(main_only(c_call("g", {})));
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "unknown-function");
  CHECK(ds[0].message == "call to unknown function 'g' in main");

  Program p;
  p.functions.emplace_back("f", FunctionDef{{"a"}, c_ret(e_fvar("a"))});
  p.main = c_call("f", {});
  auto es = well_formed(p);
  REQUIRE(es.size() == 1);
  CHECK(es[0].code == "arity-mismatch");
  CHECK(es[0].message ==
        "call to 'f' in main passes 0 arguments, expected 1");
}

TEST_CASE("duplicate diagnostics are reported once") {
  auto ds = well_formed(main_only(
      c_seq(c_call("g", {}), c_call("g", {}))));
  CHECK(ds.size() == 1);
}

TEST_CASE("self recursion is rejected") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_call("f", {})});
  p.main = c_call("f", {});
  auto ds = well_formed(p);
  REQUIRE(has_code(ds, "recursion"));
  for (const auto& d : ds) {
    if (d.code == "recursion") {
      CHECK(d.message == "function 'f' participates in a call cycle");
    }
  }
}

TEST_CASE("mutual recursion is rejected") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_call("g", {})});
  p.functions.emplace_back("g", FunctionDef{{}, c_call("f", {})});
  p.main = c_ret(e_unit());
  CHECK(has_code(well_formed(p), "recursion"));
}

TEST_CASE("acyclic call chains pass") {
  Program p;
  p.functions.emplace_back("h", FunctionDef{{}, c_ret(e_nat(3))});
  p.functions.emplace_back("g", FunctionDef{{}, c_call("h", {})});
  p.functions.emplace_back("f", FunctionDef{{}, c_seq(c_call("g", {}),
                                                      c_call("h", {}))});
  p.main = c_call("f", {});
  CHECK(well_formed(p).empty());
}

TEST_CASE("duplicate functions and parameters") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_ret(e_unit())});
  p.functions.emplace_back("f", FunctionDef{{}, c_ret(e_unit())});
  p.main = c_ret(e_unit());
  CHECK(has_code(well_formed(p), "duplicate-function"));

  Program q;
  q.functions.emplace_back("g", FunctionDef{{"a", "a"}, c_ret(e_unit())});
  q.main = c_ret(e_unit());
  auto ds = well_formed(q);
  REQUIRE(has_code(ds, "duplicate-param"));
}

TEST_CASE("invalid names are flagged wherever they can appear") {
  Program p;
  p.functions.emplace_back("1bad", FunctionDef{{}, c_ret(e_unit())});
  p.main = c_ret(e_unit());
  CHECK(has_code(well_formed(p), "invalid-name"));

  Program q;
  q.functions.emplace_back("f", FunctionDef{{"9x"}, c_ret(e_unit())});
  q.main = c_ret(e_unit());
  CHECK(has_code(well_formed(q), "invalid-name"));

  auto binder = well_formed(main_only(
      c_bind("bad name", c_ret(e_nat(1)), c_ret(e_unit()))));
  REQUIRE(has_code(binder, "invalid-name"));

  auto var = well_formed(main_only(
      c_var("", c_ret(e_nat(1)), c_ret(e_unit()))));
  CHECK(has_code(var, "invalid-name"));
}

TEST_CASE("a program without main or without a body is rejected") {
  Program p;
  p.functions.emplace_back("f", FunctionDef{{}, c_ret(e_unit())});
  auto ds = well_formed(p);
  REQUIRE(has_code(ds, "missing-main"));

  Program q;
  q.functions.emplace_back("f", FunctionDef{{}, nullptr});
  q.main = c_ret(e_unit());
  auto es = well_formed(q);
  REQUIRE(has_code(es, "missing-body"));
}
