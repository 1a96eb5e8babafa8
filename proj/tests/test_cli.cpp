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

#include <cstdio>
#include <string>

#include "json.hpp"

#include "gallinac/gac.hpp"
#include "testutil.hpp"

using testutil::fixture_path;
using testutil::run_cli;
using testutil::slurp;
using testutil::spit;

namespace {

std::string tmp_path(const std::string& name) {
  return "/tmp/gallinac_cli_" + name;
}

}  // namespace

TEST_CASE("run reports done with the final value") {
  auto r = run_cli("run " + fixture_path("reverse.gac"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "done ptr(b3,0)\n");
}

TEST_CASE("run with --trace keeps stdout clean") {
  auto r = run_cli("run --trace " + fixture_path("reverse.gac"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "done ptr(b3,0)\n");
}

TEST_CASE("run reports bottom with the exhausted budget") {
  auto r = run_cli("run " + fixture_path("loop.gac"));
  CHECK(r.exit_code == 2);
  CHECK(r.out == "bottom (fuel 1024)\n");

  auto small = run_cli("run --fuel 50 " + fixture_path("loop.gac"));
  CHECK(small.exit_code == 2);
  CHECK(small.out == "bottom (fuel 50)\n");
}

TEST_CASE("run reports memory faults verbatim") {
  auto oob = run_cli("run " + fixture_path("oob.gac"));
  CHECK(oob.exit_code == 1);
  CHECK(oob.out == "failed load out of bounds on b1 (size 2, offset 2)\n");

  auto uaf = run_cli("run " + fixture_path("uaf.gac"));
  CHECK(uaf.exit_code == 1);
  CHECK(uaf.out == "failed load on freed block b1\n");
}

TEST_CASE("run rejects unreadable and malformed inputs") {
  CHECK(run_cli("run /nonexistent/nothing.gac").exit_code == 3);

  const std::string broken = tmp_path("broken.gac");
  spit(broken, "(program (main (ret");
  auto r = run_cli("run " + broken);
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());
  std::remove(broken.c_str());
}

TEST_CASE("run rejects ill-formed programs") {
  const std::string unbound = tmp_path("unbound.gac");
  spit(unbound, "(program (main (ret (fvar x))))");
  auto r = run_cli("run " + unbound);
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());
  std::remove(unbound.c_str());
}

TEST_CASE("compile dumps match the golden files byte for byte") {
  auto ir = run_cli("compile --emit ir " + fixture_path("reverse.gac"));
  CHECK(ir.exit_code == 0);
  CHECK(ir.out == slurp(fixture_path("reverse.ir.txt")));

  auto cm = run_cli("compile --emit cminor " + fixture_path("reverse.gac"));
  CHECK(cm.exit_code == 0);
  CHECK(cm.out == slurp(fixture_path("reverse.cm.txt")));
}

TEST_CASE("compile output is stable across invocations") {
  const std::string args = "compile --emit cminor " + fixture_path(
      "reverse.gac");
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("compile defaults to the ir dump") {
  auto dflt = run_cli("compile " + fixture_path("reverse.gac"));
  auto ir = run_cli("compile --emit ir " + fixture_path("reverse.gac"));
  CHECK(dflt.exit_code == 0);
  CHECK(dflt.out == ir.out);
}

TEST_CASE("compile rejects unknown targets as a usage error") {
  auto r = run_cli("compile --emit wasm " + fixture_path("reverse.gac"));
  CHECK(r.exit_code == 64);
}

TEST_CASE("roundtrip prints the canonical form") {
  auto r = run_cli("roundtrip " + fixture_path("reverse.gac"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(fixture_path("reverse.gac")));

  const std::string messy = tmp_path("messy.gac");
  spit(messy,
       "(program ; a comment\n   (main\n (ret   (nat 5)\n)))\n");
  auto canon = run_cli("roundtrip " + messy);
  CHECK(canon.exit_code == 0);
  auto parsed = gallinac::parse_program(canon.out);
  REQUIRE(parsed.ok());
  CHECK(canon.out == gallinac::serialize(parsed.value()));
  std::remove(messy.c_str());
}

TEST_CASE("validate summarizes a campaign") {
  auto r = run_cli("validate --count 8 --seed 5");
  CHECK(r.exit_code == 0);
  REQUIRE(r.out.substr(0, 9) == "cases 8: ");
  std::size_t agree = 0, bottom = 0, disagree = 0;
  REQUIRE(std::sscanf(r.out.c_str(),
                      "cases 8: agree %zu, all-bottom %zu, disagree %zu",
                      &agree, &bottom, &disagree) == 3);
  CHECK(agree + bottom + disagree == 8);
  CHECK(disagree == 0);
}

TEST_CASE("validate writes a json report") {
  const std::string path = tmp_path("report.json");
  auto r = run_cli("validate --count 6 --seed 3 --json " + path);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["count"] == 6);
  CHECK(j["seed"] == 3);
  CHECK(j["ok"] == true);
  CHECK(j["disagree"] == 0);
  std::remove(path.c_str());
}

TEST_CASE("the seed environment variable mirrors --seed") {
  auto flag = run_cli("validate --count 5 --seed 99");
  auto env = run_cli("validate --count 5", "GALLINAC_SEED=99");
  CHECK(flag.exit_code == 0);
  CHECK(env.exit_code == 0);
  CHECK(env.out == flag.out);

  const std::string path = tmp_path("env_seed.json");
  auto json_run = run_cli("validate --count 5 --json " + path,
                          "GALLINAC_SEED=99");
  CHECK(json_run.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["seed"] == 99);
  CHECK(j["cases"][0]["seed"] == 99);
  std::remove(path.c_str());
}

TEST_CASE("validate honors a custom budget") {
  auto r = run_cli("validate --count 10 --seed 2 --budget 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 10) == "cases 10: ");
}

TEST_CASE("check-triple reports a clean mutation proof") {
  auto r = run_cli("check-triple " + fixture_path("mutation.gtr"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "triple 0: states 4, passes 4, bottoms 0, crashes 0, "
        "post-failures 0\n");
}

TEST_CASE("check-triple verifies the reversal spec file") {
  auto r = run_cli("check-triple " + fixture_path("reverse_triples.gtr"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("triple 3:") != std::string::npos);
}

TEST_CASE("check-triple flags a wrong postcondition") {
  const std::string path = tmp_path("wrong.gtr");
  spit(path,
       "(triple (pre (pointsto (fvar x) (fvar v)))\n"
       "        (cmd (write-ptr (fvar x) (nat 9)))\n"
       "        (post r (pointsto (fvar x) (nat 8))))\n");
  auto r = run_cli("check-triple " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("  post failure: pointsto: cell holds 9, expected 8\n") !=
        std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check-triple surfaces crashes with their reason") {
  const std::string path = tmp_path("crash.gtr");
  spit(path, "(triple (pre emp) (cmd fail) (post r emp))");
  auto r = run_cli("check-triple " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("crashes 1") != std::string::npos);
  CHECK(r.out.find("  crash: explicit fail\n") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check-triple writes a json report") {
  const std::string path = tmp_path("triples.json");
  auto r = run_cli("check-triple --json " + path + " " +
                   fixture_path("mutation.gtr"));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["ok"] == true);
  REQUIRE(j["triples"].size() == 1);
  CHECK(j["triples"][0]["passes"] == 4);
  std::remove(path.c_str());
}

TEST_CASE("check-triple rejects malformed spec files") {
  const std::string path = tmp_path("bad.gtr");
  spit(path, "(triple (pre emp))");
  auto r = run_cli("check-triple " + path);
  CHECK(r.exit_code == 3);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 64") {
  CHECK(run_cli("").exit_code == 64);
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("run").exit_code == 64);
}
