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
//
// End-to-end acceptance checks. Each criterion prints exactly one line,
// [PASS] or [FAIL], and the process exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/cminor.hpp"
#include "gallinac/denote.hpp"
#include "gallinac/fuzz.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/ir.hpp"
#include "gallinac/opsem.hpp"
#include "gallinac/seplog.hpp"
#include "gallinac/shallow.hpp"
#include "gallinac/state.hpp"
#include "testutil.hpp"

namespace {

using namespace gallinac;
using Clock = std::chrono::steady_clock;

int failures = 0;

void note(const std::string& what) {
  std::fprintf(stderr, "  note: %s\n", what.c_str());
}

template <class F>
void criterion(int n, const char* label, double time_limit, F body) {
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(Clock::now() - t0).count();
  if (ok && time_limit > 0 && secs > time_limit) {
    note("over the time limit of " + std::to_string(time_limit) + "s");
    ok = false;
  }
  std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", n,
              label, secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// --- criterion 1 -----------------------------------------------------------

bool reversal_all_stages() {
  for (std::size_t k : std::vector<std::size_t>{0, 1, 2, 3, 4, 8}) {
    std::vector<Word> vals(k);
    for (std::size_t i = 0; i < k; ++i) vals[i] = 10 * (i + 1);
    const Program p =
        shallow::reverse_program(shallow::list_prologue_main(vals));

    const Approx d = denote_program(p, State{}, 64);
    if (d.kind() != Approx::Kind::Done) {
      note("k=" + std::to_string(k) + ": denote did not finish");
      return false;
    }
    const Value expect =
        k == 0 ? Value::null()
               : Value::pointer({static_cast<BlockId>(k), 0});
    if (!(d.value() == expect)) {
      note("k=" + std::to_string(k) + ": wrong head " +
           to_string(d.value()));
      return false;
    }
    if (d.state().heap.cells() != testutil::reversed_list_cells(vals)) {
      note("k=" + std::to_string(k) + ": wrong final cells");
      return false;
    }
    if (d.state().heap.blocks().size() != k) {
      note("k=" + std::to_string(k) + ": cell domain changed");
      return false;
    }
    for (const auto& [b, info] : d.state().heap.blocks()) {
      if (info.size != 2 || !info.alive || info.frame) {
        note("k=" + std::to_string(k) + ": block table changed");
        return false;
      }
    }

    const Approx o = run_steps_program(
        p, State{}, agreement_budget(64, node_count(p)));
    if (!(o == d)) {
      note("k=" + std::to_string(k) + ": machine run differs");
      return false;
    }

    auto ir = lower_to_ir(p);
    if (!ir.ok()) {
      note("k=" + std::to_string(k) + ": " + ir.error());
      return false;
    }
    const IrResult ri = run_ir(ir.value(), 64);
    std::string why;
    if (!ri.is_done() ||
        !relate_states(d.value(), d.state().heap, ri.value, ri.heap, &why)) {
      note("k=" + std::to_string(k) + ": ir run unrelated: " + why);
      return false;
    }

    const CmProgram cm = lower_to_cminor(ir.value());
    if (auto v = validate_cminor(cm); !v.ok()) {
      note("k=" + std::to_string(k) + ": " + v.error());
      return false;
    }
    const CmResult rc = run_cminor(cm, 1000000);
    if (!rc.is_done() || !relate_backends(ri, rc, &why)) {
      note("k=" + std::to_string(k) + ": backend run unrelated: " + why);
      return false;
    }
  }
  return true;
}

// --- criterion 2 -----------------------------------------------------------

bool kleene_chain_suite() {
  State populated;
  if (auto p = populated.heap.alloc(2, Value::nat(7)); !p.ok()) return false;
  if (auto r = populated.heap.store({1, 1}, Value::nat(9)); !r.ok()) {
    return false;
  }
  const std::vector<State> samples{State{}, populated};

  GenConfig cfg;
  constexpr std::uint64_t kMaxFuel = 12;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    cfg.seed = seed;
    const Program p = gen_program(cfg);
    for (const State& s : samples) {
      const std::vector<Approx> chain = kleene_chain(*p.main, p, s, kMaxFuel);
      if (chain.size() != kMaxFuel + 1) {
        note("seed " + std::to_string(seed) + ": chain size " +
             std::to_string(chain.size()));
        return false;
      }
      std::size_t settled = chain.size();
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i + 1 < chain.size() && !approx_leq(chain[i], chain[i + 1])) {
          note("seed " + std::to_string(seed) + ": not monotone at fuel " +
               std::to_string(i));
          return false;
        }
        if (settled == chain.size() &&
            chain[i].kind() != Approx::Kind::Bottom) {
          settled = i;
        }
      }
      for (std::size_t i = settled; i < chain.size(); ++i) {
        if (!(chain[i] == chain[settled])) {
          note("seed " + std::to_string(seed) + ": not stable at fuel " +
               std::to_string(i));
          return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 3 -----------------------------------------------------------

bool unfold_equation() {
  Program empty;
  empty.main = c_ret(e_unit());
  for (Word n = 0; n < 100; ++n) {
    const CmdPtr cond =
        c_bind("t", c_read_var("i"), c_ret(e_lt(e_nat(0), e_fvar("t"))));
    const CmdPtr body =
        c_bind("v", c_read_var("i"), c_write_var("i", e_sub(e_fvar("v"),
                                                            e_nat(1))));
    const CmdPtr whole = c_while(cond, body);
    const CmdPtr once = unfold_while(cond, body);

    State s;
    s.store.bind("i", Value::nat(n));

    const std::vector<std::uint64_t> fuels{1, n + 1, n + 5};
    for (std::uint64_t fuel : fuels) {
      const Approx a = denote_cmd(*whole, empty, s, fuel);
      const Approx b = denote_cmd(*once, empty, s, fuel - 1);
      if (!(a == b)) {
        note("n=" + std::to_string(n) + " fuel=" + std::to_string(fuel) +
             ": unfolding differs");
        return false;
      }
      if (fuel == n + 1 && a.kind() != Approx::Kind::Done) {
        note("n=" + std::to_string(n) + ": loop did not finish at fuel " +
             std::to_string(fuel));
        return false;
      }
    }
  }
  return true;
}

// --- criterion 4 -----------------------------------------------------------

bool seplog_algebra() {
  const Heap::BlockMap blocks{{1, BlockInfo{2, true, false}},
                              {2, BlockInfo{1, true, false}}};
  const std::vector<Cell> slots{{1, 0}, {1, 1}, {2, 0}};
  const std::vector<Value> pool{Value::nat(0), Value::nat(1), Value::nat(2),
                                Value::boolean(true)};

  std::vector<Heap> universe;
  for (int i0 = -1; i0 < 4; ++i0) {
    for (int i1 = -1; i1 < 4; ++i1) {
      for (int i2 = -1; i2 < 4; ++i2) {
        std::map<Cell, Value> cells;
        if (i0 >= 0) cells[slots[0]] = pool[i0];
        if (i1 >= 0) cells[slots[1]] = pool[i1];
        if (i2 >= 0) cells[slots[2]] = pool[i2];
        universe.push_back(Heap::from_parts(std::move(cells), blocks));
      }
    }
  }
  if (universe.size() != 125) return false;

  ScopedBindings env;
  env.bind("p1", Value::pointer({1, 0}));
  env.bind("p2", Value::pointer({1, 1}));
  env.bind("q", Value::pointer({2, 0}));
  std::vector<State> states;
  states.reserve(universe.size());
  for (const Heap& h : universe) {
    State s;
    s.env = env;
    s.heap = h;
    states.push_back(std::move(s));
  }

  const std::vector<AssertionPtr> family{
      a_emp(),
      a_points_to(e_fvar("p1"), e_nat(1)),
      a_points_to(e_fvar("p1"), e_nat(0)),
      a_points_to(e_fvar("p2"), e_bool(true)),
      a_points_to(e_fvar("q"), e_nat(2)),
      a_star(a_points_to(e_fvar("p1"), e_nat(1)),
             a_points_to(e_fvar("q"), e_nat(2))),
      a_pure(e_eq(e_nat(0), e_nat(0))),
      a_pure(e_lt(e_nat(0), e_nat(0))),
  };

  auto sat = [&](const AssertionPtr& a, const State& s) {
    return holds(*a, s, universe);
  };

  for (const AssertionPtr& a : family) {
    for (const State& s : states) {
      const bool bare = sat(a, s);
      if (sat(a_star(a_emp(), a), s) != bare ||
          sat(a_star(a, a_emp()), s) != bare) {
        note("emp is not a unit");
        return false;
      }
    }
  }

  for (const AssertionPtr& a : family) {
    for (const AssertionPtr& b : family) {
      for (const State& s : states) {
        if (sat(a_star(a, b), s) != sat(a_star(b, a), s)) {
          note("star is not commutative");
          return false;
        }
      }
    }
  }

  for (const AssertionPtr& a : family) {
    for (const AssertionPtr& b : family) {
      for (const AssertionPtr& c : family) {
        for (const State& s : states) {
          if (sat(a_star(a, a_star(b, c)), s) !=
              sat(a_star(a_star(a, b), c), s)) {
            note("star is not associative");
            return false;
          }
        }
      }
    }
  }

  auto entails = [&](const AssertionPtr& x, const AssertionPtr& y) {
    for (const State& s : states) {
      if (sat(x, s) && !sat(y, s)) return false;
    }
    return true;
  };

  for (const AssertionPtr& p : family) {
    for (const AssertionPtr& q : family) {
      for (const AssertionPtr& r : family) {
        const bool lhs = entails(p, a_wand(q, r));
        const bool rhs = entails(a_star(p, q), r);
        if (lhs != rhs) {
          note("wand adjunction broken: " + serialize(*p) + " vs " +
               serialize(*q) + " -* " + serialize(*r));
          return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 5 -----------------------------------------------------------

bool frame_rule_suite() {
  const std::vector<AssertionPtr> frames{
      a_points_to(e_fvar("frame_one"), e_nat(7)),
      a_star(a_points_to(e_fvar("frame_one"), e_nat(7)),
             a_points_to(e_fvar("frame_two"), e_bool(true))),
  };
  for (const char* name : {"mutation.gtr", "reverse_triples.gtr"}) {
    auto file = parse_triple_file(testutil::slurp(testutil::fixture_path(
        name)));
    if (!file.ok()) {
      note(std::string(name) + ": " + file.error());
      return false;
    }
    for (std::size_t i = 0; i < file.value().triples.size(); ++i) {
      const TripleSpec& t = file.value().triples[i];
      for (const AssertionPtr& frame : frames) {
        auto cands = satisfy(*a_star(t.pre, frame));
        if (!cands.ok()) {
          note(std::string(name) + " triple " + std::to_string(i) + ": " +
               cands.error());
          return false;
        }
        auto rep = frame_check(*t.pre, *t.cmd, t.post_name, *t.post, *frame,
                               cands.value(), file.value().defs, 64);
        if (!rep.ok()) {
          note(std::string(name) + " triple " + std::to_string(i) + ": " +
               rep.error());
          return false;
        }
        const TripleReport& r = rep.value();
        if (!r.ok() || r.passes == 0 || r.passes != r.states_checked) {
          note(std::string(name) + " triple " + std::to_string(i) +
               ": framed check failed");
          return false;
        }
      }
    }
  }
  return true;
}

// --- criteria 6 and 7 ------------------------------------------------------

bool differential_corpus() {
  GenConfig cfg;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    cfg.seed = seed;
    const Program p = gen_program(cfg);
    const DiffVerdict v =
        differential_run(p, cfg.fuel, cfg.step_budget, seed);
    if (!v.agreed()) {
      note("seed " + std::to_string(seed) + ": " + v.details);
      return false;
    }
    const StageOutcome& de = v.stages[0];
    const StageOutcome& op = v.stages[1];
    const StageOutcome& cm = v.stages[3];
    if (de.kind != "bottom" && op.kind != "bottom" &&
        (de.kind != op.kind || de.detail != op.detail)) {
      note("seed " + std::to_string(seed) + ": terminating stages differ");
      return false;
    }
    if (de.kind == "failed" && cm.kind == "done") {
      note("seed " + std::to_string(seed) + ": failure not preserved");
      return false;
    }
  }
  return true;
}

bool cli_validation_campaign() {
  const auto r = testutil::run_cli("validate --count 1000 --seed 1");
  if (r.exit_code != 0) {
    note("exit code " + std::to_string(r.exit_code));
    return false;
  }
  if (r.out.rfind("cases 1000: ", 0) != 0 ||
      r.out.find("disagree 0") == std::string::npos) {
    note("unexpected summary: " + r.out);
    return false;
  }
  return true;
}

// --- criterion 8 -----------------------------------------------------------

bool round_trip_stability() {
  GenConfig cfg;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    cfg.seed = seed;
    const Program p = gen_program(cfg);
    const std::string text = serialize(p);
    auto back = parse_program(text);
    if (!back.ok() || serialize(back.value()) != text) {
      note("seed " + std::to_string(seed) + ": reparse changed the text");
      return false;
    }
  }
  for (const char* name : {"reverse.gac", "loop.gac", "oob.gac", "uaf.gac"}) {
    const std::string text = testutil::slurp(testutil::fixture_path(name));
    auto p = parse_program(text);
    if (!p.ok() || serialize(p.value()) != text) {
      note(std::string(name) + ": not a serialization fixed point");
      return false;
    }
    for (const char* emit : {"ir", "cminor"}) {
      const std::string args = std::string("compile --emit ") + emit + " " +
                               testutil::fixture_path(name);
      const auto first = testutil::run_cli(args);
      const auto second = testutil::run_cli(args);
      if (first.exit_code != 0 || first.out != second.out ||
          first.out.empty()) {
        note(std::string(name) + ": " + emit + " dump is not byte stable");
        return false;
      }
    }
  }
  const auto ir = testutil::run_cli("compile --emit ir " +
                                    testutil::fixture_path("reverse.gac"));
  if (ir.out != testutil::slurp(testutil::fixture_path("reverse.ir.txt"))) {
    note("ir dump drifted from the golden file");
    return false;
  }
  const auto cm = testutil::run_cli("compile --emit cminor " +
                                    testutil::fixture_path("reverse.gac"));
  if (cm.out != testutil::slurp(testutil::fixture_path("reverse.cm.txt"))) {
    note("cminor dump drifted from the golden file");
    return false;
  }
  return true;
}

// --- criterion 9 -----------------------------------------------------------

bool provenance_enforcement() {
  struct FaultCase {
    const char* file;
    const char* reason;
  };
  const std::vector<FaultCase> cases{
      {"oob.gac", "load out of bounds on b1 (size 2, offset 2)"},
      {"uaf.gac", "load on freed block b1"},
  };
  for (const FaultCase& c : cases) {
    auto p = parse_program(testutil::slurp(testutil::fixture_path(c.file)));
    if (!p.ok()) return false;

    const Approx d = denote_program(p.value(), State{}, 64);
    if (d.kind() != Approx::Kind::Failed || d.reason() != c.reason) {
      note(std::string(c.file) + ": denote gave " + d.reason());
      return false;
    }
    const Approx o = run_steps_program(
        p.value(), State{}, agreement_budget(64, node_count(p.value())));
    if (o.kind() != Approx::Kind::Failed || o.reason() != c.reason) {
      note(std::string(c.file) + ": machine gave a different outcome");
      return false;
    }
    auto ir = lower_to_ir(p.value());
    if (!ir.ok()) return false;
    const IrResult ri = run_ir(ir.value(), 64);
    if (!ri.is_failed() || ri.reason != c.reason) {
      note(std::string(c.file) + ": ir gave " + ri.reason);
      return false;
    }
    const CmResult rc = run_cminor(lower_to_cminor(ir.value()), 100000);
    if (!rc.is_failed() || !relate_backends(ri, rc)) {
      note(std::string(c.file) + ": backend outcome unrelated");
      return false;
    }
    const auto cli = testutil::run_cli(std::string("run ") +
                                       testutil::fixture_path(c.file));
    if (cli.exit_code != 1) {
      note(std::string(c.file) + ": cli exit " +
           std::to_string(cli.exit_code));
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "list reversal agrees at every stage, in place", 1.0,
            reversal_all_stages);
  criterion(2, "kleene chains are monotone and stabilize", 60.0,
            kleene_chain_suite);
  criterion(3, "while equals its one-step unfolding at matched fuel", 0,
            unfold_equation);
  criterion(4, "star algebra and the wand adjunction hold exhaustively",
            30.0, seplog_algebra);
  criterion(5, "golden triples survive framing with disjoint cells", 0,
            frame_rule_suite);
  criterion(6, "a thousand differential cases agree", 0,
            differential_corpus);
  criterion(7, "the validation campaign exits clean", 300.0,
            cli_validation_campaign);
  criterion(8, "serialization round-trips and dumps are byte stable", 0,
            round_trip_stability);
  criterion(9, "provenance violations fail at every stage", 0,
            provenance_enforcement);
  return failures;
}
