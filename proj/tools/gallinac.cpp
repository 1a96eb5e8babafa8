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
// Command-line front end. Exit codes are pinned for scripting:
//   0  done / no counterexample / no disagreement
//   1  program failed, counterexample found, or validation disagreed
//   2  bottom (budget exhausted)
//   3  input error (unreadable file, parse error, ill-formed program)
//   64 usage error

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gallinac/cminor.hpp"
#include "gallinac/denote.hpp"
#include "gallinac/fuzz.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/ir.hpp"
#include "gallinac/opsem.hpp"
#include "gallinac/seplog.hpp"
#include "gallinac/wellformed.hpp"

namespace {

using namespace gallinac;

constexpr int kExitDone = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBottom = 2;
constexpr int kExitInput = 3;
constexpr int kExitUsage = 64;

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

// Parses and checks a program file; on any problem prints diagnostics to
// stderr and returns false.
bool load_program(const std::string& path, Program* out) {
  std::string text;
  if (!read_file(path, &text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return false;
  }
  auto prog = parse_program(text);
  if (!prog) {
    std::cerr << "error: " << prog.error() << "\n";
    return false;
  }
  const std::vector<Diagnostic> diags = well_formed(*prog);
  if (!diags.empty()) {
    for (const Diagnostic& d : diags) {
      std::cerr << "error: " << d.code << ": " << d.message << "\n";
    }
    return false;
  }
  *out = std::move(*prog);
  return true;
}

int cmd_run(const std::string& path, std::uint64_t fuel, bool trace) {
  Program p;
  if (!load_program(path, &p)) return kExitInput;
  if (trace) {
    run_steps_program(p, State{}, agreement_budget(fuel, node_count(p)),
                      &std::cerr);
  }
  const Approx a = denote_program(p, State{}, fuel);
  switch (a.kind()) {
    case Approx::Kind::Done:
      std::cout << "done " << to_string(a.value()) << "\n";
      return kExitDone;
    case Approx::Kind::Failed:
      std::cout << "failed " << a.reason() << "\n";
      return kExitFailed;
    case Approx::Kind::Bottom:
      std::cout << "bottom (fuel " << fuel << ")\n";
      return kExitBottom;
  }
  return kExitInput;
}

int cmd_compile(const std::string& path, const std::string& emit) {
  Program p;
  if (!load_program(path, &p)) return kExitInput;
  auto ir = lower_to_ir(p);
  if (!ir) {
    std::cerr << "error: " << ir.error() << "\n";
    return kExitInput;
  }
  if (emit == "ir") {
    std::cout << dump_ir(*ir);
  } else {
    std::cout << dump_cminor(lower_to_cminor(*ir));
  }
  return kExitDone;
}

int cmd_validate(std::size_t count, std::uint64_t seed, std::uint64_t budget,
                 const std::string& json_path) {
  GenConfig cfg;
  cfg.seed = seed;
  if (budget != 0) cfg.fuel = budget;
  const ValidationReport report = run_validation(cfg, count);
  std::cout << "cases " << report.count << ": agree " << report.agree
            << ", all-bottom " << report.all_bottom << ", disagree "
            << report.disagree << "\n";
  for (const ValidationCase& c : report.cases) {
    if (c.verdict == DiffVerdict::Kind::Disagree) {
      std::cout << "seed " << c.seed << ": " << c.details << "\n";
    }
  }
  for (const std::string& cx : report.counterexamples) {
    std::cout << "counterexample:\n" << cx;
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return kExitInput;
    }
    out << report_to_json(report);
  }
  return report.ok() ? kExitDone : kExitFailed;
}

int cmd_check_triple(const std::string& path, std::size_t samples,
                     std::uint64_t fuel, const std::string& json_path) {
  std::string text;
  if (!read_file(path, &text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitInput;
  }
  auto file = parse_triple_file(text);
  if (!file) {
    std::cerr << "error: " << file.error() << "\n";
    return kExitInput;
  }

  bool all_ok = true;
  nlohmann::json jtriples = nlohmann::json::array();
  for (std::size_t i = 0; i < file->triples.size(); ++i) {
    const TripleSpec& t = file->triples[i];
    SatisfyOptions opt;
    opt.max_states = samples;
    auto candidates = satisfy(*t.pre, opt);
    if (!candidates) {
      std::cerr << "error: triple " << i << ": " << candidates.error()
                << "\n";
      return kExitInput;
    }
    TripleReport rep;
    try {
      rep = check_triple(*t.pre, *t.cmd, t.post_name, *t.post, *candidates,
                         file->defs, fuel);
    } catch (const SeplogLimitError& e) {
      std::cerr << "error: triple " << i << ": " << e.what() << "\n";
      return kExitInput;
    }
    std::cout << "triple " << i << ": states " << rep.states_checked
              << ", passes " << rep.passes << ", bottoms " << rep.bottoms
              << ", crashes " << rep.crashes.size() << ", post-failures "
              << rep.post_failures.size() << (rep.ok() ? "" : "  FAIL")
              << "\n";
    for (const Counterexample& ce : rep.crashes) {
      std::cout << "  crash: " << ce.detail << "\n";
    }
    for (const Counterexample& ce : rep.post_failures) {
      std::cout << "  post failure: " << ce.detail << "\n";
    }
    nlohmann::json jt;
    jt["triple"] = i;
    jt["states"] = rep.states_checked;
    jt["passes"] = rep.passes;
    jt["bottoms"] = rep.bottoms;
    jt["crashes"] = rep.crashes.size();
    jt["post_failures"] = rep.post_failures.size();
    jt["ok"] = rep.ok();
    jtriples.push_back(std::move(jt));
    all_ok = all_ok && rep.ok();
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return kExitInput;
    }
    nlohmann::json j;
    j["triples"] = std::move(jtriples);
    j["ok"] = all_ok;
    out << j.dump(2) << "\n";
  }
  return all_ok ? kExitDone : kExitFailed;
}

int cmd_roundtrip(const std::string& path) {
  Program p;
  if (!load_program(path, &p)) return kExitInput;
  const std::string once = serialize(p);
  auto again = parse_program(once);
  if (!again) {
    std::cerr << "error: reparse failed: " << again.error() << "\n";
    return kExitFailed;
  }
  const std::string twice = serialize(*again);
  std::cout << once;
  if (once != twice) {
    std::cerr << "error: serialization is not a fixed point\n";
    return kExitFailed;
  }
  return kExitDone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GallinaC: run, compile, and check deep-embedded programs"};
  app.require_subcommand(1);

  std::string run_file;
  std::uint64_t run_fuel = 1024;
  bool run_trace = false;
  CLI::App* run = app.add_subcommand("run", "Evaluate a program file");
  run->add_option("file", run_file, "Program file (.gac)")->required();
  run->add_option("--fuel", run_fuel, "While-head budget");
  run->add_flag("--trace", run_trace, "Write a machine step trace to stderr");

  std::string compile_file;
  std::string emit = "ir";
  CLI::App* compile =
      app.add_subcommand("compile", "Lower a program and dump the result");
  compile->add_option("file", compile_file, "Program file (.gac)")
      ->required();
  compile->add_option("--emit", emit, "Dump to emit")
      ->check(CLI::IsMember({"ir", "cminor"}));

  std::size_t val_count = 100;
  std::uint64_t val_seed = 0;
  std::uint64_t val_budget = 0;
  std::string val_json;
  CLI::App* validate = app.add_subcommand(
      "validate", "Generate programs and run the differential harness");
  validate->add_option("--count", val_count, "Number of cases");
  validate->add_option("--seed", val_seed, "Base seed")
      ->envname("GALLINAC_SEED");
  validate->add_option("--budget", val_budget,
                       "Fuel for the fueled stages (0 = default)");
  validate->add_option("--json", val_json, "Write a JSON report here");

  std::string triple_file;
  std::size_t triple_samples = 64;
  std::uint64_t triple_fuel = 256;
  std::string triple_json;
  CLI::App* triple = app.add_subcommand(
      "check-triple", "Check the triples in a spec file against samples");
  triple->add_option("file", triple_file, "Triple spec file")->required();
  triple->add_option("--samples", triple_samples,
                     "Max precondition states per triple");
  triple->add_option("--fuel", triple_fuel, "While-head budget");
  triple->add_option("--json", triple_json, "Write a JSON report here");

  std::string rt_file;
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "Reserialize a program and verify the fixed point");
  roundtrip->add_option("file", rt_file, "Program file (.gac)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (run->parsed()) return cmd_run(run_file, run_fuel, run_trace);
  if (compile->parsed()) return cmd_compile(compile_file, emit);
  if (validate->parsed()) {
    return cmd_validate(val_count, val_seed, val_budget, val_json);
  }
  if (triple->parsed()) {
    return cmd_check_triple(triple_file, triple_samples, triple_fuel,
                            triple_json);
  }
  if (roundtrip->parsed()) return cmd_roundtrip(rt_file);
  return kExitUsage;
}
