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

#include "gallinac/fuzz.hpp"

#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "gallinac/cminor.hpp"
#include "gallinac/denote.hpp"
#include "gallinac/gac.hpp"
#include "gallinac/ir.hpp"
#include "gallinac/opsem.hpp"
#include "gallinac/wellformed.hpp"

namespace gallinac {

namespace {

// mt19937_64 has a portable, standard-mandated output sequence, so the
// modulo reduction below is deterministic everywhere even though it is
// mildly biased. The bias is irrelevant for test-case generation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n);
  }

  bool pct(std::size_t p) { return below(100) < p; }

 private:
  std::mt19937_64 gen_;
};

// ---------------------------------------------------------------------------
// Generation.

enum class VK { Unit, Bool, Nat, Ptr };

struct GenVar {
  std::string name;
  VK kind;
};

struct HelperSig {
  std::string name;
  std::vector<VK> params;
  VK ret;
};

struct GenCtx {
  std::vector<GenVar> temps;   // fvars in scope
  std::vector<GenVar> stores;  // store variables in scope
  std::size_t loops = 0;       // current loop nesting
  bool in_helper = false;      // helpers stay loop-free and call-free
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Program run() {
    Program p;
    const std::size_t n_helpers =
        cfg_.max_helpers == 0 ? 0 : rng_.below(cfg_.max_helpers + 1);
    for (std::size_t i = 0; i < n_helpers; ++i) {
      HelperSig sig;
      sig.name = "h" + std::to_string(i);
      const std::size_t n_params = rng_.below(3);
      for (std::size_t j = 0; j < n_params; ++j) {
        sig.params.push_back(pick_kind(/*allow_unit=*/false));
      }
      sig.ret = pick_kind(/*allow_unit=*/true);

      GenCtx ctx;
      ctx.in_helper = true;
      FunctionDef def;
      for (std::size_t j = 0; j < n_params; ++j) {
        const std::string pname = "a" + std::to_string(j);
        def.params.push_back(pname);
        ctx.temps.push_back({pname, sig.params[j]});
      }
      def.body = gen_cmd(sig.ret, ctx, 2);
      p.functions.emplace_back(sig.name, std::move(def));
      helpers_.push_back(std::move(sig));
    }

    GenCtx ctx;
    p.main = gen_prologue(ctx, 0);
    return p;
  }

 private:
  VK pick_kind(bool allow_unit) {
    const std::size_t r = rng_.below(allow_unit ? 100 : 85);
    if (r < 40) return VK::Nat;
    if (r < 65) return VK::Ptr;
    if (r < 85) return VK::Bool;
    return VK::Unit;
  }

  std::string fresh_temp() { return "t" + std::to_string(next_temp_++); }
  std::string fresh_store() { return "v" + std::to_string(next_store_++); }

  // alloc a few blocks up front, then hand the pointers to the body.
  CmdPtr gen_prologue(GenCtx& ctx, std::size_t cells_used) {
    const std::size_t left = cfg_.max_prologue_cells - cells_used;
    const bool more = left > 0 && (cells_used == 0 || rng_.pct(50));
    if (!more) {
      return gen_cmd(pick_kind(/*allow_unit=*/true), ctx, cfg_.max_depth);
    }
    const std::size_t sz = 1 + rng_.below(left < 4 ? left : 4);
    const std::string name = fresh_temp();
    ctx.temps.push_back({name, VK::Ptr});
    CmdPtr rest = gen_prologue(ctx, cells_used + sz);
    return c_bind(name, c_alloc(static_cast<Word>(sz), gen_nat_leaf()),
                  std::move(rest));
  }

  // --- expressions -------------------------------------------------------

  std::vector<const GenVar*> vars_of(const std::vector<GenVar>& pool, VK k) {
    std::vector<const GenVar*> out;
    for (const GenVar& v : pool) {
      if (v.kind == k) out.push_back(&v);
    }
    return out;
  }

  ExprPtr gen_nat_leaf() {
    return e_nat(static_cast<Word>(rng_.below(cfg_.nat_pool)));
  }

  ExprPtr gen_expr(VK k, const GenCtx& ctx, std::size_t depth) {
    const std::vector<const GenVar*> temps = vars_of(ctx.temps, k);
    const bool deep = depth > 0;
    switch (k) {
      case VK::Unit:
        if (!temps.empty() && rng_.pct(40)) {
          return e_fvar(temps[rng_.below(temps.size())]->name);
        }
        return e_unit();
      case VK::Nat: {
        const std::size_t r = rng_.below(100);
        if (r < 35 || !deep) {
          if (!temps.empty() && rng_.pct(50)) {
            return e_fvar(temps[rng_.below(temps.size())]->name);
          }
          return gen_nat_leaf();
        }
        if (r < 70) {
          return e_add(gen_expr(VK::Nat, ctx, depth - 1),
                       gen_expr(VK::Nat, ctx, depth - 1));
        }
        return e_sub(gen_expr(VK::Nat, ctx, depth - 1),
                     gen_expr(VK::Nat, ctx, depth - 1));
      }
      case VK::Bool: {
        const std::size_t r = rng_.below(100);
        if (r < 25 || !deep) {
          if (!temps.empty() && rng_.pct(50)) {
            return e_fvar(temps[rng_.below(temps.size())]->name);
          }
          return e_bool(rng_.pct(50));
        }
        if (r < 45) {
          return e_lt(gen_expr(VK::Nat, ctx, depth - 1),
                      gen_expr(VK::Nat, ctx, depth - 1));
        }
        if (r < 65) {
          // eq and neq compare two values of one statically chosen kind.
          const VK operand = pick_kind(/*allow_unit=*/false);
          ExprPtr a = gen_expr(operand, ctx, depth - 1);
          ExprPtr b = gen_expr(operand, ctx, depth - 1);
          return rng_.pct(50) ? e_eq(std::move(a), std::move(b))
                              : e_neq(std::move(a), std::move(b));
        }
        if (r < 80) {
          return e_and(gen_expr(VK::Bool, ctx, depth - 1),
                       gen_expr(VK::Bool, ctx, depth - 1));
        }
        if (r < 95) {
          return e_or(gen_expr(VK::Bool, ctx, depth - 1),
                      gen_expr(VK::Bool, ctx, depth - 1));
        }
        return e_not(gen_expr(VK::Bool, ctx, depth - 1));
      }
      case VK::Ptr: {
        if (deep && rng_.pct(30)) {
          return e_ptr_shift(gen_expr(VK::Ptr, ctx, depth - 1),
                             e_nat(static_cast<Word>(rng_.below(4))));
        }
        if (!temps.empty() && !rng_.pct(15)) {
          return e_fvar(temps[rng_.below(temps.size())]->name);
        }
        return e_null();
      }
    }
    return e_unit();
  }

  // --- commands ----------------------------------------------------------

  CmdPtr gen_cmd(VK want, const GenCtx& ctx, std::size_t depth) {
    if (depth > 0) {
      const std::size_t r = rng_.below(100);
      if (r < 22) {  // bind
        const VK k1 = pick_kind(/*allow_unit=*/true);
        CmdPtr c1 = gen_cmd(k1, ctx, depth - 1);
        GenCtx inner = ctx;
        const std::string name = fresh_temp();
        inner.temps.push_back({name, k1});
        CmdPtr c2 = gen_cmd(want, inner, depth - 1);
        return c_bind(name, std::move(c1), std::move(c2));
      }
      if (r < 38) {  // seq
        CmdPtr c1 = gen_cmd(pick_kind(/*allow_unit=*/true), ctx, depth - 1);
        CmdPtr c2 = gen_cmd(want, ctx, depth - 1);
        return c_seq(std::move(c1), std::move(c2));
      }
      if (r < 52) {  // if
        ExprPtr cond = gen_expr(VK::Bool, ctx, 2);
        CmdPtr a = gen_cmd(want, ctx, depth - 1);
        CmdPtr b = gen_cmd(want, ctx, depth - 1);
        return c_if(std::move(cond), std::move(a), std::move(b));
      }
      if (r < 64) {  // var
        const VK k1 = pick_kind(/*allow_unit=*/false);
        CmdPtr init = gen_cmd(k1, ctx, depth - 1);
        GenCtx inner = ctx;
        const std::string name = fresh_store();
        inner.stores.push_back({name, k1});
        CmdPtr body = gen_cmd(want, inner, depth - 1);
        return c_var(name, std::move(init), std::move(body));
      }
      if (r < 76 && want == VK::Unit && !ctx.in_helper &&
          ctx.loops < cfg_.max_loops) {
        return gen_while(ctx, depth);
      }
    }
    return gen_leaf(want, ctx);
  }

  CmdPtr gen_while(const GenCtx& ctx, std::size_t depth) {
    GenCtx inner = ctx;
    inner.loops = ctx.loops + 1;
    if (rng_.pct(cfg_.loop_bias_pct)) {
      // var c := n in while (0 < c) { c := c - 1; <body> }
      const std::string counter = fresh_store();
      inner.stores.push_back({counter, VK::Nat});
      const std::string tc = fresh_temp();
      const std::string td = fresh_temp();
      CmdPtr cond = c_bind(tc, c_read_var(counter),
                           c_ret(e_lt(e_nat(0), e_fvar(tc))));
      CmdPtr dec = c_bind(
          td, c_read_var(counter),
          c_write_var(counter, e_sub(e_fvar(td), e_nat(1))));
      CmdPtr body =
          c_seq(std::move(dec), gen_cmd(VK::Unit, inner, depth - 1));
      const Word n = static_cast<Word>(1 + rng_.below(cfg_.max_counter));
      return c_var(counter, c_ret(e_nat(n)),
                   c_while(std::move(cond), std::move(body)));
    }
    return c_while(c_ret(e_bool(true)), gen_cmd(VK::Unit, inner, depth - 1));
  }

  CmdPtr gen_leaf(VK want, const GenCtx& ctx) {
    if (rng_.pct(2)) return c_fail();
    if (!ctx.in_helper && rng_.pct(1)) return c_loop();

    // Call a helper with a matching return kind, sometimes.
    if (!ctx.in_helper && rng_.pct(25)) {
      std::vector<const HelperSig*> usable;
      for (const HelperSig& h : helpers_) {
        if (h.ret == want) usable.push_back(&h);
      }
      if (!usable.empty()) {
        const HelperSig& h = *usable[rng_.below(usable.size())];
        std::vector<ExprPtr> args;
        for (VK pk : h.params) args.push_back(gen_expr(pk, ctx, 1));
        return c_call(h.name, std::move(args));
      }
    }

    const std::vector<const GenVar*> stores = vars_of(ctx.stores, want);
    if (!stores.empty() && rng_.pct(30)) {
      return c_read_var(stores[rng_.below(stores.size())]->name);
    }

    const bool have_ptr = !vars_of(ctx.temps, VK::Ptr).empty();
    switch (want) {
      case VK::Nat:
        if (have_ptr && rng_.pct(45)) {
          return c_read_ptr(gen_expr(VK::Ptr, ctx, 1));
        }
        break;
      case VK::Ptr:
        if (rng_.pct(40)) {
          return c_alloc(static_cast<Word>(1 + rng_.below(3)),
                         gen_nat_leaf());
        }
        break;
      case VK::Unit: {
        const std::size_t r = rng_.below(100);
        if (have_ptr && r < 35) {
          return c_write_ptr(gen_expr(VK::Ptr, ctx, 1),
                             gen_expr(VK::Nat, ctx, 1));
        }
        if (have_ptr && r < 50) {
          return c_free(gen_expr(VK::Ptr, ctx, 1));
        }
        if (!ctx.stores.empty() && r < 75) {
          const GenVar& v = ctx.stores[rng_.below(ctx.stores.size())];
          return c_write_var(v.name, gen_expr(v.kind, ctx, 1));
        }
        break;
      }
      case VK::Bool:
        break;
    }
    return c_ret(gen_expr(want, ctx, 2));
  }

  GenConfig cfg_;
  Rng rng_;
  std::vector<HelperSig> helpers_;
  std::size_t next_temp_ = 0;
  std::size_t next_store_ = 0;
};

}  // namespace

Program gen_program(const GenConfig& cfg) { return Generator(cfg).run(); }

// ---------------------------------------------------------------------------
// Differential harness.

namespace {

// Block numbers in two stages may legitimately differ (the backends
// interleave frame blocks with program allocations), so failure reasons
// are compared after renumbering block ids by order of first mention.
std::string canonical_blocks(const std::string& s) {
  std::string out;
  std::map<std::string, std::size_t> seen;
  std::size_t i = 0;
  while (i < s.size()) {
    const bool boundary =
        i == 0 || (!std::isalnum(static_cast<unsigned char>(s[i - 1])) &&
                   s[i - 1] != '_');
    if (s[i] == 'b' && boundary && i + 1 < s.size() &&
        std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      std::size_t j = i + 1;
      while (j < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[j]))) {
        ++j;
      }
      const std::string token = s.substr(i, j - i);
      const auto it = seen.emplace(token, seen.size() + 1).first;
      out += "b#" + std::to_string(it->second);
      i = j;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

const char* approx_kind_name(Approx::Kind k) {
  switch (k) {
    case Approx::Kind::Bottom: return "bottom";
    case Approx::Kind::Failed: return "failed";
    case Approx::Kind::Done: return "done";
  }
  return "?";
}

const char* ir_kind_str(IrResult::Kind k) {
  switch (k) {
    case IrResult::Kind::Bottom: return "bottom";
    case IrResult::Kind::Failed: return "failed";
    case IrResult::Kind::Done: return "done";
  }
  return "?";
}

struct StageRun {
  Approx den = Approx::bottom();
  Approx ops = Approx::bottom();
  bool lowered = false;
  std::string lower_error;
  IrResult ir;
  CmResult cm;
};

StageRun run_stages(const Program& p, std::uint64_t fuel,
                    std::uint64_t sbudget) {
  StageRun r;
  r.den = denote_program(p, State{}, fuel);
  r.ops = run_steps_program(p, State{}, sbudget);
  auto ir_prog = lower_to_ir(p);
  if (!ir_prog) {
    r.lower_error = ir_prog.error();
    return r;
  }
  r.lowered = true;
  r.ir = run_ir(*ir_prog, fuel);
  const CmProgram cm_prog = lower_to_cminor(*ir_prog);
  r.cm = run_cminor(cm_prog, sbudget);
  return r;
}

void record_outcomes(const StageRun& r, DiffVerdict* v) {
  v->stages.clear();
  auto add_approx = [&](const char* name, const Approx& a) {
    StageOutcome o;
    o.stage = name;
    o.kind = approx_kind_name(a.kind());
    o.detail = a.is_done() ? to_string(a.value())
                           : (a.is_failed() ? a.reason() : "");
    v->stages.push_back(std::move(o));
  };
  add_approx("denote", r.den);
  add_approx("opsem", r.ops);
  auto add_ir = [&](const char* name, const IrResult& a) {
    StageOutcome o;
    o.stage = name;
    o.kind = ir_kind_str(a.kind);
    o.detail = a.is_done() ? to_string(a.value)
                           : (a.is_failed() ? a.reason : "");
    v->stages.push_back(std::move(o));
  };
  if (r.lowered) {
    add_ir("ir", r.ir);
    add_ir("cminor", r.cm);
  }
}

// Returns an empty string when every adjacent stage pair is related.
std::string compare_stages(const StageRun& r) {
  // Source semantics vs the machine: the two run the very same program
  // over the very same state representation, so the outcomes must be
  // identical, not merely related.
  if (!(r.den == r.ops)) {
    if (r.den.kind() != r.ops.kind()) {
      return std::string("denote/opsem outcome kinds differ: ") +
             approx_kind_name(r.den.kind()) + " vs " +
             approx_kind_name(r.ops.kind());
    }
    if (r.den.is_failed() && r.den.reason() != r.ops.reason()) {
      return "denote/opsem failure reasons differ: \"" + r.den.reason() +
             "\" vs \"" + r.ops.reason() + "\"";
    }
    return "denote/opsem final states differ";
  }

  // Source vs ir.
  if (r.den.is_done() != r.ir.is_done() ||
      r.den.is_failed() != r.ir.is_failed()) {
    return std::string("denote/ir outcome kinds differ: ") +
           approx_kind_name(r.den.kind()) + " vs " + ir_kind_str(r.ir.kind);
  }
  if (r.den.is_done()) {
    std::string why;
    if (!relate_states(r.den.value(), r.den.state().heap, r.ir.value,
                       r.ir.heap, &why)) {
      return "denote/ir states unrelated: " + why;
    }
  } else if (r.den.is_failed()) {
    if (canonical_blocks(r.den.reason()) != canonical_blocks(r.ir.reason)) {
      return "denote/ir failure reasons differ: \"" + r.den.reason() +
             "\" vs \"" + r.ir.reason + "\"";
    }
  }

  // ir vs cminor.
  std::string why;
  if (!relate_backends(r.ir, r.cm, &why)) {
    return "ir/cminor disagree: " + why;
  }
  return "";
}

}  // namespace

DiffVerdict differential_run(const Program& p, std::uint64_t fuel,
                             std::uint64_t step_budget, std::uint64_t seed) {
  DiffVerdict v;
  v.seed = seed;

  const std::size_t nodes = node_count(p);
  std::uint64_t sbudget =
      step_budget != 0 ? step_budget : agreement_budget(fuel, nodes);

  StageRun r = run_stages(p, fuel, sbudget);
  if (!r.lowered) {
    v.kind = DiffVerdict::Kind::Disagree;
    v.details = "lowering failed: " + r.lower_error;
    v.program_text = serialize(p);
    record_outcomes(r, &v);
    return v;
  }

  auto bottoms = [](const StageRun& s) {
    const int total = s.den.is_bottom() + s.ops.is_bottom() +
                      s.ir.is_bottom() + s.cm.is_bottom();
    return total;
  };

  int b = bottoms(r);
  if (b != 0 && b != 4) {
    // all-bottom-suspect: fuel and step budgets are incomparable, so
    // retry once with everything scaled up before calling it a bug.
    v.escalated = true;
    r = run_stages(p, fuel * 10, sbudget * 10);
    b = bottoms(r);
  }
  record_outcomes(r, &v);

  if (b == 4) {
    v.kind = DiffVerdict::Kind::AllBottom;
    return v;
  }
  if (b != 0) {
    v.kind = DiffVerdict::Kind::Disagree;
    v.details = "bottom/terminating mix survived the 10x escalation";
    v.program_text = serialize(p);
    return v;
  }

  const std::string mismatch = compare_stages(r);
  if (!mismatch.empty()) {
    v.kind = DiffVerdict::Kind::Disagree;
    v.details = mismatch;
    v.program_text = serialize(p);
    return v;
  }
  v.kind = DiffVerdict::Kind::Agree;
  return v;
}

// ---------------------------------------------------------------------------
// Shrinking.

namespace {

struct ShrinkSite {
  std::vector<std::size_t> path;  // child indexes from the root
  CmdPtr replacement;
};

CmdPtr child_at(const CmdPtr& c, std::size_t idx) {
  return idx == 0 ? c->c1 : c->c2;
}

void collect_sites(const CmdPtr& c, std::vector<std::size_t>& path,
                   std::vector<ShrinkSite>& out) {
  if (c == nullptr) return;
  if (c->kind != CmdKind::Ret) {
    // Any node may collapse to a trivial return.
    out.push_back({path, c_ret(e_unit())});
  }
  for (std::size_t idx = 0; idx < 2; ++idx) {
    CmdPtr ch = child_at(c, idx);
    if (ch == nullptr) continue;
    out.push_back({path, ch});
    path.push_back(idx);
    collect_sites(ch, path, out);
    path.pop_back();
  }
}

CmdPtr rebuild(const CmdPtr& c, const std::vector<std::size_t>& path,
               std::size_t at, const CmdPtr& repl) {
  if (at == path.size()) return repl;
  Cmd copy = *c;
  if (path[at] == 0) {
    copy.c1 = rebuild(c->c1, path, at + 1, repl);
  } else {
    copy.c2 = rebuild(c->c2, path, at + 1, repl);
  }
  return std::make_shared<const Cmd>(std::move(copy));
}

}  // namespace

Program shrink_program(const Program& p, std::uint64_t fuel,
                       std::uint64_t step_budget, std::size_t max_attempts) {
  Program cur = p;
  std::size_t attempts = 0;
  bool improved = true;
  while (improved && attempts < max_attempts) {
    improved = false;
    std::vector<ShrinkSite> sites;
    std::vector<std::size_t> path;
    collect_sites(cur.main, path, sites);
    for (const ShrinkSite& site : sites) {
      if (attempts >= max_attempts) break;
      Program cand = cur;
      cand.main = rebuild(cur.main, site.path, 0, site.replacement);
      if (node_count(cand) >= node_count(cur)) continue;
      if (!well_formed(cand).empty()) continue;
      ++attempts;
      if (differential_run(cand, fuel, step_budget).kind ==
          DiffVerdict::Kind::Disagree) {
        cur = std::move(cand);
        improved = true;
        break;
      }
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Validation campaigns.

ValidationReport run_validation(const GenConfig& cfg, std::size_t count) {
  ValidationReport report;
  report.count = count;
  report.seed = cfg.seed;
  for (std::size_t i = 0; i < count; ++i) {
    GenConfig c = cfg;
    c.seed = cfg.seed + i;
    const Program p = gen_program(c);
    DiffVerdict v = differential_run(p, cfg.fuel, cfg.step_budget, c.seed);
    ValidationCase vc;
    vc.seed = c.seed;
    vc.verdict = v.kind;
    vc.details = v.details;
    report.cases.push_back(std::move(vc));
    switch (v.kind) {
      case DiffVerdict::Kind::Agree:
        ++report.agree;
        break;
      case DiffVerdict::Kind::AllBottom:
        ++report.all_bottom;
        break;
      case DiffVerdict::Kind::Disagree: {
        ++report.disagree;
        const Program small = shrink_program(p, cfg.fuel, cfg.step_budget);
        report.counterexamples.push_back(serialize(small));
        break;
      }
    }
  }
  return report;
}

namespace {

const char* verdict_name(DiffVerdict::Kind k) {
  switch (k) {
    case DiffVerdict::Kind::Agree: return "agree";
    case DiffVerdict::Kind::AllBottom: return "all-bottom";
    case DiffVerdict::Kind::Disagree: return "disagree";
  }
  return "?";
}

}  // namespace

std::string report_to_json(const ValidationReport& r) {
  nlohmann::json j;
  j["count"] = r.count;
  j["seed"] = r.seed;
  j["agree"] = r.agree;
  j["all_bottom"] = r.all_bottom;
  j["disagree"] = r.disagree;
  j["ok"] = r.ok();
  nlohmann::json cases = nlohmann::json::array();
  for (const ValidationCase& c : r.cases) {
    nlohmann::json jc;
    jc["seed"] = c.seed;
    jc["verdict"] = verdict_name(c.verdict);
    if (!c.details.empty()) jc["details"] = c.details;
    cases.push_back(std::move(jc));
  }
  j["cases"] = std::move(cases);
  j["counterexamples"] = r.counterexamples;
  return j.dump(2) + "\n";
}

}  // namespace gallinac
