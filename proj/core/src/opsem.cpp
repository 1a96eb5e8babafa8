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

#include "gallinac/opsem.hpp"

#include <utility>

#include "gallinac/denote.hpp"
#include "gallinac/interp_common.hpp"

namespace gallinac {

MachineConfig initial_config(CmdPtr c, State s) {
  MachineConfig cfg;
  cfg.focus_cmd = std::move(c);
  cfg.state = std::move(s);
  return cfg;
}

namespace {

StepResult terminal(Approx a) {
  StepResult r;
  r.terminal = std::move(a);
  return r;
}

StepResult failed(std::string reason) {
  return terminal(Approx::failed(std::move(reason)));
}

StepResult to_value(MachineConfig cfg, Value v) {
  cfg.focus_cmd = nullptr;
  cfg.focus_val = std::move(v);
  StepResult r;
  r.next = std::move(cfg);
  return r;
}

StepResult to_cmd(MachineConfig cfg, CmdPtr c) {
  cfg.focus_cmd = std::move(c);
  StepResult r;
  r.next = std::move(cfg);
  return r;
}

StepResult step_cmd(MachineConfig cfg, const Program& prog) {
  const Cmd& c = *cfg.focus_cmd;
  State& st = cfg.state;
  switch (c.kind) {
    case CmdKind::Ret: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      return to_value(std::move(cfg), *v);
    }
    case CmdKind::Bind: {
      Frame f{Frame::Kind::Bind};
      f.name = c.name;
      f.k1 = c.c2;
      cfg.kont.push_back(std::move(f));
      return to_cmd(std::move(cfg), c.c1);
    }
    case CmdKind::Seq: {
      Frame f{Frame::Kind::Seq};
      f.k1 = c.c2;
      cfg.kont.push_back(std::move(f));
      return to_cmd(std::move(cfg), c.c1);
    }
    case CmdKind::Call: {
      const FunctionDef* def = prog.find_function(c.name);
      if (def == nullptr) return failed(errmsg::unknown_function(c.name));
      if (def->params.size() != c.args.size()) {
        return failed(
            errmsg::arity_mismatch(c.name, def->params.size(), c.args.size()));
      }
      std::vector<Value> argv;
      argv.reserve(c.args.size());
      for (const auto& a : c.args) {
        auto v = eval_expr(*a, st);
        if (!v) return failed(v.error());
        argv.push_back(*v);
      }
      Frame f{Frame::Kind::CallRestore};
      f.saved_env = std::move(st.env);
      cfg.kont.push_back(std::move(f));
      st.env = ScopedBindings{};
      for (std::size_t i = 0; i < argv.size(); ++i) {
        st.env.bind(def->params[i], std::move(argv[i]));
      }
      return to_cmd(std::move(cfg), def->body);
    }
    case CmdKind::If: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      auto b = expect_bool(*v, "if condition");
      if (!b) return failed(b.error());
      return to_cmd(std::move(cfg), *b ? c.c1 : c.c2);
    }
    case CmdKind::While: {
      Frame f{Frame::Kind::WhileCond};
      f.k1 = cfg.focus_cmd;
      cfg.kont.push_back(std::move(f));
      return to_cmd(std::move(cfg), c.c1);
    }
    case CmdKind::Var: {
      Frame f{Frame::Kind::VarBind};
      f.name = c.name;
      f.k1 = c.c2;
      cfg.kont.push_back(std::move(f));
      return to_cmd(std::move(cfg), c.c1);
    }
    case CmdKind::ReadVar: {
      const Value* v = st.store.lookup(c.name);
      if (v == nullptr) return failed(errmsg::unbound_store_var(c.name));
      return to_value(std::move(cfg), *v);
    }
    case CmdKind::WriteVar: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      if (!st.store.assign(c.name, *v)) {
        return failed(errmsg::unbound_store_var(c.name));
      }
      return to_value(std::move(cfg), Value::unit());
    }
    case CmdKind::Alloc: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      auto p = st.heap.alloc(c.count, *v);
      if (!p) return failed(p.error());
      return to_value(std::move(cfg), Value::pointer(*p));
    }
    case CmdKind::ReadPtr: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      auto p = expect_ptr(*v, "read-ptr address");
      if (!p) return failed(p.error());
      auto cell = st.heap.load(*p);
      if (!cell) return failed(cell.error());
      return to_value(std::move(cfg), *cell);
    }
    case CmdKind::WritePtr: {
      auto pv = eval_expr(*c.e1, st);
      if (!pv) return failed(pv.error());
      auto p = expect_ptr(*pv, "write-ptr address");
      if (!p) return failed(p.error());
      auto v = eval_expr(*c.e2, st);
      if (!v) return failed(v.error());
      auto ok = st.heap.store(*p, *v);
      if (!ok) return failed(ok.error());
      return to_value(std::move(cfg), Value::unit());
    }
    case CmdKind::Free: {
      auto v = eval_expr(*c.e1, st);
      if (!v) return failed(v.error());
      auto p = expect_ptr(*v, "free target");
      if (!p) return failed(p.error());
      auto ok = st.heap.free_block(*p);
      if (!ok) return failed(ok.error());
      return to_value(std::move(cfg), Value::unit());
    }
    case CmdKind::Fail:
      return failed(errmsg::explicit_fail());
    case CmdKind::Loop: {
      // Diverges by stepping to itself.
      StepResult r;
      r.next = std::move(cfg);
      return r;
    }
  }
  return failed("malformed command");
}

StepResult step_value(MachineConfig cfg, const Program&) {
  if (cfg.kont.empty()) {
    return terminal(
        Approx::done(std::move(cfg.focus_val), std::move(cfg.state)));
  }
  Frame f = std::move(cfg.kont.back());
  cfg.kont.pop_back();
  State& st = cfg.state;
  switch (f.kind) {
    case Frame::Kind::Bind: {
      Frame pop{Frame::Kind::EnvPop};
      pop.mark = st.env.mark();
      st.env.bind(f.name, std::move(cfg.focus_val));
      cfg.kont.push_back(std::move(pop));
      return to_cmd(std::move(cfg), f.k1);
    }
    case Frame::Kind::EnvPop: {
      st.env.unbind_to(f.mark);
      StepResult r;
      r.next = std::move(cfg);
      return r;
    }
    case Frame::Kind::Seq:
      return to_cmd(std::move(cfg), f.k1);
    case Frame::Kind::WhileCond: {
      auto b = expect_bool(cfg.focus_val, "while condition");
      if (!b) return failed(b.error());
      if (!*b) return to_value(std::move(cfg), Value::unit());
      Frame body{Frame::Kind::WhileBody};
      body.k1 = f.k1;
      cfg.kont.push_back(std::move(body));
      return to_cmd(std::move(cfg), f.k1->c2);
    }
    case Frame::Kind::WhileBody: {
      Frame cond{Frame::Kind::WhileCond};
      cond.k1 = f.k1;
      cfg.kont.push_back(std::move(cond));
      return to_cmd(std::move(cfg), f.k1->c1);
    }
    case Frame::Kind::VarBind: {
      Frame pop{Frame::Kind::StorePop};
      pop.mark = st.store.mark();
      st.store.bind(f.name, std::move(cfg.focus_val));
      cfg.kont.push_back(std::move(pop));
      return to_cmd(std::move(cfg), f.k1);
    }
    case Frame::Kind::StorePop: {
      st.store.unbind_to(f.mark);
      StepResult r;
      r.next = std::move(cfg);
      return r;
    }
    case Frame::Kind::CallRestore: {
      st.env = std::move(f.saved_env);
      StepResult r;
      r.next = std::move(cfg);
      return r;
    }
  }
  return failed("malformed continuation");
}

}  // namespace

StepResult step(MachineConfig cfg, const Program& prog) {
  if (cfg.value_focus()) return step_value(std::move(cfg), prog);
  return step_cmd(std::move(cfg), prog);
}

Approx run_steps(const Cmd& c, const Program& prog, State s,
                 std::uint64_t max_steps, std::ostream* trace,
                 std::uint64_t* steps_taken) {
  // The focus command is owned by the caller; wrap it without copying.
  MachineConfig cfg = initial_config(CmdPtr(&c, [](const Cmd*) {}),
                                     std::move(s));
  for (std::uint64_t n = 0; n < max_steps; ++n) {
    if (trace != nullptr) {
      if (cfg.value_focus()) {
        *trace << "value " << to_string(cfg.focus_val);
      } else {
        *trace << head_name(cfg.focus_cmd->kind);
      }
      *trace << " kont=" << cfg.kont.size() << "\n";
    }
    StepResult r = step(std::move(cfg), prog);
    if (r.terminal) {
      if (steps_taken != nullptr) *steps_taken = n + 1;
      return std::move(*r.terminal);
    }
    cfg = std::move(*r.next);
  }
  if (steps_taken != nullptr) *steps_taken = max_steps;
  return Approx::bottom();
}

Approx run_steps_program(const Program& prog, State s, std::uint64_t max_steps,
                         std::ostream* trace) {
  return run_steps(*prog.main, prog, std::move(s), max_steps, trace);
}

std::uint64_t agreement_budget(std::uint64_t fuel, std::size_t nodes,
                               std::uint64_t k) {
  return k * (fuel + 1) * (static_cast<std::uint64_t>(nodes) + 1);
}

}  // namespace gallinac
