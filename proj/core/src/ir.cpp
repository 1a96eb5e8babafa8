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

#include "gallinac/ir.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "gallinac/interp_common.hpp"

namespace gallinac {

bool is_word(const IrValue& v) { return std::holds_alternative<Word>(v); }
bool is_ptr(const IrValue& v) { return std::holds_alternative<Pointer>(v); }

const char* ir_kind_name(const IrValue& v) { return is_word(v) ? "word" : "ptr"; }

std::string to_string(const IrValue& v) {
  if (is_word(v)) return std::to_string(std::get<Word>(v));
  return to_string(Value::pointer(std::get<Pointer>(v)));
}

namespace {

IrExprPtr mke(IrExpr e) { return std::make_shared<const IrExpr>(std::move(e)); }
IrCmdPtr mkc(IrCmd c) { return std::make_shared<const IrCmd>(std::move(c)); }

IrExprPtr ir_const(Word w) {
  IrExpr e{IrExprKind::ConstWord};
  e.wval = w;
  return mke(std::move(e));
}

// ---------------------------------------------------------------------------
// Lowering.

void collect_store_names(const Cmd& c, std::vector<std::string>& names) {
  if (c.kind == CmdKind::Var || c.kind == CmdKind::ReadVar ||
      c.kind == CmdKind::WriteVar) {
    if (std::find(names.begin(), names.end(), c.name) == names.end()) {
      names.push_back(c.name);
    }
  }
  if (c.c1) collect_store_names(*c.c1, names);
  if (c.c2) collect_store_names(*c.c2, names);
}

class FunctionLowering {
 public:
  FunctionLowering(const std::vector<std::string>& store_names,
                   const std::map<std::string, std::size_t>& function_ids)
      : store_names_(store_names), function_ids_(function_ids) {}

  Result<IrFunction> lower(std::string name, const FunctionDef& def) {
    fn_.name = std::move(name);
    fn_.n_params = def.params.size();
    for (std::size_t i = 0; i < def.params.size(); ++i) {
      fn_.temp_names.push_back(def.params[i]);
      temp_scope_.emplace_back(def.params[i], i);
    }
    auto body = lower_cmd(*def.body);
    if (!body) return body.propagate<IrFunction>();
    fn_.body = *body;
    return std::move(fn_);
  }

 private:
  using ExprR = Result<IrExprPtr>;
  using CmdR = Result<IrCmdPtr>;

  std::size_t store_id(const std::string& name) const {
    auto it = std::find(store_names_.begin(), store_names_.end(), name);
    return static_cast<std::size_t>(it - store_names_.begin());
  }

  ExprR lower_expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::FVar: {
        for (auto it = temp_scope_.rbegin(); it != temp_scope_.rend(); ++it) {
          if (it->first == e.name) {
            IrExpr out{IrExprKind::ReadTemp};
            out.temp = it->second;
            return mke(std::move(out));
          }
        }
        return ExprR::failure(errmsg::unbound_temp(e.name));
      }
      case ExprKind::Unit: return ir_const(0);
      case ExprKind::Bool: return ir_const(e.bval ? 1 : 0);
      case ExprKind::Nat: return ir_const(wrap_word(e.nval));
      case ExprKind::Null: return mke(IrExpr{IrExprKind::ConstNull});
      case ExprKind::Not: {
        auto a = lower_expr(*e.lhs);
        if (!a) return a;
        IrExpr out{IrExprKind::Not};
        out.lhs = *a;
        return mke(std::move(out));
      }
      default: break;
    }
    static const std::map<ExprKind, IrExprKind> ops = {
        {ExprKind::Add, IrExprKind::Add}, {ExprKind::Sub, IrExprKind::Sub},
        {ExprKind::Eq, IrExprKind::Eq},   {ExprKind::Neq, IrExprKind::Neq},
        {ExprKind::And, IrExprKind::And}, {ExprKind::Or, IrExprKind::Or},
        {ExprKind::Lt, IrExprKind::Lt},
        {ExprKind::PtrShift, IrExprKind::Shift}};
    auto a = lower_expr(*e.lhs);
    if (!a) return a;
    auto b = lower_expr(*e.rhs);
    if (!b) return b;
    IrExpr out{ops.at(e.kind)};
    out.lhs = *a;
    out.rhs = *b;
    return mke(std::move(out));
  }

  CmdR lower_cmd(const Cmd& c) {
    switch (c.kind) {
      case CmdKind::Ret: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::Ret};
        out.e1 = *e;
        return mkc(std::move(out));
      }
      case CmdKind::Bind: {
        const std::size_t id = fn_.temp_names.size();
        fn_.temp_names.push_back(c.name);
        auto c1 = lower_cmd(*c.c1);
        if (!c1) return c1;
        temp_scope_.emplace_back(c.name, id);
        auto c2 = lower_cmd(*c.c2);
        temp_scope_.pop_back();
        if (!c2) return c2;
        IrCmd out{IrCmdKind::Bind};
        out.index = id;
        out.c1 = *c1;
        out.c2 = *c2;
        return mkc(std::move(out));
      }
      case CmdKind::Seq: {
        auto c1 = lower_cmd(*c.c1);
        if (!c1) return c1;
        auto c2 = lower_cmd(*c.c2);
        if (!c2) return c2;
        IrCmd out{IrCmdKind::Seq};
        out.c1 = *c1;
        out.c2 = *c2;
        return mkc(std::move(out));
      }
      case CmdKind::Call: {
        auto it = function_ids_.find(c.name);
        if (it == function_ids_.end()) {
          return CmdR::failure(errmsg::unknown_function(c.name));
        }
        IrCmd out{IrCmdKind::Call};
        out.index = it->second;
        for (const auto& a : c.args) {
          auto e = lower_expr(*a);
          if (!e) return e.propagate<IrCmdPtr>();
          out.args.push_back(*e);
        }
        return mkc(std::move(out));
      }
      case CmdKind::If: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        auto c1 = lower_cmd(*c.c1);
        if (!c1) return c1;
        auto c2 = lower_cmd(*c.c2);
        if (!c2) return c2;
        IrCmd out{IrCmdKind::If};
        out.e1 = *e;
        out.c1 = *c1;
        out.c2 = *c2;
        return mkc(std::move(out));
      }
      case CmdKind::While: {
        auto c1 = lower_cmd(*c.c1);
        if (!c1) return c1;
        auto c2 = lower_cmd(*c.c2);
        if (!c2) return c2;
        IrCmd out{IrCmdKind::While};
        out.c1 = *c1;
        out.c2 = *c2;
        return mkc(std::move(out));
      }
      case CmdKind::Var: {
        const std::size_t slot = fn_.local_names.size();
        fn_.local_names.push_back(c.name);
        fn_.local_store_ids.push_back(store_id(c.name));
        auto c1 = lower_cmd(*c.c1);
        if (!c1) return c1;
        local_scope_.emplace_back(c.name, slot);
        auto c2 = lower_cmd(*c.c2);
        local_scope_.pop_back();
        if (!c2) return c2;
        IrCmd out{IrCmdKind::Scope};
        out.index = slot;
        out.c1 = *c1;
        out.c2 = *c2;
        return mkc(std::move(out));
      }
      case CmdKind::ReadVar: {
        IrCmd out{IrCmdKind::ReadOuter};
        out.index = store_id(c.name);
        for (auto it = local_scope_.rbegin(); it != local_scope_.rend();
             ++it) {
          if (it->first == c.name) {
            out.kind = IrCmdKind::ReadLocal;
            out.index = it->second;
            break;
          }
        }
        return mkc(std::move(out));
      }
      case CmdKind::WriteVar: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::WriteOuter};
        out.index = store_id(c.name);
        out.e1 = *e;
        for (auto it = local_scope_.rbegin(); it != local_scope_.rend();
             ++it) {
          if (it->first == c.name) {
            out.kind = IrCmdKind::WriteLocal;
            out.index = it->second;
            break;
          }
        }
        return mkc(std::move(out));
      }
      case CmdKind::Alloc: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::Alloc};
        out.count = c.count;
        out.e1 = *e;
        return mkc(std::move(out));
      }
      case CmdKind::ReadPtr: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::ReadPtr};
        out.e1 = *e;
        return mkc(std::move(out));
      }
      case CmdKind::WritePtr: {
        auto p = lower_expr(*c.e1);
        if (!p) return p.propagate<IrCmdPtr>();
        auto v = lower_expr(*c.e2);
        if (!v) return v.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::WritePtr};
        out.e1 = *p;
        out.e2 = *v;
        return mkc(std::move(out));
      }
      case CmdKind::Free: {
        auto e = lower_expr(*c.e1);
        if (!e) return e.propagate<IrCmdPtr>();
        IrCmd out{IrCmdKind::Free};
        out.e1 = *e;
        return mkc(std::move(out));
      }
      case CmdKind::Fail:
        return mkc(IrCmd{IrCmdKind::Fail});
      case CmdKind::Loop:
        return mkc(IrCmd{IrCmdKind::Diverge});
    }
    return CmdR::failure("malformed command");
  }

  const std::vector<std::string>& store_names_;
  const std::map<std::string, std::size_t>& function_ids_;
  IrFunction fn_;
  std::vector<std::pair<std::string, std::size_t>> temp_scope_;
  std::vector<std::pair<std::string, std::size_t>> local_scope_;
};

}  // namespace

Result<IrProgram> lower_to_ir(const Program& p) {
  using R = Result<IrProgram>;
  if (!p.main) return R::failure("program has no main command");

  IrProgram out;
  for (const auto& [name, def] : p.functions) {
    if (def.body) collect_store_names(*def.body, out.store_names);
  }
  collect_store_names(*p.main, out.store_names);

  std::map<std::string, std::size_t> function_ids;
  for (std::size_t i = 0; i < p.functions.size(); ++i) {
    function_ids.emplace(p.functions[i].first, i);
  }

  for (const auto& [name, def] : p.functions) {
    if (!def.body) {
      return R::failure("function '" + name + "' has no body");
    }
    auto fn = FunctionLowering(out.store_names, function_ids)
                  .lower(name, def);
    if (!fn) return fn.propagate<IrProgram>();
    out.functions.push_back(std::move(*fn));
  }

  FunctionDef main_def;
  main_def.body = p.main;
  auto fn = FunctionLowering(out.store_names, function_ids)
                .lower("%main", main_def);
  if (!fn) return fn.propagate<IrProgram>();
  out.functions.push_back(std::move(*fn));
  return out;
}

// ---------------------------------------------------------------------------
// Execution.

namespace {

struct Activation {
  const IrFunction* fn = nullptr;
  std::vector<IrValue> temps;
  std::vector<bool> written;
  BlockId frame = kNullBlock;
  std::vector<bool> active;
};

class IrInterp {
 public:
  IrInterp(const IrProgram& prog, std::uint64_t fuel)
      : prog_(prog), fuel_(fuel) {}

  IrResult run() {
    Out o = enter(prog_.main_id(), {});
    IrResult r;
    switch (o.k) {
      case Out::K::Val:
        r.kind = IrResult::Kind::Done;
        r.value = o.v;
        r.heap = std::move(heap_);
        break;
      case Out::K::Fail:
        r.kind = IrResult::Kind::Failed;
        r.reason = std::move(o.reason);
        break;
      case Out::K::Bot:
        r.kind = IrResult::Kind::Bottom;
        break;
    }
    return r;
  }

 private:
  struct Out {
    enum class K { Val, Fail, Bot };
    K k;
    IrValue v = Word{0};
    std::string reason;

    static Out val(IrValue value) { return Out{K::Val, std::move(value), {}}; }
    static Out fail(std::string r) {
      return Out{K::Fail, Word{0}, std::move(r)};
    }
    static Out bot() { return Out{K::Bot, Word{0}, {}}; }
  };

  Result<Word> need_word(const IrValue& v, const char* what) {
    if (!is_word(v)) {
      return Result<Word>::failure(errmsg::expected_kind(what, "word", "ptr"));
    }
    return std::get<Word>(v);
  }

  Result<Pointer> need_ptr(const IrValue& v, const char* what) {
    if (!is_ptr(v)) {
      return Result<Pointer>::failure(
          errmsg::expected_kind(what, "ptr", "word"));
    }
    return std::get<Pointer>(v);
  }

  Result<IrValue> eval(const IrExpr& e) {
    using R = Result<IrValue>;
    switch (e.kind) {
      case IrExprKind::ConstWord: return IrValue{e.wval};
      case IrExprKind::ConstNull: return IrValue{kNullPointer};
      case IrExprKind::ReadTemp: {
        const Activation& act = stack_.back();
        if (!act.written[e.temp]) {
          return R::failure(
              errmsg::unbound_temp(act.fn->temp_names[e.temp]));
        }
        return act.temps[e.temp];
      }
      case IrExprKind::Not: {
        auto v = eval(*e.lhs);
        if (!v) return v;
        auto w = need_word(*v, "not operand");
        if (!w) return w.propagate<IrValue>();
        return IrValue{Word{*w == 0 ? 1u : 0u}};
      }
      default: break;
    }

    auto lhs = eval(*e.lhs);
    if (!lhs) return lhs;
    auto rhs = eval(*e.rhs);
    if (!rhs) return rhs;

    switch (e.kind) {
      case IrExprKind::Add: {
        auto a = need_word(*lhs, "add operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "add operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{word_add(*a, *b)};
      }
      case IrExprKind::Sub: {
        auto a = need_word(*lhs, "sub operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "sub operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{word_sub(*a, *b)};
      }
      case IrExprKind::Lt: {
        auto a = need_word(*lhs, "lt operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "lt operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{Word{*a < *b ? 1u : 0u}};
      }
      case IrExprKind::Eq:
      case IrExprKind::Neq: {
        if (lhs->index() != rhs->index()) {
          const char* op = e.kind == IrExprKind::Eq ? "eq" : "neq";
          return R::failure(errmsg::mixed_eq(op, ir_kind_name(*lhs),
                                             ir_kind_name(*rhs)));
        }
        const bool eq = *lhs == *rhs;
        const bool want = e.kind == IrExprKind::Eq ? eq : !eq;
        return IrValue{Word{want ? 1u : 0u}};
      }
      case IrExprKind::And:
      case IrExprKind::Or: {
        const char* what =
            e.kind == IrExprKind::And ? "and operand" : "or operand";
        auto a = need_word(*lhs, what);
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, what);
        if (!b) return b.propagate<IrValue>();
        const bool x = *a != 0;
        const bool y = *b != 0;
        const bool r = e.kind == IrExprKind::And ? (x && y) : (x || y);
        return IrValue{Word{r ? 1u : 0u}};
      }
      case IrExprKind::Shift: {
        auto p = need_ptr(*lhs, "ptr-shift base");
        if (!p) return p.propagate<IrValue>();
        auto k = need_word(*rhs, "ptr-shift amount");
        if (!k) return k.propagate<IrValue>();
        auto shifted = heap_.shift(*p, *k);
        if (!shifted) return shifted.propagate<IrValue>();
        return IrValue{*shifted};
      }
      default: break;
    }
    return R::failure("malformed expression");
  }

  Out enter(std::size_t fid, std::vector<IrValue> args) {
    const IrFunction& fn = prog_.functions[fid];
    Activation act;
    act.fn = &fn;
    act.temps.assign(fn.temp_names.size(), IrValue{Word{0}});
    act.written.assign(fn.temp_names.size(), false);
    for (std::size_t i = 0; i < args.size(); ++i) {
      act.temps[i] = std::move(args[i]);
      act.written[i] = true;
    }
    if (!fn.local_names.empty()) {
      auto p = heap_.alloc(static_cast<Word>(fn.local_names.size()),
                           IrValue{Word{0}}, /*frame=*/true);
      if (!p) return Out::fail(p.error());
      act.frame = p->block;
      act.active.assign(fn.local_names.size(), false);
    }
    stack_.push_back(std::move(act));
    Out o = exec(*fn.body);
    if (o.k == Out::K::Val && stack_.back().frame != kNullBlock) {
      heap_.drop_frame(Pointer{stack_.back().frame, 0});
    }
    stack_.pop_back();
    return o;
  }

  // Innermost activation holding an active slot for the given store name;
  // within a frame the highest active slot is the innermost var site.
  bool find_outer(std::size_t store_id, Pointer* where) {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      const std::vector<std::size_t>& ids = it->fn->local_store_ids;
      for (std::size_t slot = ids.size(); slot-- > 0;) {
        if (it->active[slot] && ids[slot] == store_id) {
          *where = Pointer{it->frame, static_cast<Word>(slot)};
          return true;
        }
      }
    }
    return false;
  }

  Out exec(const IrCmd& c) {
    switch (c.kind) {
      case IrCmdKind::Ret: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        return Out::val(*v);
      }
      case IrCmdKind::Bind: {
        Out o = exec(*c.c1);
        if (o.k != Out::K::Val) return o;
        Activation& act = stack_.back();
        act.temps[c.index] = std::move(o.v);
        act.written[c.index] = true;
        return exec(*c.c2);
      }
      case IrCmdKind::Seq: {
        Out o = exec(*c.c1);
        if (o.k != Out::K::Val) return o;
        return exec(*c.c2);
      }
      case IrCmdKind::Call: {
        const IrFunction& fn = prog_.functions[c.index];
        if (fn.n_params != c.args.size()) {
          return Out::fail(errmsg::arity_mismatch(fn.name, fn.n_params,
                                                  c.args.size()));
        }
        std::vector<IrValue> argv;
        argv.reserve(c.args.size());
        for (const auto& a : c.args) {
          auto v = eval(*a);
          if (!v) return Out::fail(v.error());
          argv.push_back(std::move(*v));
        }
        return enter(c.index, std::move(argv));
      }
      case IrCmdKind::If: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        auto w = need_word(*v, "if condition");
        if (!w) return Out::fail(w.error());
        return exec(*w != 0 ? *c.c1 : *c.c2);
      }
      case IrCmdKind::While: {
        for (;;) {
          if (fuel_ == 0) return Out::bot();
          --fuel_;
          Out cond = exec(*c.c1);
          if (cond.k != Out::K::Val) return cond;
          auto w = need_word(cond.v, "while condition");
          if (!w) return Out::fail(w.error());
          if (*w == 0) return Out::val(IrValue{Word{0}});
          Out body = exec(*c.c2);
          if (body.k != Out::K::Val) return body;
        }
      }
      case IrCmdKind::Scope: {
        Out o = exec(*c.c1);
        if (o.k != Out::K::Val) return o;
        const std::size_t ai = stack_.size() - 1;
        heap_.store(Pointer{stack_[ai].frame, static_cast<Word>(c.index)},
                    o.v);
        stack_[ai].active[c.index] = true;
        Out rest = exec(*c.c2);
        stack_[ai].active[c.index] = false;
        return rest;
      }
      case IrCmdKind::ReadLocal: {
        auto v = heap_.load(
            Pointer{stack_.back().frame, static_cast<Word>(c.index)});
        if (!v) return Out::fail(v.error());
        return Out::val(*v);
      }
      case IrCmdKind::WriteLocal: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        auto ok = heap_.store(
            Pointer{stack_.back().frame, static_cast<Word>(c.index)}, *v);
        if (!ok) return Out::fail(ok.error());
        return Out::val(IrValue{Word{0}});
      }
      case IrCmdKind::ReadOuter: {
        Pointer where;
        if (!find_outer(c.index, &where)) {
          return Out::fail(
              errmsg::unbound_store_var(prog_.store_names[c.index]));
        }
        auto v = heap_.load(where);
        if (!v) return Out::fail(v.error());
        return Out::val(*v);
      }
      case IrCmdKind::WriteOuter: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        Pointer where;
        if (!find_outer(c.index, &where)) {
          return Out::fail(
              errmsg::unbound_store_var(prog_.store_names[c.index]));
        }
        auto ok = heap_.store(where, *v);
        if (!ok) return Out::fail(ok.error());
        return Out::val(IrValue{Word{0}});
      }
      case IrCmdKind::Alloc: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        auto p = heap_.alloc(c.count, *v, /*frame=*/false);
        if (!p) return Out::fail(p.error());
        return Out::val(IrValue{*p});
      }
      case IrCmdKind::ReadPtr: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        auto p = need_ptr(*v, "read-ptr address");
        if (!p) return Out::fail(p.error());
        auto cell = heap_.load(*p);
        if (!cell) return Out::fail(cell.error());
        return Out::val(*cell);
      }
      case IrCmdKind::WritePtr: {
        auto pv = eval(*c.e1);
        if (!pv) return Out::fail(pv.error());
        auto p = need_ptr(*pv, "write-ptr address");
        if (!p) return Out::fail(p.error());
        auto v = eval(*c.e2);
        if (!v) return Out::fail(v.error());
        auto ok = heap_.store(*p, *v);
        if (!ok) return Out::fail(ok.error());
        return Out::val(IrValue{Word{0}});
      }
      case IrCmdKind::Free: {
        auto v = eval(*c.e1);
        if (!v) return Out::fail(v.error());
        auto p = need_ptr(*v, "free target");
        if (!p) return Out::fail(p.error());
        auto ok = heap_.free_block(*p);
        if (!ok) return Out::fail(ok.error());
        return Out::val(IrValue{Word{0}});
      }
      case IrCmdKind::Fail:
        return Out::fail(errmsg::explicit_fail());
      case IrCmdKind::Diverge:
        return Out::bot();
    }
    return Out::fail("malformed command");
  }

  const IrProgram& prog_;
  IrHeap heap_;
  std::vector<Activation> stack_;
  std::uint64_t fuel_;
};

}  // namespace

IrResult run_ir(const IrProgram& p, std::uint64_t fuel) {
  return IrInterp(p, fuel).run();
}

// ---------------------------------------------------------------------------
// Listing.

namespace {

void dump_expr(std::ostream& os, const IrExpr& e) {
  switch (e.kind) {
    case IrExprKind::ConstWord: os << e.wval; return;
    case IrExprKind::ConstNull: os << "null"; return;
    case IrExprKind::ReadTemp: os << "t" << e.temp; return;
    case IrExprKind::Not:
      os << "(not ";
      dump_expr(os, *e.lhs);
      os << ")";
      return;
    default: break;
  }
  const char* name = "?";
  switch (e.kind) {
    case IrExprKind::Add: name = "add"; break;
    case IrExprKind::Sub: name = "sub"; break;
    case IrExprKind::Eq: name = "eq"; break;
    case IrExprKind::Neq: name = "neq"; break;
    case IrExprKind::And: name = "and"; break;
    case IrExprKind::Or: name = "or"; break;
    case IrExprKind::Lt: name = "lt"; break;
    case IrExprKind::Shift: name = "shift"; break;
    default: break;
  }
  os << "(" << name << " ";
  dump_expr(os, *e.lhs);
  os << " ";
  dump_expr(os, *e.rhs);
  os << ")";
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void dump_cmd(std::ostream& os, const IrCmd& c, int depth) {
  indent(os, depth);
  switch (c.kind) {
    case IrCmdKind::Ret:
      os << "ret ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::Bind:
      os << "bind t" << c.index << "\n";
      dump_cmd(os, *c.c1, depth + 1);
      dump_cmd(os, *c.c2, depth + 1);
      return;
    case IrCmdKind::Seq:
      os << "seq\n";
      dump_cmd(os, *c.c1, depth + 1);
      dump_cmd(os, *c.c2, depth + 1);
      return;
    case IrCmdKind::Call:
      os << "call f" << c.index;
      for (const auto& a : c.args) {
        os << " ";
        dump_expr(os, *a);
      }
      os << "\n";
      return;
    case IrCmdKind::If:
      os << "if ";
      dump_expr(os, *c.e1);
      os << "\n";
      dump_cmd(os, *c.c1, depth + 1);
      dump_cmd(os, *c.c2, depth + 1);
      return;
    case IrCmdKind::While:
      os << "while\n";
      dump_cmd(os, *c.c1, depth + 1);
      dump_cmd(os, *c.c2, depth + 1);
      return;
    case IrCmdKind::Scope:
      os << "scope s" << c.index << "\n";
      dump_cmd(os, *c.c1, depth + 1);
      dump_cmd(os, *c.c2, depth + 1);
      return;
    case IrCmdKind::ReadLocal:
      os << "readlocal s" << c.index << "\n";
      return;
    case IrCmdKind::WriteLocal:
      os << "writelocal s" << c.index << " ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::ReadOuter:
      os << "readouter v" << c.index << "\n";
      return;
    case IrCmdKind::WriteOuter:
      os << "writeouter v" << c.index << " ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::Alloc:
      os << "alloc " << c.count << " ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::ReadPtr:
      os << "readptr ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::WritePtr:
      os << "writeptr ";
      dump_expr(os, *c.e1);
      os << " ";
      dump_expr(os, *c.e2);
      os << "\n";
      return;
    case IrCmdKind::Free:
      os << "free ";
      dump_expr(os, *c.e1);
      os << "\n";
      return;
    case IrCmdKind::Fail:
      os << "fail\n";
      return;
    case IrCmdKind::Diverge:
      os << "diverge\n";
      return;
  }
}

}  // namespace

std::string dump_ir(const IrProgram& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.store_names.size(); ++i) {
    os << "storevar v" << i << " " << p.store_names[i] << "\n";
  }
  for (std::size_t i = 0; i < p.functions.size(); ++i) {
    const IrFunction& fn = p.functions[i];
    os << "f" << i << " " << fn.name << " params=" << fn.n_params
       << " temps=" << fn.temp_names.size()
       << " locals=" << fn.local_names.size() << "\n";
    for (std::size_t t = 0; t < fn.temp_names.size(); ++t) {
      os << "  temp t" << t << " " << fn.temp_names[t] << "\n";
    }
    for (std::size_t s = 0; s < fn.local_names.size(); ++s) {
      os << "  local s" << s << " " << fn.local_names[s] << "\n";
    }
    os << "  body\n";
    dump_cmd(os, *fn.body, 2);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Relating source and ir outcomes.

Result<std::map<BlockId, BlockId>> make_block_map(const Heap& src,
                                                  const IrHeap& ir) {
  using R = Result<std::map<BlockId, BlockId>>;
  std::vector<std::pair<BlockId, BlockInfo>> a(src.blocks().begin(),
                                               src.blocks().end());
  std::vector<std::pair<BlockId, BlockInfo>> b;
  for (const auto& [id, info] : ir.blocks()) {
    if (!info.frame) b.emplace_back(id, info);
  }
  if (a.size() != b.size()) {
    return R::failure("block count mismatch: source has " +
                      std::to_string(a.size()) + ", lowered run has " +
                      std::to_string(b.size()));
  }
  std::map<BlockId, BlockId> m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].second.size != b[i].second.size ||
        a[i].second.alive != b[i].second.alive) {
      std::ostringstream os;
      os << "allocation " << i << " differs: source b" << a[i].first
         << " (size " << a[i].second.size << ", "
         << (a[i].second.alive ? "alive" : "dead") << ") vs b" << b[i].first
         << " (size " << b[i].second.size << ", "
         << (b[i].second.alive ? "alive" : "dead") << ")";
      return R::failure(os.str());
    }
    m.emplace(a[i].first, b[i].first);
  }
  return m;
}

bool value_lowers_to(const Value& v, const IrValue& w,
                     const std::map<BlockId, BlockId>& bmap) {
  switch (v.kind()) {
    case ValueKind::Unit: return w == IrValue{Word{0}};
    case ValueKind::Bool: return w == IrValue{Word{v.as_bool() ? 1u : 0u}};
    case ValueKind::Nat: return w == IrValue{v.as_nat()};
    case ValueKind::Ptr: {
      if (!is_ptr(w)) return false;
      const Pointer p = v.as_ptr();
      const Pointer q = std::get<Pointer>(w);
      if (p.is_null()) return q.is_null();
      auto it = bmap.find(p.block);
      return it != bmap.end() && q.block == it->second &&
             q.offset == p.offset;
    }
  }
  return false;
}

bool relate_states(const Value& src_value, const Heap& src_heap,
                   const IrValue& ir_value, const IrHeap& ir_heap,
                   std::string* why) {
  auto complain = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  auto bmap = make_block_map(src_heap, ir_heap);
  if (!bmap) return complain(bmap.error());
  for (const auto& [id, info] : ir_heap.blocks()) {
    if (info.frame && info.alive) {
      return complain("frame block b" + std::to_string(id) +
                      " outlived the run");
    }
  }
  if (!value_lowers_to(src_value, ir_value, *bmap)) {
    return complain("result mismatch: source " + to_string(src_value) +
                    ", lowered " + to_string(ir_value));
  }
  std::size_t ir_plain_cells = 0;
  for (const auto& [cell, v] : ir_heap.cells()) {
    if (!ir_heap.blocks().at(cell.block).frame) ir_plain_cells += 1;
  }
  if (ir_plain_cells != src_heap.cell_count()) {
    return complain("heap cell count mismatch: source " +
                    std::to_string(src_heap.cell_count()) + ", lowered " +
                    std::to_string(ir_plain_cells));
  }
  for (const auto& [cell, v] : src_heap.cells()) {
    const Cell mapped{bmap->at(cell.block), cell.offset};
    auto it = ir_heap.cells().find(mapped);
    if (it == ir_heap.cells().end()) {
      return complain("cell (b" + std::to_string(cell.block) + "," +
                      std::to_string(cell.offset) +
                      ") is missing from the lowered heap");
    }
    if (!value_lowers_to(v, it->second, *bmap)) {
      return complain("cell (b" + std::to_string(cell.block) + "," +
                      std::to_string(cell.offset) + ") holds " +
                      to_string(v) + " in source but " +
                      to_string(it->second) + " after lowering");
    }
  }
  return true;
}

}  // namespace gallinac
