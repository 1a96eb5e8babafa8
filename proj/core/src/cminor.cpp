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

#include "gallinac/cminor.hpp"

#include <optional>
#include <sstream>
#include <utility>

#include "gallinac/interp_common.hpp"

namespace gallinac {

namespace {

CmExprPtr mke(CmExpr e) { return std::make_shared<const CmExpr>(std::move(e)); }
CmStmtPtr mks(CmStmt s) { return std::make_shared<const CmStmt>(std::move(s)); }

CmExprPtr cm_const(Word w) {
  CmExpr e{CmExprKind::ConstWord};
  e.wval = w;
  return mke(std::move(e));
}

CmExprPtr cm_read_temp(std::size_t t) {
  CmExpr e{CmExprKind::ReadTemp};
  e.index = t;
  return mke(std::move(e));
}

CmExprPtr cm_stack_addr(std::size_t slot) {
  CmExpr e{CmExprKind::StackAddr};
  e.index = slot;
  return mke(std::move(e));
}

CmStmtPtr cm_seq(std::vector<CmStmtPtr> children) {
  CmStmt s{CmStmtKind::Seq};
  s.children = std::move(children);
  return mks(std::move(s));
}

CmStmtPtr cm_assign(std::size_t dst, CmExprPtr e) {
  CmStmt s{CmStmtKind::AssignTemp};
  s.index = dst;
  s.e1 = std::move(e);
  return mks(std::move(s));
}

// ---------------------------------------------------------------------------
// Lowering.

class FunctionCmLowering {
 public:
  CmFunction lower(const IrFunction& in) {
    fn_.name = in.name;
    fn_.n_params = in.n_params;
    fn_.temp_names = in.temp_names;
    fn_.local_store_ids = in.local_store_ids;

    const std::size_t result = fresh_temp();
    std::vector<CmStmtPtr> stmts;
    lower_cmd(*in.body, result, stmts);
    CmStmt ret{CmStmtKind::Return};
    ret.e1 = cm_read_temp(result);
    stmts.push_back(mks(std::move(ret)));
    fn_.body = cm_seq(std::move(stmts));
    return std::move(fn_);
  }

 private:
  std::size_t fresh_temp() {
    fn_.temp_names.push_back("%scratch");
    return fn_.temp_names.size() - 1;
  }

  std::size_t discard_temp() {
    if (!discard_) discard_ = fresh_temp();
    return *discard_;
  }

  CmExprPtr conv(const IrExpr& e) {
    CmExpr out{CmExprKind::ConstWord};
    switch (e.kind) {
      case IrExprKind::ConstWord: return cm_const(e.wval);
      case IrExprKind::ConstNull: return mke(CmExpr{CmExprKind::ConstNull});
      case IrExprKind::ReadTemp: return cm_read_temp(e.temp);
      case IrExprKind::Not: out.kind = CmExprKind::Not; break;
      case IrExprKind::Add: out.kind = CmExprKind::Add; break;
      case IrExprKind::Sub: out.kind = CmExprKind::Sub; break;
      case IrExprKind::Eq: out.kind = CmExprKind::Eq; break;
      case IrExprKind::Neq: out.kind = CmExprKind::Neq; break;
      case IrExprKind::And: out.kind = CmExprKind::And; break;
      case IrExprKind::Or: out.kind = CmExprKind::Or; break;
      case IrExprKind::Lt: out.kind = CmExprKind::Lt; break;
      case IrExprKind::Shift: out.kind = CmExprKind::Shift; break;
    }
    if (e.lhs) out.lhs = conv(*e.lhs);
    if (e.rhs) out.rhs = conv(*e.rhs);
    return mke(std::move(out));
  }

  void lower_cmd(const IrCmd& c, std::size_t dst,
                 std::vector<CmStmtPtr>& out) {
    switch (c.kind) {
      case IrCmdKind::Ret:
        out.push_back(cm_assign(dst, conv(*c.e1)));
        return;
      case IrCmdKind::Bind:
        lower_cmd(*c.c1, c.index, out);
        lower_cmd(*c.c2, dst, out);
        return;
      case IrCmdKind::Seq:
        lower_cmd(*c.c1, discard_temp(), out);
        lower_cmd(*c.c2, dst, out);
        return;
      case IrCmdKind::Call: {
        CmStmt s{CmStmtKind::Call};
        s.index = dst;
        s.target = c.index;
        for (const auto& a : c.args) s.args.push_back(conv(*a));
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::If: {
        CmStmt s{CmStmtKind::If};
        s.ctx = "if condition";
        s.e1 = conv(*c.e1);
        std::vector<CmStmtPtr> then_stmts;
        lower_cmd(*c.c1, dst, then_stmts);
        std::vector<CmStmtPtr> else_stmts;
        lower_cmd(*c.c2, dst, else_stmts);
        s.children.push_back(cm_seq(std::move(then_stmts)));
        s.children.push_back(cm_seq(std::move(else_stmts)));
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::While: {
        const std::size_t cond_temp = fresh_temp();
        std::vector<CmStmtPtr> body;
        lower_cmd(*c.c1, cond_temp, body);
        CmStmt test{CmStmtKind::If};
        test.ctx = "while condition";
        test.e1 = cm_read_temp(cond_temp);
        CmStmt leave{CmStmtKind::Exit};
        leave.index = 0;
        test.children.push_back(cm_seq({}));
        test.children.push_back(cm_seq({mks(std::move(leave))}));
        body.push_back(mks(std::move(test)));
        lower_cmd(*c.c2, discard_temp(), body);
        CmStmt loop{CmStmtKind::Loop};
        loop.children.push_back(cm_seq(std::move(body)));
        out.push_back(mks(std::move(loop)));
        out.push_back(cm_assign(dst, cm_const(0)));
        return;
      }
      case IrCmdKind::Scope: {
        const std::size_t init = fresh_temp();
        lower_cmd(*c.c1, init, out);
        CmStmt store{CmStmtKind::Store};
        store.e1 = cm_stack_addr(c.index);
        store.e2 = cm_read_temp(init);
        out.push_back(mks(std::move(store)));
        CmStmt scope{CmStmtKind::Scope};
        scope.index = c.index;
        std::vector<CmStmtPtr> inner;
        lower_cmd(*c.c2, dst, inner);
        scope.children.push_back(cm_seq(std::move(inner)));
        out.push_back(mks(std::move(scope)));
        return;
      }
      case IrCmdKind::ReadLocal: {
        CmStmt s{CmStmtKind::Load};
        s.index = dst;
        s.e1 = cm_stack_addr(c.index);
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::WriteLocal: {
        CmStmt s{CmStmtKind::Store};
        s.e1 = cm_stack_addr(c.index);
        s.e2 = conv(*c.e1);
        out.push_back(mks(std::move(s)));
        out.push_back(cm_assign(dst, cm_const(0)));
        return;
      }
      case IrCmdKind::ReadOuter: {
        CmStmt s{CmStmtKind::OuterLoad};
        s.index = dst;
        s.target = c.index;
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::WriteOuter: {
        CmStmt s{CmStmtKind::OuterStore};
        s.target = c.index;
        s.e1 = conv(*c.e1);
        out.push_back(mks(std::move(s)));
        out.push_back(cm_assign(dst, cm_const(0)));
        return;
      }
      case IrCmdKind::Alloc: {
        CmStmt s{CmStmtKind::Alloc};
        s.index = dst;
        s.count = c.count;
        s.e1 = conv(*c.e1);
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::ReadPtr: {
        CmStmt s{CmStmtKind::Load};
        s.index = dst;
        s.e1 = conv(*c.e1);
        out.push_back(mks(std::move(s)));
        return;
      }
      case IrCmdKind::WritePtr: {
        CmStmt s{CmStmtKind::Store};
        s.e1 = conv(*c.e1);
        s.e2 = conv(*c.e2);
        out.push_back(mks(std::move(s)));
        out.push_back(cm_assign(dst, cm_const(0)));
        return;
      }
      case IrCmdKind::Free: {
        CmStmt s{CmStmtKind::Free};
        s.e1 = conv(*c.e1);
        out.push_back(mks(std::move(s)));
        out.push_back(cm_assign(dst, cm_const(0)));
        return;
      }
      case IrCmdKind::Fail:
        out.push_back(mks(CmStmt{CmStmtKind::Fail}));
        return;
      case IrCmdKind::Diverge:
        out.push_back(mks(CmStmt{CmStmtKind::Diverge}));
        return;
    }
  }

  CmFunction fn_;
  std::optional<std::size_t> discard_;
};

}  // namespace

CmProgram lower_to_cminor(const IrProgram& p) {
  CmProgram out;
  out.store_names = p.store_names;
  for (const IrFunction& fn : p.functions) {
    out.functions.push_back(FunctionCmLowering().lower(fn));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

namespace {

class Validator {
 public:
  explicit Validator(const CmProgram& p) : prog_(p) {}

  VoidResult run() {
    for (const CmFunction& fn : prog_.functions) {
      fn_ = &fn;
      if (fn.n_params > fn.temp_names.size()) {
        return err("declares more params than temps");
      }
      if (auto r = check_stmt(*fn.body, 0); !r.ok()) return r;
    }
    return ok_void();
  }

 private:
  VoidResult err(const std::string& what) {
    return VoidResult::failure("function '" + fn_->name + "': " + what);
  }

  VoidResult check_temp(std::size_t t) {
    if (t >= fn_->temp_names.size()) {
      return err("temp t" + std::to_string(t) + " is out of range");
    }
    return ok_void();
  }

  VoidResult check_expr(const CmExpr& e) {
    if (e.kind == CmExprKind::ReadTemp) return check_temp(e.index);
    if (e.kind == CmExprKind::StackAddr) {
      if (e.index >= fn_->stack_size()) {
        return err("stack slot s" + std::to_string(e.index) +
                   " is out of range");
      }
      return ok_void();
    }
    if (e.lhs) {
      if (auto r = check_expr(*e.lhs); !r.ok()) return r;
    }
    if (e.rhs) {
      if (auto r = check_expr(*e.rhs); !r.ok()) return r;
    }
    return ok_void();
  }

  VoidResult check_stmt(const CmStmt& s, std::size_t loops) {
    if (s.e1) {
      if (auto r = check_expr(*s.e1); !r.ok()) return r;
    }
    if (s.e2) {
      if (auto r = check_expr(*s.e2); !r.ok()) return r;
    }
    for (const auto& a : s.args) {
      if (auto r = check_expr(*a); !r.ok()) return r;
    }
    switch (s.kind) {
      case CmStmtKind::AssignTemp:
      case CmStmtKind::Load:
      case CmStmtKind::OuterLoad:
      case CmStmtKind::Alloc:
        if (auto r = check_temp(s.index); !r.ok()) return r;
        break;
      case CmStmtKind::Call:
        if (auto r = check_temp(s.index); !r.ok()) return r;
        if (s.target >= prog_.functions.size()) {
          return err("call targets unknown function f" +
                     std::to_string(s.target));
        }
        break;
      case CmStmtKind::Exit:
        if (s.index >= loops) {
          return err("exit " + std::to_string(s.index) +
                     " is enclosed by only " + std::to_string(loops) +
                     " loops");
        }
        break;
      case CmStmtKind::Scope:
        if (s.index >= fn_->stack_size()) {
          return err("scope slot s" + std::to_string(s.index) +
                     " is out of range");
        }
        break;
      case CmStmtKind::OuterStore:
        if (s.target >= prog_.store_names.size()) {
          return err("store name v" + std::to_string(s.target) +
                     " is out of range");
        }
        break;
      default:
        break;
    }
    if (s.kind == CmStmtKind::OuterLoad &&
        s.target >= prog_.store_names.size()) {
      return err("store name v" + std::to_string(s.target) +
                 " is out of range");
    }
    const std::size_t inner =
        s.kind == CmStmtKind::Loop ? loops + 1 : loops;
    for (const auto& child : s.children) {
      if (auto r = check_stmt(*child, inner); !r.ok()) return r;
    }
    return ok_void();
  }

  const CmProgram& prog_;
  const CmFunction* fn_ = nullptr;
};

}  // namespace

VoidResult validate_cminor(const CmProgram& p) { return Validator(p).run(); }

// ---------------------------------------------------------------------------
// Execution.

namespace {

struct CmActivation {
  const CmFunction* fn = nullptr;
  std::vector<IrValue> temps;
  std::vector<bool> written;
  BlockId stack_block = kNullBlock;
  std::vector<bool> active;
};

class CmInterp {
 public:
  CmInterp(const CmProgram& prog, std::uint64_t budget)
      : prog_(prog), budget_(budget) {}

  CmResult run() {
    Flow f = call_function(prog_.main_id(), {});
    CmResult r;
    switch (f.k) {
      case Flow::K::Return:
        r.kind = CmResult::Kind::Done;
        r.value = std::move(f.v);
        r.heap = std::move(heap_);
        break;
      case Flow::K::Fail:
        r.kind = CmResult::Kind::Failed;
        r.reason = std::move(f.reason);
        break;
      case Flow::K::Bottom:
        r.kind = CmResult::Kind::Bottom;
        break;
      case Flow::K::Normal:
      case Flow::K::Exit:
        r.kind = CmResult::Kind::Failed;
        r.reason = "control escaped main";
        break;
    }
    return r;
  }

 private:
  struct Flow {
    enum class K { Normal, Exit, Return, Fail, Bottom };
    K k = K::Normal;
    std::size_t exits = 0;
    IrValue v = Word{0};
    std::string reason;

    static Flow normal() { return Flow{}; }
    static Flow exit(std::size_t n) {
      Flow f;
      f.k = K::Exit;
      f.exits = n;
      return f;
    }
    static Flow ret(IrValue value) {
      Flow f;
      f.k = K::Return;
      f.v = std::move(value);
      return f;
    }
    static Flow fail(std::string reason) {
      Flow f;
      f.k = K::Fail;
      f.reason = std::move(reason);
      return f;
    }
    static Flow bottom() {
      Flow f;
      f.k = K::Bottom;
      return f;
    }
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

  Result<IrValue> eval(const CmExpr& e) {
    using R = Result<IrValue>;
    switch (e.kind) {
      case CmExprKind::ConstWord: return IrValue{e.wval};
      case CmExprKind::ConstNull: return IrValue{kNullPointer};
      case CmExprKind::ReadTemp: {
        const CmActivation& act = stack_.back();
        if (!act.written[e.index]) {
          return R::failure(
              errmsg::unbound_temp(act.fn->temp_names[e.index]));
        }
        return act.temps[e.index];
      }
      case CmExprKind::StackAddr:
        return IrValue{
            Pointer{stack_.back().stack_block, static_cast<Word>(e.index)}};
      case CmExprKind::Not: {
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
      case CmExprKind::Add: {
        auto a = need_word(*lhs, "add operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "add operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{word_add(*a, *b)};
      }
      case CmExprKind::Sub: {
        auto a = need_word(*lhs, "sub operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "sub operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{word_sub(*a, *b)};
      }
      case CmExprKind::Lt: {
        auto a = need_word(*lhs, "lt operand");
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, "lt operand");
        if (!b) return b.propagate<IrValue>();
        return IrValue{Word{*a < *b ? 1u : 0u}};
      }
      case CmExprKind::Eq:
      case CmExprKind::Neq: {
        if (lhs->index() != rhs->index()) {
          const char* op = e.kind == CmExprKind::Eq ? "eq" : "neq";
          return R::failure(errmsg::mixed_eq(op, ir_kind_name(*lhs),
                                             ir_kind_name(*rhs)));
        }
        const bool eq = *lhs == *rhs;
        const bool want = e.kind == CmExprKind::Eq ? eq : !eq;
        return IrValue{Word{want ? 1u : 0u}};
      }
      case CmExprKind::And:
      case CmExprKind::Or: {
        const char* what =
            e.kind == CmExprKind::And ? "and operand" : "or operand";
        auto a = need_word(*lhs, what);
        if (!a) return a.propagate<IrValue>();
        auto b = need_word(*rhs, what);
        if (!b) return b.propagate<IrValue>();
        const bool x = *a != 0;
        const bool y = *b != 0;
        const bool r = e.kind == CmExprKind::And ? (x && y) : (x || y);
        return IrValue{Word{r ? 1u : 0u}};
      }
      case CmExprKind::Shift: {
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

  bool find_outer(std::size_t store_id, Pointer* where) {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      const std::vector<std::size_t>& ids = it->fn->local_store_ids;
      for (std::size_t slot = ids.size(); slot-- > 0;) {
        if (it->active[slot] && ids[slot] == store_id) {
          *where = Pointer{it->stack_block, static_cast<Word>(slot)};
          return true;
        }
      }
    }
    return false;
  }

  Flow call_function(std::size_t fid, std::vector<IrValue> args) {
    const CmFunction& fn = prog_.functions[fid];
    CmActivation act;
    act.fn = &fn;
    act.temps.assign(fn.temp_names.size(), IrValue{Word{0}});
    act.written.assign(fn.temp_names.size(), false);
    for (std::size_t i = 0; i < args.size(); ++i) {
      act.temps[i] = std::move(args[i]);
      act.written[i] = true;
    }
    if (fn.stack_size() > 0) {
      auto p = heap_.alloc(static_cast<Word>(fn.stack_size()),
                           IrValue{Word{0}}, /*frame=*/true);
      if (!p) return Flow::fail(p.error());
      act.stack_block = p->block;
      act.active.assign(fn.stack_size(), false);
    }
    stack_.push_back(std::move(act));
    Flow f = exec(*fn.body);
    if (f.k == Flow::K::Return && stack_.back().stack_block != kNullBlock) {
      heap_.drop_frame(Pointer{stack_.back().stack_block, 0});
    }
    stack_.pop_back();
    if (f.k == Flow::K::Normal || f.k == Flow::K::Exit) {
      return Flow::fail("function '" + fn.name + "' ended without a return");
    }
    return f;
  }

  Flow exec(const CmStmt& s) {
    if (budget_ == 0) return Flow::bottom();
    --budget_;
    switch (s.kind) {
      case CmStmtKind::Seq: {
        for (const auto& child : s.children) {
          Flow f = exec(*child);
          if (f.k != Flow::K::Normal) return f;
        }
        return Flow::normal();
      }
      case CmStmtKind::AssignTemp: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        write_temp(s.index, std::move(*v));
        return Flow::normal();
      }
      case CmStmtKind::Load: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        auto p = need_ptr(*v, "read-ptr address");
        if (!p) return Flow::fail(p.error());
        auto cell = heap_.load(*p);
        if (!cell) return Flow::fail(cell.error());
        write_temp(s.index, std::move(*cell));
        return Flow::normal();
      }
      case CmStmtKind::Store: {
        auto pv = eval(*s.e1);
        if (!pv) return Flow::fail(pv.error());
        auto p = need_ptr(*pv, "write-ptr address");
        if (!p) return Flow::fail(p.error());
        auto v = eval(*s.e2);
        if (!v) return Flow::fail(v.error());
        auto ok = heap_.store(*p, *v);
        if (!ok) return Flow::fail(ok.error());
        return Flow::normal();
      }
      case CmStmtKind::If: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        auto w = need_word(*v, s.ctx.c_str());
        if (!w) return Flow::fail(w.error());
        return exec(*w != 0 ? *s.children[0] : *s.children[1]);
      }
      case CmStmtKind::Loop: {
        for (;;) {
          Flow f = exec(*s.children[0]);
          if (f.k == Flow::K::Normal) continue;
          if (f.k == Flow::K::Exit) {
            if (f.exits == 0) return Flow::normal();
            return Flow::exit(f.exits - 1);
          }
          return f;
        }
      }
      case CmStmtKind::Exit:
        return Flow::exit(s.index);
      case CmStmtKind::Scope: {
        const std::size_t ai = stack_.size() - 1;
        stack_[ai].active[s.index] = true;
        Flow f = exec(*s.children[0]);
        stack_[ai].active[s.index] = false;
        return f;
      }
      case CmStmtKind::OuterLoad: {
        Pointer where;
        if (!find_outer(s.target, &where)) {
          return Flow::fail(
              errmsg::unbound_store_var(prog_.store_names[s.target]));
        }
        auto v = heap_.load(where);
        if (!v) return Flow::fail(v.error());
        write_temp(s.index, std::move(*v));
        return Flow::normal();
      }
      case CmStmtKind::OuterStore: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        Pointer where;
        if (!find_outer(s.target, &where)) {
          return Flow::fail(
              errmsg::unbound_store_var(prog_.store_names[s.target]));
        }
        auto ok = heap_.store(where, *v);
        if (!ok) return Flow::fail(ok.error());
        return Flow::normal();
      }
      case CmStmtKind::Call: {
        const CmFunction& fn = prog_.functions[s.target];
        if (fn.n_params != s.args.size()) {
          return Flow::fail(errmsg::arity_mismatch(fn.name, fn.n_params,
                                                   s.args.size()));
        }
        std::vector<IrValue> argv;
        argv.reserve(s.args.size());
        for (const auto& a : s.args) {
          auto v = eval(*a);
          if (!v) return Flow::fail(v.error());
          argv.push_back(std::move(*v));
        }
        Flow f = call_function(s.target, std::move(argv));
        if (f.k != Flow::K::Return) return f;
        write_temp(s.index, std::move(f.v));
        return Flow::normal();
      }
      case CmStmtKind::Return: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        return Flow::ret(std::move(*v));
      }
      case CmStmtKind::Alloc: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        auto p = heap_.alloc(s.count, *v, /*frame=*/false);
        if (!p) return Flow::fail(p.error());
        write_temp(s.index, IrValue{*p});
        return Flow::normal();
      }
      case CmStmtKind::Free: {
        auto v = eval(*s.e1);
        if (!v) return Flow::fail(v.error());
        auto p = need_ptr(*v, "free target");
        if (!p) return Flow::fail(p.error());
        auto ok = heap_.free_block(*p);
        if (!ok) return Flow::fail(ok.error());
        return Flow::normal();
      }
      case CmStmtKind::Fail:
        return Flow::fail(errmsg::explicit_fail());
      case CmStmtKind::Diverge:
        return Flow::bottom();
    }
    return Flow::fail("malformed statement");
  }

  void write_temp(std::size_t t, IrValue v) {
    CmActivation& act = stack_.back();
    act.temps[t] = std::move(v);
    act.written[t] = true;
  }

  const CmProgram& prog_;
  IrHeap heap_;
  std::vector<CmActivation> stack_;
  std::uint64_t budget_;
};

}  // namespace

CmResult run_cminor(const CmProgram& p, std::uint64_t budget) {
  return CmInterp(p, budget).run();
}

// ---------------------------------------------------------------------------
// Listing.

namespace {

void dump_expr(std::ostream& os, const CmExpr& e) {
  switch (e.kind) {
    case CmExprKind::ConstWord: os << e.wval; return;
    case CmExprKind::ConstNull: os << "null"; return;
    case CmExprKind::ReadTemp: os << "t" << e.index; return;
    case CmExprKind::StackAddr: os << "&s" << e.index; return;
    case CmExprKind::Not:
      os << "(not ";
      dump_expr(os, *e.lhs);
      os << ")";
      return;
    default: break;
  }
  const char* name = "?";
  switch (e.kind) {
    case CmExprKind::Add: name = "add"; break;
    case CmExprKind::Sub: name = "sub"; break;
    case CmExprKind::Eq: name = "eq"; break;
    case CmExprKind::Neq: name = "neq"; break;
    case CmExprKind::And: name = "and"; break;
    case CmExprKind::Or: name = "or"; break;
    case CmExprKind::Lt: name = "lt"; break;
    case CmExprKind::Shift: name = "shift"; break;
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

void dump_stmt(std::ostream& os, const CmStmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case CmStmtKind::Seq:
      os << "seq\n";
      break;
    case CmStmtKind::AssignTemp:
      os << "assign t" << s.index << " ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Load:
      os << "load t" << s.index << " ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Store:
      os << "store ";
      dump_expr(os, *s.e1);
      os << " ";
      dump_expr(os, *s.e2);
      os << "\n";
      return;
    case CmStmtKind::If:
      os << "if ";
      dump_expr(os, *s.e1);
      os << "\n";
      break;
    case CmStmtKind::Loop:
      os << "loop\n";
      break;
    case CmStmtKind::Exit:
      os << "exit " << s.index << "\n";
      return;
    case CmStmtKind::Scope:
      os << "scope s" << s.index << "\n";
      break;
    case CmStmtKind::OuterLoad:
      os << "outerload t" << s.index << " v" << s.target << "\n";
      return;
    case CmStmtKind::OuterStore:
      os << "outerstore v" << s.target << " ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Call:
      os << "call t" << s.index << " f" << s.target;
      for (const auto& a : s.args) {
        os << " ";
        dump_expr(os, *a);
      }
      os << "\n";
      return;
    case CmStmtKind::Return:
      os << "return ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Alloc:
      os << "alloc t" << s.index << " " << s.count << " ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Free:
      os << "free ";
      dump_expr(os, *s.e1);
      os << "\n";
      return;
    case CmStmtKind::Fail:
      os << "fail\n";
      return;
    case CmStmtKind::Diverge:
      os << "diverge\n";
      return;
  }
  for (const auto& child : s.children) {
    dump_stmt(os, *child, depth + 1);
  }
}

}  // namespace

std::string dump_cminor(const CmProgram& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.store_names.size(); ++i) {
    os << "storevar v" << i << " " << p.store_names[i] << "\n";
  }
  for (std::size_t i = 0; i < p.functions.size(); ++i) {
    const CmFunction& fn = p.functions[i];
    os << "f" << i << " " << fn.name << " params=" << fn.n_params
       << " temps=" << fn.temp_names.size()
       << " stack_size=" << fn.stack_size() << "\n";
    for (std::size_t slot = 0; slot < fn.local_store_ids.size(); ++slot) {
      os << "  slot s" << slot << " v" << fn.local_store_ids[slot] << "\n";
    }
    os << "  body\n";
    dump_stmt(os, *fn.body, 2);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Backend agreement.

bool relate_backends(const IrResult& a, const IrResult& b, std::string* why) {
  auto complain = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (a.kind != b.kind) {
    auto name = [](IrResult::Kind k) {
      switch (k) {
        case IrResult::Kind::Bottom: return "bottom";
        case IrResult::Kind::Failed: return "failed";
        case IrResult::Kind::Done: return "done";
      }
      return "?";
    };
    return complain(std::string("outcome kinds differ: ") + name(a.kind) +
                    " vs " + name(b.kind));
  }
  if (a.kind == IrResult::Kind::Failed && a.reason != b.reason) {
    return complain("failure reasons differ: \"" + a.reason + "\" vs \"" +
                    b.reason + "\"");
  }
  if (a.kind == IrResult::Kind::Done) {
    if (!(a.value == b.value)) {
      return complain("results differ: " + to_string(a.value) + " vs " +
                      to_string(b.value));
    }
    if (!(a.heap == b.heap)) {
      return complain("final heaps differ");
    }
  }
  return true;
}

}  // namespace gallinac
