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

#include "gallinac/denote.hpp"

#include <sstream>
#include <utility>

#include "gallinac/interp_common.hpp"

namespace gallinac {

Result<Value> eval_expr(const Expr& e, const State& s) {
  using R = Result<Value>;
  switch (e.kind) {
    case ExprKind::FVar: {
      const Value* v = s.env.lookup(e.name);
      if (v == nullptr) return R::failure(errmsg::unbound_temp(e.name));
      return *v;
    }
    case ExprKind::Unit: return Value::unit();
    case ExprKind::Bool: return Value::boolean(e.bval);
    case ExprKind::Nat: return Value::nat(e.nval);
    case ExprKind::Null: return Value::null();
    case ExprKind::Not: {
      auto v = eval_expr(*e.lhs, s);
      if (!v) return v;
      auto b = expect_bool(*v, "not operand");
      if (!b) return b.propagate<Value>();
      return Value::boolean(!*b);
    }
    default: break;
  }

  auto lhs = eval_expr(*e.lhs, s);
  if (!lhs) return lhs;
  auto rhs = eval_expr(*e.rhs, s);
  if (!rhs) return rhs;

  switch (e.kind) {
    case ExprKind::Add: {
      auto a = expect_nat(*lhs, "add operand");
      if (!a) return a.propagate<Value>();
      auto b = expect_nat(*rhs, "add operand");
      if (!b) return b.propagate<Value>();
      return Value::nat(word_add(*a, *b));
    }
    case ExprKind::Sub: {
      auto a = expect_nat(*lhs, "sub operand");
      if (!a) return a.propagate<Value>();
      auto b = expect_nat(*rhs, "sub operand");
      if (!b) return b.propagate<Value>();
      return Value::nat(word_sub(*a, *b));
    }
    case ExprKind::Lt: {
      auto a = expect_nat(*lhs, "lt operand");
      if (!a) return a.propagate<Value>();
      auto b = expect_nat(*rhs, "lt operand");
      if (!b) return b.propagate<Value>();
      return Value::boolean(*a < *b);
    }
    case ExprKind::Eq:
    case ExprKind::Neq: {
      if (lhs->kind() != rhs->kind()) {
        return R::failure(
            errmsg::mixed_eq(head_name(e.kind), lhs->kind(), rhs->kind()));
      }
      bool eq = *lhs == *rhs;
      return Value::boolean(e.kind == ExprKind::Eq ? eq : !eq);
    }
    case ExprKind::And:
    case ExprKind::Or: {
      const char* what =
          e.kind == ExprKind::And ? "and operand" : "or operand";
      auto a = expect_bool(*lhs, what);
      if (!a) return a.propagate<Value>();
      auto b = expect_bool(*rhs, what);
      if (!b) return b.propagate<Value>();
      return Value::boolean(e.kind == ExprKind::And ? (*a && *b)
                                                    : (*a || *b));
    }
    case ExprKind::PtrShift: {
      auto p = expect_ptr(*lhs, "ptr-shift base");
      if (!p) return p.propagate<Value>();
      auto k = expect_nat(*rhs, "ptr-shift amount");
      if (!k) return k.propagate<Value>();
      auto shifted = s.heap.shift(*p, *k);
      if (!shifted) return shifted.propagate<Value>();
      return Value::pointer(*shifted);
    }
    default: break;
  }
  return R::failure("malformed expression");
}

namespace {

// Recursive interpreter over the command structure. While is iterative so
// that only call nesting and syntactic depth use the host stack.
class Evaluator {
 public:
  Evaluator(const Program& prog, std::uint64_t fuel, HeapWriteLog* log)
      : prog_(prog), fuel_(fuel), log_(log) {}

  struct Out {
    enum class K { Val, Fail, Bot };
    K k;
    Value v;
    std::string reason;

    static Out val(Value value) { return Out{K::Val, std::move(value), {}}; }
    static Out fail(std::string r) { return Out{K::Fail, {}, std::move(r)}; }
    static Out bot() { return Out{K::Bot, {}, {}}; }
  };

  Approx eval(const Cmd& c, State s) {
    st_ = std::move(s);
    Out o = run(c);
    switch (o.k) {
      case Out::K::Val: return Approx::done(std::move(o.v), std::move(st_));
      case Out::K::Fail: return Approx::failed(std::move(o.reason));
      case Out::K::Bot: return Approx::bottom();
    }
    return Approx::bottom();
  }

 private:
  Out run(const Cmd& c) {
    switch (c.kind) {
      case CmdKind::Ret: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        return Out::val(*v);
      }
      case CmdKind::Bind: {
        Out o = run(*c.c1);
        if (o.k != Out::K::Val) return o;
        auto mark = st_.env.mark();
        st_.env.bind(c.name, std::move(o.v));
        Out rest = run(*c.c2);
        st_.env.unbind_to(mark);
        return rest;
      }
      case CmdKind::Seq: {
        Out o = run(*c.c1);
        if (o.k != Out::K::Val) return o;
        return run(*c.c2);
      }
      case CmdKind::Call: {
        const FunctionDef* def = prog_.find_function(c.name);
        if (def == nullptr) return Out::fail(errmsg::unknown_function(c.name));
        if (def->params.size() != c.args.size()) {
          return Out::fail(errmsg::arity_mismatch(c.name, def->params.size(),
                                                  c.args.size()));
        }
        std::vector<Value> argv;
        argv.reserve(c.args.size());
        for (const auto& a : c.args) {
          auto v = eval_expr(*a, st_);
          if (!v) return Out::fail(v.error());
          argv.push_back(*v);
        }
        ScopedBindings saved = std::move(st_.env);
        st_.env = ScopedBindings{};
        for (std::size_t i = 0; i < argv.size(); ++i) {
          st_.env.bind(def->params[i], std::move(argv[i]));
        }
        Out o = run(*def->body);
        st_.env = std::move(saved);
        return o;
      }
      case CmdKind::If: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        auto b = expect_bool(*v, "if condition");
        if (!b) return Out::fail(b.error());
        return run(*b ? *c.c1 : *c.c2);
      }
      case CmdKind::While: {
        for (;;) {
          if (fuel_ == 0) return Out::bot();
          --fuel_;
          Out cond = run(*c.c1);
          if (cond.k != Out::K::Val) return cond;
          auto b = expect_bool(cond.v, "while condition");
          if (!b) return Out::fail(b.error());
          if (!*b) return Out::val(Value::unit());
          Out body = run(*c.c2);
          if (body.k != Out::K::Val) return body;
        }
      }
      case CmdKind::Var: {
        Out o = run(*c.c1);
        if (o.k != Out::K::Val) return o;
        auto mark = st_.store.mark();
        st_.store.bind(c.name, std::move(o.v));
        Out rest = run(*c.c2);
        st_.store.unbind_to(mark);
        return rest;
      }
      case CmdKind::ReadVar: {
        const Value* v = st_.store.lookup(c.name);
        if (v == nullptr) return Out::fail(errmsg::unbound_store_var(c.name));
        return Out::val(*v);
      }
      case CmdKind::WriteVar: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        if (!st_.store.assign(c.name, *v)) {
          return Out::fail(errmsg::unbound_store_var(c.name));
        }
        return Out::val(Value::unit());
      }
      case CmdKind::Alloc: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        auto p = st_.heap.alloc(c.count, *v);
        if (!p) return Out::fail(p.error());
        if (log_ != nullptr) log_->allocated.insert(p->block);
        return Out::val(Value::pointer(*p));
      }
      case CmdKind::ReadPtr: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        auto p = expect_ptr(*v, "read-ptr address");
        if (!p) return Out::fail(p.error());
        auto cell = st_.heap.load(*p);
        if (!cell) return Out::fail(cell.error());
        return Out::val(*cell);
      }
      case CmdKind::WritePtr: {
        auto pv = eval_expr(*c.e1, st_);
        if (!pv) return Out::fail(pv.error());
        auto p = expect_ptr(*pv, "write-ptr address");
        if (!p) return Out::fail(p.error());
        auto v = eval_expr(*c.e2, st_);
        if (!v) return Out::fail(v.error());
        auto ok = st_.heap.store(*p, *v);
        if (!ok) return Out::fail(ok.error());
        if (log_ != nullptr) log_->stored.insert(Cell{p->block, p->offset});
        return Out::val(Value::unit());
      }
      case CmdKind::Free: {
        auto v = eval_expr(*c.e1, st_);
        if (!v) return Out::fail(v.error());
        auto p = expect_ptr(*v, "free target");
        if (!p) return Out::fail(p.error());
        auto ok = st_.heap.free_block(*p);
        if (!ok) return Out::fail(ok.error());
        if (log_ != nullptr) log_->freed.insert(p->block);
        return Out::val(Value::unit());
      }
      case CmdKind::Fail:
        return Out::fail(errmsg::explicit_fail());
      case CmdKind::Loop:
        return Out::bot();
    }
    return Out::fail("malformed command");
  }

  const Program& prog_;
  State st_;
  std::uint64_t fuel_;
  HeapWriteLog* log_;
};

}  // namespace

Approx denote_cmd(const Cmd& c, const Program& prog, State s,
                  std::uint64_t fuel) {
  return Evaluator(prog, fuel, nullptr).eval(c, std::move(s));
}

Approx denote_cmd_logged(const Cmd& c, const Program& prog, State s,
                         std::uint64_t fuel, HeapWriteLog* log) {
  return Evaluator(prog, fuel, log).eval(c, std::move(s));
}

Approx denote_program(const Program& prog, State s, std::uint64_t fuel) {
  return denote_cmd(*prog.main, prog, std::move(s), fuel);
}

std::vector<Approx> kleene_chain(const Cmd& c, const Program& prog,
                                 const State& s, std::uint64_t max_fuel) {
  std::vector<Approx> chain;
  chain.reserve(max_fuel + 1);
  for (std::uint64_t f = 0; f <= max_fuel; ++f) {
    chain.push_back(denote_cmd(c, prog, s, f));
  }
  return chain;
}

CmdPtr unfold_while(const CmdPtr& cond, const CmdPtr& body) {
  // The binder is not a valid source identifier, so it cannot capture.
  const char* t = "%while";
  return c_bind(t, cond,
                c_if(e_fvar(t), c_seq(body, c_while(cond, body)),
                     c_ret(e_unit())));
}

}  // namespace gallinac
