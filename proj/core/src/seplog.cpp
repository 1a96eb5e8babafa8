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

#include "gallinac/seplog.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gallinac/denote.hpp"
#include "gallinac/gac.hpp"

namespace gallinac {

namespace {

AssertionPtr mk(Assertion a) {
  return std::make_shared<const Assertion>(std::move(a));
}

void set_diag(std::string* diag, const std::string& msg) {
  if (diag != nullptr && diag->empty()) *diag = msg;
}

}  // namespace

AssertionPtr a_emp() { return mk(Assertion{AssertionKind::Emp}); }

AssertionPtr a_points_to(ExprPtr addr, ExprPtr val) {
  Assertion a{AssertionKind::PointsTo};
  a.e1 = std::move(addr);
  a.e2 = std::move(val);
  return mk(std::move(a));
}

AssertionPtr a_star(AssertionPtr p, AssertionPtr q) {
  Assertion a{AssertionKind::Star};
  a.a1 = std::move(p);
  a.a2 = std::move(q);
  return mk(std::move(a));
}

AssertionPtr a_wand(AssertionPtr p, AssertionPtr q) {
  Assertion a{AssertionKind::Wand};
  a.a1 = std::move(p);
  a.a2 = std::move(q);
  return mk(std::move(a));
}

AssertionPtr a_pure(ExprPtr e) {
  Assertion a{AssertionKind::Pure};
  a.e1 = std::move(e);
  return mk(std::move(a));
}

AssertionPtr a_list_seg(ExprPtr from, ExprPtr to, std::vector<Value> values) {
  Assertion a{AssertionKind::ListSeg};
  a.e1 = std::move(from);
  a.e2 = std::move(to);
  a.values = std::move(values);
  return mk(std::move(a));
}

namespace {

State with_heap(const State& s, Heap h) {
  State out;
  out.store = s.store;
  out.env = s.env;
  out.heap = std::move(h);
  return out;
}

bool holds_impl(const Assertion& a, const State& s,
                std::span<const Heap> universe, std::string* diag,
                const SeplogLimits& limits);

bool list_seg_holds(const Assertion& a, const State& s, std::string* diag) {
  auto from = eval_expr(*a.e1, s);
  if (!from) {
    set_diag(diag, "listseg head: " + from.error());
    return false;
  }
  auto to = eval_expr(*a.e2, s);
  if (!to) {
    set_diag(diag, "listseg tail: " + to.error());
    return false;
  }
  if (from->kind() != ValueKind::Ptr || to->kind() != ValueKind::Ptr) {
    set_diag(diag, "listseg endpoints must be pointers");
    return false;
  }

  std::map<Cell, Value> expected;
  std::set<Pointer> visited;
  Pointer cur = from->as_ptr();
  const Pointer end = to->as_ptr();
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (cur.is_null()) {
      set_diag(diag, "listseg: reached null after " + std::to_string(i) +
                         " of " + std::to_string(a.values.size()) + " nodes");
      return false;
    }
    if (!visited.insert(cur).second) {
      set_diag(diag, "listseg: cycle at " + to_string(cur));
      return false;
    }
    const Cell value_cell{cur.block, cur.offset};
    const Cell next_cell{cur.block, cur.offset + 1};
    auto vit = s.heap.cells().find(value_cell);
    if (vit == s.heap.cells().end()) {
      set_diag(diag, "listseg: no value cell at " + to_string(cur));
      return false;
    }
    if (!(vit->second == a.values[i])) {
      set_diag(diag, "listseg: node " + std::to_string(i) + " holds " +
                         to_string(vit->second) + ", expected " +
                         to_string(a.values[i]));
      return false;
    }
    auto nit = s.heap.cells().find(next_cell);
    if (nit == s.heap.cells().end()) {
      set_diag(diag, "listseg: no next cell at " + to_string(cur));
      return false;
    }
    if (nit->second.kind() != ValueKind::Ptr) {
      set_diag(diag, "listseg: next cell at " + to_string(cur) +
                         " holds a non-pointer");
      return false;
    }
    if (!expected.emplace(value_cell, vit->second).second ||
        !expected.emplace(next_cell, nit->second).second) {
      set_diag(diag, "listseg: nodes overlap at " + to_string(cur));
      return false;
    }
    cur = nit->second.as_ptr();
  }
  if (!(cur == end)) {
    set_diag(diag, "listseg: segment ends at " + to_string(cur) +
                       ", expected " + to_string(end));
    return false;
  }
  if (s.heap.cells() != expected) {
    set_diag(diag, "listseg: heap is not exactly the segment (" +
                       std::to_string(s.heap.cell_count()) + " cells, " +
                       std::to_string(expected.size()) + " expected)");
    return false;
  }
  return true;
}

bool disjoint_cells(const Heap& a, const Heap& b) {
  for (const auto& [cell, v] : a.cells()) {
    if (b.cells().count(cell) != 0) return false;
  }
  return true;
}

Heap union_heaps(const Heap& a, const Heap& b) {
  std::map<Cell, Value> cells = a.cells();
  cells.insert(b.cells().begin(), b.cells().end());
  return Heap::from_parts(std::move(cells), a.blocks());
}

bool holds_impl(const Assertion& a, const State& s,
                std::span<const Heap> universe, std::string* diag,
                const SeplogLimits& limits) {
  switch (a.kind) {
    case AssertionKind::Emp: {
      if (s.heap.cell_count() != 0) {
        set_diag(diag, "emp: heap has " +
                           std::to_string(s.heap.cell_count()) + " cells");
        return false;
      }
      return true;
    }
    case AssertionKind::Pure: {
      auto v = eval_expr(*a.e1, s);
      if (!v) {
        set_diag(diag, "pure: " + v.error());
        return false;
      }
      if (v->kind() != ValueKind::Bool) {
        set_diag(diag, "pure: formula is not a bool");
        return false;
      }
      if (!v->as_bool()) set_diag(diag, "pure: formula is false");
      return v->as_bool();
    }
    case AssertionKind::PointsTo: {
      auto addr = eval_expr(*a.e1, s);
      if (!addr) {
        set_diag(diag, "pointsto address: " + addr.error());
        return false;
      }
      if (addr->kind() != ValueKind::Ptr || addr->as_ptr().is_null()) {
        set_diag(diag, "pointsto address is not a non-null pointer");
        return false;
      }
      auto val = eval_expr(*a.e2, s);
      if (!val) {
        set_diag(diag, "pointsto value: " + val.error());
        return false;
      }
      const Pointer p = addr->as_ptr();
      const Cell cell{p.block, p.offset};
      if (s.heap.cell_count() != 1) {
        set_diag(diag, "pointsto: heap is not a single cell (" +
                           std::to_string(s.heap.cell_count()) + " cells)");
        return false;
      }
      auto it = s.heap.cells().find(cell);
      if (it == s.heap.cells().end()) {
        set_diag(diag, "pointsto: heap cell is not at " + to_string(p));
        return false;
      }
      if (!(it->second == *val)) {
        set_diag(diag, "pointsto: cell holds " + to_string(it->second) +
                           ", expected " + to_string(*val));
        return false;
      }
      return true;
    }
    case AssertionKind::Star: {
      const std::size_t n = s.heap.cell_count();
      if (n > limits.max_cells) {
        throw SeplogLimitError(
            "star: partition enumeration over " + std::to_string(n) +
            " cells exceeds the " + std::to_string(limits.max_cells) +
            "-cell limit");
      }
      std::vector<std::pair<Cell, Value>> flat(s.heap.cells().begin(),
                                               s.heap.cells().end());
      const std::uint64_t subsets = std::uint64_t{1} << n;
      for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::map<Cell, Value> left, right;
        for (std::size_t i = 0; i < n; ++i) {
          if ((mask >> i) & 1) {
            left.insert(flat[i]);
          } else {
            right.insert(flat[i]);
          }
        }
        State s1 = with_heap(s, restrict_heap(s.heap, left));
        State s2 = with_heap(s, restrict_heap(s.heap, right));
        if (holds_impl(*a.a1, s1, universe, nullptr, limits) &&
            holds_impl(*a.a2, s2, universe, nullptr, limits)) {
          return true;
        }
      }
      set_diag(diag, "star: no partition satisfies both parts");
      return false;
    }
    case AssertionKind::Wand: {
      for (std::size_t i = 0; i < universe.size(); ++i) {
        const Heap& u = universe[i];
        if (u.blocks() != s.heap.blocks()) continue;
        if (!disjoint_cells(u, s.heap)) continue;
        State ext = with_heap(s, u);
        if (!holds_impl(*a.a1, ext, universe, nullptr, limits)) continue;
        State combined = with_heap(s, union_heaps(s.heap, u));
        if (!holds_impl(*a.a2, combined, universe, nullptr, limits)) {
          set_diag(diag, "wand: universe heap #" + std::to_string(i) +
                             " satisfies the left but violates the right");
          return false;
        }
      }
      return true;
    }
    case AssertionKind::ListSeg:
      return list_seg_holds(a, s, diag);
  }
  set_diag(diag, "malformed assertion");
  return false;
}

}  // namespace

bool holds(const Assertion& a, const State& s, std::span<const Heap> universe,
           std::string* diag, const SeplogLimits& limits) {
  return holds_impl(a, s, universe, diag, limits);
}

// ---------------------------------------------------------------------------
// Constructive state enumeration.

namespace {

struct Partial {
  ScopedBindings env;
  Heap heap;
  std::set<Cell> claimed;
};

void free_fvars(const Expr& e, const ScopedBindings& env,
                std::vector<std::string>& out) {
  if (e.kind == ExprKind::FVar) {
    if (!env.contains(e.name) &&
        std::find(out.begin(), out.end(), e.name) == out.end()) {
      out.push_back(e.name);
    }
    return;
  }
  if (e.lhs) free_fvars(*e.lhs, env, out);
  if (e.rhs) free_fvars(*e.rhs, env, out);
}

// Sizes for blocks materialized for bare-name addresses: a name shifted by
// a constant k anywhere in the assertion needs k+1 cells.
void scan_block_sizes(const Assertion& a, std::map<std::string, Word>& need) {
  auto scan_addr = [&](const Expr& e) {
    if (e.kind == ExprKind::FVar) {
      Word& n = need[e.name];
      n = std::max<Word>(n, 1);
    } else if (e.kind == ExprKind::PtrShift && e.lhs &&
               e.lhs->kind == ExprKind::FVar && e.rhs &&
               e.rhs->kind == ExprKind::Nat) {
      Word& n = need[e.lhs->name];
      n = std::max<Word>(n, e.rhs->nval + 1);
    }
  };
  switch (a.kind) {
    case AssertionKind::PointsTo:
      scan_addr(*a.e1);
      break;
    case AssertionKind::Star:
    case AssertionKind::Wand:
      scan_block_sizes(*a.a1, need);
      scan_block_sizes(*a.a2, need);
      break;
    default:
      break;
  }
}

State partial_to_state(const Partial& p) {
  std::map<Cell, Value> cells;
  for (const Cell& c : p.claimed) cells.emplace(c, p.heap.cells().at(c));
  State s;
  s.heap = Heap::from_parts(std::move(cells), p.heap.blocks());
  s.env = p.env;
  return s;
}

State eval_view(const Partial& p) {
  State s;
  s.heap = p.heap;
  s.env = p.env;
  return s;
}

class Satisfier {
 public:
  Satisfier(const Assertion& root, const SatisfyOptions& opt) : opt_(opt) {
    scan_block_sizes(root, need_);
  }

  Result<std::vector<State>> run(const Assertion& root) {
    std::vector<Partial> partials;
    partials.emplace_back();
    auto r = expand(root, std::move(partials));
    if (!r) return r.propagate<std::vector<State>>();
    std::vector<State> states;
    for (const Partial& p : *r) {
      State s = partial_to_state(p);
      if (std::find(states.begin(), states.end(), s) == states.end()) {
        states.push_back(std::move(s));
      }
    }
    return states;
  }

 private:
  using Partials = std::vector<Partial>;

  Result<Partials> expand(const Assertion& a, Partials in) {
    switch (a.kind) {
      case AssertionKind::Emp:
        return in;
      case AssertionKind::Star: {
        auto left = expand(*a.a1, std::move(in));
        if (!left) return left;
        return expand(*a.a2, std::move(*left));
      }
      case AssertionKind::Pure:
        return expand_pure(a, std::move(in));
      case AssertionKind::PointsTo:
        return expand_points_to(a, std::move(in));
      case AssertionKind::ListSeg:
        return expand_list_seg(a, std::move(in));
      case AssertionKind::Wand:
        return Result<Partials>::failure(
            "satisfy: wand assertions are not supported");
    }
    return Result<Partials>::failure("satisfy: malformed assertion");
  }

  // Every assignment of pool values to the given unbound names, applied to
  // the partial. Deterministic: pool order, rightmost name fastest.
  std::vector<Partial> pool_assignments(
      const Partial& p, const std::vector<std::string>& names) {
    std::vector<Partial> out = {p};
    for (const std::string& name : names) {
      std::vector<Partial> next;
      for (const Partial& q : out) {
        for (const Value& v : opt_.pool) {
          Partial ext = q;
          ext.env.bind(name, v);
          next.push_back(std::move(ext));
          if (next.size() > opt_.max_states * opt_.pool.size()) break;
        }
      }
      out = std::move(next);
    }
    return out;
  }

  void truncate(Partials& ps) {
    if (ps.size() > opt_.max_states) ps.resize(opt_.max_states);
  }

  Result<Partials> expand_pure(const Assertion& a, Partials in) {
    Partials out;
    for (const Partial& p : in) {
      std::vector<std::string> names;
      free_fvars(*a.e1, p.env, names);
      for (Partial& q : pool_assignments(p, names)) {
        auto v = eval_expr(*a.e1, eval_view(q));
        if (v && v->kind() == ValueKind::Bool && v->as_bool()) {
          out.push_back(std::move(q));
        }
      }
    }
    truncate(out);
    return out;
  }

  Result<Partials> expand_points_to(const Assertion& a, Partials in) {
    Partials out;
    const bool bare_name = a.e1->kind == ExprKind::FVar;
    const bool shifted_name = a.e1->kind == ExprKind::PtrShift && a.e1->lhs &&
                              a.e1->lhs->kind == ExprKind::FVar;
    const std::string base =
        bare_name ? a.e1->name : (shifted_name ? a.e1->lhs->name : "");

    for (const Partial& p : in) {
      Partial q = p;
      // A fresh address name materializes a block sized for every shift
      // the assertion applies to it.
      if (!base.empty() && !q.env.contains(base)) {
        const Word size = std::max<Word>(need_.count(base) ? need_[base] : 1,
                                         1);
        auto ptr = q.heap.alloc(size, Value::nat(0));
        q.env.bind(base, Value::pointer(*ptr));
      }
      std::vector<std::string> names;
      free_fvars(*a.e1, q.env, names);
      free_fvars(*a.e2, q.env, names);
      for (Partial& r : pool_assignments(q, names)) {
        auto addr = eval_expr(*a.e1, eval_view(r));
        if (!addr || addr->kind() != ValueKind::Ptr ||
            addr->as_ptr().is_null()) {
          continue;
        }
        auto val = eval_expr(*a.e2, eval_view(r));
        if (!val) continue;
        const Pointer ptr = addr->as_ptr();
        const Cell cell{ptr.block, ptr.offset};
        if (r.claimed.count(cell) != 0) continue;
        if (!r.heap.store(ptr, *val)) continue;
        r.claimed.insert(cell);
        out.push_back(std::move(r));
      }
    }
    truncate(out);
    return out;
  }

  Result<Partials> expand_list_seg(const Assertion& a, Partials in) {
    Partials out;
    for (const Partial& p : in) {
      std::vector<std::string> tail_names;
      free_fvars(*a.e2, p.env, tail_names);
      if (!tail_names.empty()) {
        return Result<Partials>::failure(
            "satisfy: listseg tail mentions unbound name '" + tail_names[0] +
            "'");
      }
      auto to = eval_expr(*a.e2, eval_view(p));
      if (!to || to->kind() != ValueKind::Ptr) continue;

      const bool fresh_head =
          a.e1->kind == ExprKind::FVar && !p.env.contains(a.e1->name);
      if (a.values.empty()) {
        Partial q = p;
        if (fresh_head) {
          q.env.bind(a.e1->name, *to);
        } else {
          auto from = eval_expr(*a.e1, eval_view(q));
          if (!from || !(*from == *to)) continue;
        }
        out.push_back(std::move(q));
        continue;
      }
      if (!fresh_head) {
        return Result<Partials>::failure(
            "satisfy: a non-empty listseg head must be a fresh name");
      }
      Partial q = p;
      std::vector<Pointer> nodes;
      nodes.reserve(a.values.size());
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        auto ptr = q.heap.alloc(2, Value::nat(0));
        nodes.push_back(*ptr);
      }
      bool ok = true;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Value next = i + 1 < nodes.size()
                               ? Value::pointer(nodes[i + 1])
                               : *to;
        const Cell vc{nodes[i].block, 0};
        const Cell nc{nodes[i].block, 1};
        if (q.claimed.count(vc) != 0 || q.claimed.count(nc) != 0) {
          ok = false;
          break;
        }
        q.heap.store(nodes[i], a.values[i]);
        q.heap.store(Pointer{nodes[i].block, 1}, next);
        q.claimed.insert(vc);
        q.claimed.insert(nc);
      }
      if (!ok) continue;
      q.env.bind(a.e1->name, Value::pointer(nodes[0]));
      out.push_back(std::move(q));
    }
    truncate(out);
    return out;
  }

  const SatisfyOptions& opt_;
  std::map<std::string, Word> need_;
};

}  // namespace

Result<std::vector<State>> satisfy(const Assertion& a,
                                   const SatisfyOptions& opt) {
  return Satisfier(a, opt).run(a);
}

// ---------------------------------------------------------------------------
// Modified variables and triple checking.

namespace {

void mod_vars_walk(const Cmd& c, const Program& prog,
                   std::set<std::string>& out,
                   std::set<std::string>& visiting) {
  if (c.kind == CmdKind::WriteVar) out.insert(c.name);
  if (c.kind == CmdKind::Call) {
    const FunctionDef* def = prog.find_function(c.name);
    if (def != nullptr && def->body && visiting.insert(c.name).second) {
      mod_vars_walk(*def->body, prog, out, visiting);
      visiting.erase(c.name);
    }
  }
  if (c.c1) mod_vars_walk(*c.c1, prog, out, visiting);
  if (c.c2) mod_vars_walk(*c.c2, prog, out, visiting);
}

}  // namespace

std::set<std::string> mod_vars(const Cmd& c, const Program& prog) {
  std::set<std::string> out;
  std::set<std::string> visiting;
  mod_vars_walk(c, prog, out, visiting);
  return out;
}

namespace {

// Shared classification step: judge a finished run against the
// value-indexed postcondition.
void classify(const Assertion& post, const std::string& post_name,
              std::span<const Heap> universe, const SeplogLimits& limits,
              const State& s0, const Approx& out, TripleReport& report) {
  report.states_checked += 1;
  switch (out.kind()) {
    case Approx::Kind::Bottom:
      report.bottoms += 1;
      return;
    case Approx::Kind::Failed:
      report.crashes.push_back(Counterexample{s0, out.reason()});
      return;
    case Approx::Kind::Done: {
      State final_state = out.state();
      final_state.env.bind(post_name, out.value());
      std::string diag;
      if (holds(post, final_state, universe, &diag, limits)) {
        report.passes += 1;
      } else {
        report.post_failures.push_back(Counterexample{s0, diag});
      }
      return;
    }
  }
}

}  // namespace

TripleReport check_triple(const Assertion& pre, const Cmd& c,
                          const std::string& post_name, const Assertion& post,
                          std::span<const State> candidates,
                          const Program& prog, std::uint64_t fuel,
                          std::span<const Heap> universe,
                          const SeplogLimits& limits) {
  TripleReport report;
  for (const State& s0 : candidates) {
    if (!holds(pre, s0, universe, nullptr, limits)) continue;
    Approx out = denote_cmd(c, prog, s0, fuel);
    classify(post, post_name, universe, limits, s0, out, report);
  }
  return report;
}

std::optional<std::set<Cell>> footprint(const Assertion& a, const State& s) {
  switch (a.kind) {
    case AssertionKind::Emp:
    case AssertionKind::Pure:
      return std::set<Cell>{};
    case AssertionKind::PointsTo: {
      auto addr = eval_expr(*a.e1, s);
      if (!addr || addr->kind() != ValueKind::Ptr ||
          addr->as_ptr().is_null()) {
        return std::nullopt;
      }
      const Pointer p = addr->as_ptr();
      return std::set<Cell>{Cell{p.block, p.offset}};
    }
    case AssertionKind::Star: {
      auto left = footprint(*a.a1, s);
      if (!left) return std::nullopt;
      auto right = footprint(*a.a2, s);
      if (!right) return std::nullopt;
      left->insert(right->begin(), right->end());
      return left;
    }
    case AssertionKind::Wand:
      return std::nullopt;
    case AssertionKind::ListSeg: {
      auto from = eval_expr(*a.e1, s);
      if (!from || from->kind() != ValueKind::Ptr) return std::nullopt;
      std::set<Cell> cells;
      Pointer cur = from->as_ptr();
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (cur.is_null()) return std::nullopt;
        const Cell nc{cur.block, cur.offset + 1};
        cells.insert(Cell{cur.block, cur.offset});
        cells.insert(nc);
        auto it = s.heap.cells().find(nc);
        if (it == s.heap.cells().end() ||
            it->second.kind() != ValueKind::Ptr) {
          return std::nullopt;
        }
        cur = it->second.as_ptr();
      }
      return cells;
    }
  }
  return std::nullopt;
}

Result<TripleReport> frame_check(const Assertion& pre, const Cmd& c,
                                 const std::string& post_name,
                                 const Assertion& post,
                                 const Assertion& frame,
                                 std::span<const State> candidates,
                                 const Program& prog, std::uint64_t fuel,
                                 std::span<const Heap> universe,
                                 const SeplogLimits& limits) {
  using R = Result<TripleReport>;
  // Assertions cannot read store variables, so the classic requirement
  // that the frame avoid mod_vars(c) holds by construction; mod_vars is
  // still consulted so misuse shows up if assertions ever grow that power.
  (void)mod_vars(c, prog);

  AssertionPtr framed_pre = a_star(mk(pre), mk(frame));
  AssertionPtr framed_post = a_star(mk(post), mk(frame));

  TripleReport report;
  for (const State& s0 : candidates) {
    if (!holds(*framed_pre, s0, universe, nullptr, limits)) continue;
    auto fp = footprint(frame, s0);
    if (!fp) {
      return R::failure(
          "frame_check: the frame has no syntactic footprint in this state");
    }
    HeapWriteLog log;
    Approx out = denote_cmd_logged(c, prog, s0, fuel, &log);
    for (const Cell& cell : *fp) {
      if (log.stored.count(cell) != 0 || log.freed.count(cell.block) != 0) {
        std::ostringstream os;
        os << "frame_check: the command touches the frame footprint at (b"
           << cell.block << "," << cell.offset << ")";
        return R::failure(os.str());
      }
    }
    classify(*framed_post, post_name, universe, limits, s0, out, report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Surface syntax.

namespace {

Result<Value> literal_value(const Sexp& s) {
  auto e = expr_from_sexp(s);
  if (!e) return e.propagate<Value>();
  switch ((*e)->kind) {
    case ExprKind::Unit: return Value::unit();
    case ExprKind::Bool: return Value::boolean((*e)->bval);
    case ExprKind::Nat: return Value::nat((*e)->nval);
    case ExprKind::Null: return Value::null();
    default:
      return Result<Value>::failure(
          sexp_error(s, "expected a literal value"));
  }
}

Sexp value_to_sexp(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Unit: return Sexp::make_atom("unit");
    case ValueKind::Bool: {
      std::vector<Sexp> items;
      items.push_back(Sexp::make_atom("bool"));
      items.push_back(Sexp::make_atom(v.as_bool() ? "true" : "false"));
      return Sexp::make_list(std::move(items));
    }
    case ValueKind::Nat: {
      std::vector<Sexp> items;
      items.push_back(Sexp::make_atom("nat"));
      items.push_back(Sexp::make_atom(std::to_string(v.as_nat())));
      return Sexp::make_list(std::move(items));
    }
    case ValueKind::Ptr:
      if (v.as_ptr().is_null()) return Sexp::make_atom("null");
      throw std::invalid_argument(
          "cannot serialize a non-null pointer value");
  }
  return Sexp::make_atom("?");
}

Sexp head_list(const char* head, std::vector<Sexp> rest) {
  std::vector<Sexp> items;
  items.reserve(rest.size() + 1);
  items.push_back(Sexp::make_atom(head));
  for (auto& r : rest) items.push_back(std::move(r));
  return Sexp::make_list(std::move(items));
}

}  // namespace

Sexp assertion_to_sexp(const Assertion& a) {
  switch (a.kind) {
    case AssertionKind::Emp:
      return Sexp::make_atom("emp");
    case AssertionKind::PointsTo:
      return head_list("pointsto",
                       {expr_to_sexp(*a.e1), expr_to_sexp(*a.e2)});
    case AssertionKind::Star:
      return head_list("star",
                       {assertion_to_sexp(*a.a1), assertion_to_sexp(*a.a2)});
    case AssertionKind::Wand:
      return head_list("wand",
                       {assertion_to_sexp(*a.a1), assertion_to_sexp(*a.a2)});
    case AssertionKind::Pure:
      return head_list("pure", {expr_to_sexp(*a.e1)});
    case AssertionKind::ListSeg: {
      std::vector<Sexp> values;
      for (const Value& v : a.values) values.push_back(value_to_sexp(v));
      return head_list("listseg",
                       {expr_to_sexp(*a.e1), expr_to_sexp(*a.e2),
                        Sexp::make_list(std::move(values))});
    }
  }
  return Sexp::make_atom("?");
}

Result<AssertionPtr> assertion_from_sexp(const Sexp& s) {
  using R = Result<AssertionPtr>;
  if (s.is_atom) {
    if (s.atom == "emp") return a_emp();
    return R::failure(
        sexp_error(s, "unknown assertion atom '" + s.atom + "'"));
  }
  if (s.items.empty() || !s.items[0].is_atom) {
    return R::failure(sexp_error(s, "expected an assertion head"));
  }
  const std::string& head = s.items[0].atom;
  auto arity = [&](std::size_t n) { return s.items.size() == n + 1; };
  if (head == "pointsto") {
    if (!arity(2)) return R::failure(sexp_error(s, "wrong arity for 'pointsto'"));
    auto e1 = expr_from_sexp(s.items[1]);
    if (!e1) return e1.propagate<AssertionPtr>();
    auto e2 = expr_from_sexp(s.items[2]);
    if (!e2) return e2.propagate<AssertionPtr>();
    return a_points_to(*e1, *e2);
  }
  if (head == "star" || head == "wand") {
    if (!arity(2)) {
      return R::failure(sexp_error(s, "wrong arity for '" + head + "'"));
    }
    auto a1 = assertion_from_sexp(s.items[1]);
    if (!a1) return a1;
    auto a2 = assertion_from_sexp(s.items[2]);
    if (!a2) return a2;
    return head == "star" ? a_star(*a1, *a2) : a_wand(*a1, *a2);
  }
  if (head == "pure") {
    if (!arity(1)) return R::failure(sexp_error(s, "wrong arity for 'pure'"));
    auto e = expr_from_sexp(s.items[1]);
    if (!e) return e.propagate<AssertionPtr>();
    return a_pure(*e);
  }
  if (head == "listseg") {
    if (!arity(3)) {
      return R::failure(sexp_error(s, "wrong arity for 'listseg'"));
    }
    auto e1 = expr_from_sexp(s.items[1]);
    if (!e1) return e1.propagate<AssertionPtr>();
    auto e2 = expr_from_sexp(s.items[2]);
    if (!e2) return e2.propagate<AssertionPtr>();
    if (s.items[3].is_atom) {
      return R::failure(sexp_error(s.items[3], "expected a value list"));
    }
    std::vector<Value> values;
    for (const Sexp& v : s.items[3].items) {
      auto val = literal_value(v);
      if (!val) return val.propagate<AssertionPtr>();
      values.push_back(*val);
    }
    return a_list_seg(*e1, *e2, std::move(values));
  }
  return R::failure(
      sexp_error(s.items[0], "unknown assertion head '" + head + "'"));
}

std::string serialize(const Assertion& a) {
  return write_sexpr(assertion_to_sexp(a));
}

Result<TripleFile> parse_triple_file(std::string_view text) {
  using R = Result<TripleFile>;
  auto forms = parse_sexprs(text);
  if (!forms) return forms.propagate<TripleFile>();
  TripleFile file;
  file.defs.main = c_ret(e_unit());
  std::set<std::string> seen;
  for (const Sexp& form : *forms) {
    if (form.is_atom || form.items.empty() || !form.items[0].is_atom) {
      return R::failure(sexp_error(form, "expected (def ...) or (triple ...)"));
    }
    const std::string& head = form.items[0].atom;
    if (head == "def") {
      auto def = def_from_sexp(form);
      if (!def) return def.propagate<TripleFile>();
      if (!seen.insert(def->first).second) {
        return R::failure(sexp_error(
            form, "duplicate function '" + def->first + "'"));
      }
      file.defs.functions.push_back(std::move(*def));
      continue;
    }
    if (head != "triple") {
      return R::failure(sexp_error(form.items[0],
                                   "expected 'def' or 'triple', got '" +
                                       head + "'"));
    }
    if (form.items.size() != 4) {
      return R::failure(sexp_error(form, "wrong arity for 'triple'"));
    }
    auto labeled = [&](std::size_t i, const char* label,
                       std::size_t n) -> const Sexp* {
      const Sexp& part = form.items[i];
      if (part.is_atom || part.items.size() != n + 1 ||
          !part.items[0].is_atom || part.items[0].atom != label) {
        return nullptr;
      }
      return &part;
    };
    const Sexp* pre = labeled(1, "pre", 1);
    if (pre == nullptr) {
      return R::failure(sexp_error(form.items[1], "expected (pre <assertion>)"));
    }
    const Sexp* cmd = labeled(2, "cmd", 1);
    if (cmd == nullptr) {
      return R::failure(sexp_error(form.items[2], "expected (cmd <command>)"));
    }
    const Sexp* post = labeled(3, "post", 2);
    if (post == nullptr) {
      return R::failure(
          sexp_error(form.items[3], "expected (post <name> <assertion>)"));
    }
    TripleSpec spec;
    auto a = assertion_from_sexp(pre->items[1]);
    if (!a) return a.propagate<TripleFile>();
    spec.pre = *a;
    auto c = cmd_from_sexp(cmd->items[1]);
    if (!c) return c.propagate<TripleFile>();
    spec.cmd = *c;
    if (!post->items[1].is_atom || !valid_identifier(post->items[1].atom)) {
      return R::failure(
          sexp_error(post->items[1], "expected a result name"));
    }
    spec.post_name = post->items[1].atom;
    auto b = assertion_from_sexp(post->items[2]);
    if (!b) return b.propagate<TripleFile>();
    spec.post = *b;
    file.triples.push_back(std::move(spec));
  }
  if (file.triples.empty()) {
    return R::failure("triple file contains no (triple ...) forms");
  }
  return file;
}

}  // namespace gallinac
