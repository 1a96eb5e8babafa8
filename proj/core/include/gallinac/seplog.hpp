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

#ifndef GALLINAC_SEPLOG_HPP_
#define GALLINAC_SEPLOG_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallinac/ast.hpp"
#include "gallinac/sexpr.hpp"
#include "gallinac/state.hpp"

namespace gallinac {

// Assertions over the concrete state model. Heap assertions are exact:
// PointsTo and ListSeg describe the whole (sub)heap they are evaluated on,
// and Star splits the heap into two disjoint parts. Pure places no heap
// constraint. Expressions inside assertions read the temporary environment
// and evaluate with the usual expression semantics.

struct Assertion;
using AssertionPtr = std::shared_ptr<const Assertion>;

enum class AssertionKind { Emp, PointsTo, Star, Wand, Pure, ListSeg };

struct Assertion {
  AssertionKind kind;
  ExprPtr e1;                 // PointsTo address, Pure formula, ListSeg head
  ExprPtr e2;                 // PointsTo value, ListSeg tail
  AssertionPtr a1;            // Star / Wand left
  AssertionPtr a2;            // Star / Wand right
  std::vector<Value> values;  // ListSeg node values, in list order
};

AssertionPtr a_emp();
AssertionPtr a_points_to(ExprPtr addr, ExprPtr val);
AssertionPtr a_star(AssertionPtr p, AssertionPtr q);
AssertionPtr a_wand(AssertionPtr p, AssertionPtr q);
AssertionPtr a_pure(ExprPtr e);
AssertionPtr a_list_seg(ExprPtr from, ExprPtr to, std::vector<Value> values);

struct SeplogLimits {
  // Star enumerates every 2-partition of the heap's cells, so the cell
  // count is capped; past it the checker refuses rather than silently
  // answering wrong.
  std::size_t max_cells = 16;
};

class SeplogLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decides whether the assertion holds in the given state. Wand quantifies
// over `universe`: every universe heap that shares s's block table and is
// cell-disjoint from s counts as a candidate extension. When `diag` is
// non-null and the result is false, a one-line reason is stored.
bool holds(const Assertion& a, const State& s,
           std::span<const Heap> universe = {}, std::string* diag = nullptr,
           const SeplogLimits& limits = {});

// Enumerates states satisfying the assertion, for use as triple inputs.
// Unbound names in PointsTo addresses and ListSeg heads become fresh
// blocks; other unbound names range over `pool`. Wand is not supported in
// preconditions. States come back in a deterministic order, at most
// max_states of them, with empty stores.
struct SatisfyOptions {
  std::vector<Value> pool = {Value::nat(0), Value::nat(1), Value::nat(2),
                             Value::boolean(true)};
  std::size_t max_states = 64;
};

Result<std::vector<State>> satisfy(const Assertion& a,
                                   const SatisfyOptions& opt = {});

// Store variables a command may write: write-var targets of the command
// and, transitively, of every function it can call.
std::set<std::string> mod_vars(const Cmd& c, const Program& prog);

// Triple checking. For each candidate state satisfying `pre`, runs the
// command and classifies the result. Bottom outcomes are inconclusive
// under partial correctness and are counted, not judged.
struct Counterexample {
  State initial;
  std::string detail;
};

struct TripleReport {
  std::size_t states_checked = 0;
  std::size_t passes = 0;
  std::size_t bottoms = 0;
  std::vector<Counterexample> crashes;        // command failed
  std::vector<Counterexample> post_failures;  // postcondition false

  bool ok() const { return crashes.empty() && post_failures.empty(); }
};

// The postcondition is value-indexed: it is evaluated with the command's
// result bound to `post_name` in the environment.
TripleReport check_triple(const Assertion& pre, const Cmd& c,
                          const std::string& post_name, const Assertion& post,
                          std::span<const State> candidates,
                          const Program& prog, std::uint64_t fuel,
                          std::span<const Heap> universe = {},
                          const SeplogLimits& limits = {});

// Frame rule check: verifies {pre * frame} c {post * frame} over the
// candidates, guarding soundness by refusing (as an error, before any
// classification) if the run writes or frees any cell of the frame's
// footprint, or if the command's modified variables are even mentionable
// by the frame. Wand frames have no syntactic footprint and are rejected.
Result<TripleReport> frame_check(const Assertion& pre, const Cmd& c,
                                 const std::string& post_name,
                                 const Assertion& post,
                                 const Assertion& frame,
                                 std::span<const State> candidates,
                                 const Program& prog, std::uint64_t fuel,
                                 std::span<const Heap> universe = {},
                                 const SeplogLimits& limits = {});

// Cells an assertion pins in a given state, or nullopt when the assertion
// contains a wand (whose footprint is not syntactic).
std::optional<std::set<Cell>> footprint(const Assertion& a, const State& s);

// Surface syntax. Assertions serialize like commands do; a triple file is
// (def ...)* followed by (triple (pre A) (cmd C) (post <name> A))+ forms.
Sexp assertion_to_sexp(const Assertion& a);
Result<AssertionPtr> assertion_from_sexp(const Sexp& s);
std::string serialize(const Assertion& a);

struct TripleSpec {
  AssertionPtr pre;
  CmdPtr cmd;
  std::string post_name;
  AssertionPtr post;
};

struct TripleFile {
  Program defs;  // functions from the file; main is a placeholder ret unit
  std::vector<TripleSpec> triples;
};

Result<TripleFile> parse_triple_file(std::string_view text);

}  // namespace gallinac

#endif  // GALLINAC_SEPLOG_HPP_
