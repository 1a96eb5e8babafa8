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

#ifndef GALLINAC_STATE_HPP_
#define GALLINAC_STATE_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gallinac/memory.hpp"
#include "gallinac/values.hpp"

namespace gallinac {

// A stack of name/value bindings with shadowing. Lookup and assignment hit
// the innermost binding; unbinding pops back to a saved mark. Used both for
// the mutable store (var) and the write-once temporary environment (do),
// which differ only in how the interpreters drive them.
class ScopedBindings {
 public:
  using Mark = std::size_t;

  Mark mark() const { return entries_.size(); }

  void bind(std::string name, Value v) {
    entries_.emplace_back(std::move(name), std::move(v));
  }

  void unbind_to(Mark m) { entries_.resize(m); }

  // Innermost binding, or null if the name is unbound.
  const Value* lookup(std::string_view name) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  // Overwrites the innermost binding. Returns false if unbound.
  bool assign(std::string_view name, const Value& v) {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
      if (it->first == name) {
        it->second = v;
        return true;
      }
    }
    return false;
  }

  bool contains(std::string_view name) const { return lookup(name) != nullptr; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const std::vector<std::pair<std::string, Value>>& entries() const {
    return entries_;
  }

  friend bool operator==(const ScopedBindings&, const ScopedBindings&) =
      default;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

// Full program state: mutable store, block heap, and the temporary
// environment. The store is dynamically scoped across calls (callees see
// the caller's variables); the environment is per-function.
struct State {
  ScopedBindings store;
  Heap heap;
  ScopedBindings env;

  friend bool operator==(const State&, const State&) = default;
};

// Outcome of running a command under finite fuel. Bottom means the budget
// ran out before an answer; Failed and Done are final. The flat ordering
// puts Bottom strictly below everything and keeps distinct final outcomes
// incomparable.
class Approx {
 public:
  enum class Kind { Bottom, Failed, Done };

  static Approx bottom() { return Approx(Kind::Bottom, {}, {}, {}); }
  static Approx failed(std::string reason) {
    return Approx(Kind::Failed, std::move(reason), {}, {});
  }
  static Approx done(Value v, State s) {
    return Approx(Kind::Done, {}, std::move(v), std::move(s));
  }

  Kind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_failed() const { return kind_ == Kind::Failed; }
  bool is_done() const { return kind_ == Kind::Done; }

  const std::string& reason() const { return reason_; }
  const Value& value() const { return value_; }
  const State& state() const { return state_; }

  friend bool operator==(const Approx&, const Approx&) = default;

 private:
  Approx(Kind k, std::string reason, Value v, State s)
      : kind_(k),
        reason_(std::move(reason)),
        value_(std::move(v)),
        state_(std::move(s)) {}

  Kind kind_;
  std::string reason_;
  Value value_;
  State state_;
};

// The approximation order: Bottom below everything, final outcomes only
// below themselves.
bool approx_leq(const Approx& a, const Approx& b);

// One-line rendering used by the CLI and failure diagnostics:
// "done <value>", "failed <reason>", or "bottom".
std::string to_string(const Approx& a);

}  // namespace gallinac

#endif  // GALLINAC_STATE_HPP_
