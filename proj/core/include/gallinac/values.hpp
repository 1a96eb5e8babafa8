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

#ifndef GALLINAC_VALUES_HPP_
#define GALLINAC_VALUES_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "gallinac/result.hpp"

namespace gallinac {

// Naturals are fixed-width with wraparound addition and truncated (monus)
// subtraction. The width is a compile-time configuration knob; 32 is the
// default used throughout the tests.
#ifndef GALLINAC_WORD_BITS
#define GALLINAC_WORD_BITS 32
#endif

inline constexpr unsigned kWordBits = GALLINAC_WORD_BITS;
static_assert(kWordBits >= 8 && kWordBits <= 64, "unsupported word width");

using Word = std::uint64_t;

inline constexpr Word kWordMask =
    kWordBits >= 64 ? ~Word{0} : ((Word{1} << kWordBits) - 1);

constexpr Word wrap_word(Word x) { return x & kWordMask; }

constexpr Word word_add(Word a, Word b) { return wrap_word(a + b); }

// Truncated subtraction: never wraps below zero.
constexpr Word word_sub(Word a, Word b) { return a >= b ? a - b : 0; }

// Heap blocks are identified by provenance, never by address arithmetic.
// Block id 0 is reserved for the null pointer and is never allocated.
using BlockId = std::uint64_t;
inline constexpr BlockId kNullBlock = 0;

struct Pointer {
  BlockId block = kNullBlock;
  Word offset = 0;

  bool is_null() const { return block == kNullBlock; }
  friend auto operator<=>(const Pointer&, const Pointer&) = default;
};

inline constexpr Pointer kNullPointer{};

enum class ValueKind { Unit, Bool, Nat, Ptr };

const char* kind_name(ValueKind k);

// Dynamically typed runtime value. Commands and expressions check kinds at
// use sites; a kind mismatch is a runtime failure, not undefined behavior.
class Value {
 public:
  Value() : repr_(std::monostate{}) {}

  static Value unit() { return Value(); }
  static Value boolean(bool b) { return Value(Repr(b)); }
  static Value nat(Word n) { return Value(Repr(Nat{wrap_word(n)})); }
  static Value pointer(Pointer p) { return Value(Repr(p)); }
  static Value null() { return pointer(kNullPointer); }

  ValueKind kind() const {
    switch (repr_.index()) {
      case 0: return ValueKind::Unit;
      case 1: return ValueKind::Bool;
      case 2: return ValueKind::Nat;
      default: return ValueKind::Ptr;
    }
  }

  bool as_bool() const { return std::get<1>(repr_); }
  Word as_nat() const { return std::get<2>(repr_).n; }
  Pointer as_ptr() const { return std::get<3>(repr_); }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  // Wrapper keeps bool and Word from colliding in the variant overload set.
  struct Nat {
    Word n;
    friend bool operator==(const Nat&, const Nat&) = default;
  };
  using Repr = std::variant<std::monostate, bool, Nat, Pointer>;
  explicit Value(Repr r) : repr_(r) {}
  Repr repr_;
};

// Renders a value the way the CLI prints it: unit, true, false, a decimal
// nat, null, or ptr(bN,K).
std::string to_string(const Value& v);
std::string to_string(const Pointer& p);

// Kind coercions shared by the interpreters so that both report identical
// failure reasons. `what` names the position being checked, e.g. "if
// condition" or "add operand".
Result<bool> expect_bool(const Value& v, const char* what);
Result<Word> expect_nat(const Value& v, const char* what);
Result<Pointer> expect_ptr(const Value& v, const char* what);

}  // namespace gallinac

#endif  // GALLINAC_VALUES_HPP_
