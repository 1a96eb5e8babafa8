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

#ifndef GALLINAC_INTERP_COMMON_HPP_
#define GALLINAC_INTERP_COMMON_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "gallinac/values.hpp"

namespace gallinac::errmsg {

// Failure reasons shared by the denotational and small-step interpreters.
// Keeping them in one place makes outcome agreement exact, reasons
// included.

inline std::string unbound_temp(std::string_view name) {
  return "unbound temporary '" + std::string(name) + "'";
}

inline std::string unbound_store_var(std::string_view name) {
  return "unbound store variable '" + std::string(name) + "'";
}

inline std::string unknown_function(std::string_view name) {
  return "unknown function '" + std::string(name) + "'";
}

inline std::string arity_mismatch(std::string_view name, std::size_t expected,
                                  std::size_t got) {
  return "arity mismatch calling '" + std::string(name) + "': expected " +
         std::to_string(expected) + ", got " + std::to_string(got);
}

inline std::string mixed_eq(const char* op, ValueKind a, ValueKind b) {
  return std::string(op) + " on mixed kinds (" + kind_name(a) + " and " +
         kind_name(b) + ")";
}

inline std::string explicit_fail() { return "explicit fail"; }

// Backend interpreters collapse unit and bool into words, so their kind
// errors speak of words and pointers. Shared here so the two backends
// agree on reasons without sharing evaluation code.

inline std::string expected_kind(const char* what, const char* expected,
                                 const char* got) {
  return std::string(what) + ": expected " + expected + ", got " + got;
}

inline std::string mixed_eq(const char* op, const char* a, const char* b) {
  return std::string(op) + " on mixed kinds (" + a + " and " + b + ")";
}

}  // namespace gallinac::errmsg

#endif  // GALLINAC_INTERP_COMMON_HPP_
