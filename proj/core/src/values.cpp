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

#include "gallinac/values.hpp"

#include <sstream>

#include "gallinac/memory.hpp"

namespace gallinac {

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Unit: return "unit";
    case ValueKind::Bool: return "bool";
    case ValueKind::Nat: return "nat";
    case ValueKind::Ptr: return "ptr";
  }
  return "?";
}

std::string to_string(const Pointer& p) {
  if (p.is_null()) return "null";
  std::ostringstream os;
  os << "ptr(b" << p.block << "," << p.offset << ")";
  return os.str();
}

std::string to_string(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Unit: return "unit";
    case ValueKind::Bool: return v.as_bool() ? "true" : "false";
    case ValueKind::Nat: return std::to_string(v.as_nat());
    case ValueKind::Ptr: return to_string(v.as_ptr());
  }
  return "?";
}

namespace {

std::string kind_mismatch(const char* what, const char* want, ValueKind got) {
  std::ostringstream os;
  os << what << ": expected " << want << ", got " << kind_name(got);
  return os.str();
}

}  // namespace

Result<bool> expect_bool(const Value& v, const char* what) {
  if (v.kind() != ValueKind::Bool) {
    return Result<bool>::failure(kind_mismatch(what, "bool", v.kind()));
  }
  return v.as_bool();
}

Result<Word> expect_nat(const Value& v, const char* what) {
  if (v.kind() != ValueKind::Nat) {
    return Result<Word>::failure(kind_mismatch(what, "nat", v.kind()));
  }
  return v.as_nat();
}

Result<Pointer> expect_ptr(const Value& v, const char* what) {
  if (v.kind() != ValueKind::Ptr) {
    return Result<Pointer>::failure(kind_mismatch(what, "ptr", v.kind()));
  }
  return v.as_ptr();
}

namespace detail {

std::string block_text(BlockId b) {
  return "b" + std::to_string(b);
}

std::string alloc_zero_error() { return "alloc of zero cells"; }

std::string null_error(const char* op) {
  return std::string(op) + " on null pointer";
}

std::string unknown_block_error(const char* op, BlockId b) {
  return std::string(op) + " on unknown block " + block_text(b);
}

std::string dead_block_error(const char* op, BlockId b) {
  return std::string(op) + " on freed block " + block_text(b);
}

std::string bounds_error(const char* op, BlockId b, Word size, Word offset) {
  std::ostringstream os;
  os << op << " out of bounds on " << block_text(b) << " (size " << size
     << ", offset " << offset << ")";
  return os.str();
}

std::string interior_free_error(Word offset) {
  std::ostringstream os;
  os << "free of interior pointer (offset " << offset << ")";
  return os.str();
}

std::string frame_block_error(const char* op, BlockId b) {
  return std::string(op) + " on frame block " + block_text(b);
}

std::string unmapped_cell_error(const char* op, BlockId b, Word offset) {
  std::ostringstream os;
  os << op << " on unmapped cell (" << block_text(b) << "," << offset << ")";
  return os.str();
}

}  // namespace detail

}  // namespace gallinac
