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

#ifndef GALLINAC_RESULT_HPP_
#define GALLINAC_RESULT_HPP_

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace gallinac {

// Value-or-error carrier used by everything that can fail with a reason
// string: memory operations, expression evaluation, parsing, lowering.
// Error reasons are stable across interpreters so that the denotational
// and small-step semantics produce byte-identical failure outcomes.
template <class T>
class Result {
 public:
  Result(T value) : repr_(std::move(value)) {}  // NOLINT: implicit by design

  static Result failure(std::string reason) {
    return Result(Error{std::move(reason)});
  }

  bool ok() const { return repr_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& operator*() const {
    assert(ok());
    return std::get<0>(repr_);
  }
  T& operator*() {
    assert(ok());
    return std::get<0>(repr_);
  }
  const T* operator->() const { return &**this; }
  T* operator->() { return &**this; }

  const T& value() const { return **this; }
  T& value() { return **this; }

  const std::string& error() const {
    assert(!ok());
    return std::get<1>(repr_).reason;
  }

  template <class U>
  Result<U> propagate() const {
    assert(!ok());
    return Result<U>::failure(error());
  }

 private:
  struct Error {
    std::string reason;
  };
  explicit Result(Error e) : repr_(std::move(e)) {}
  std::variant<T, Error> repr_;
};

// Unit-valued result for operations performed only for effect.
using VoidResult = Result<std::monostate>;

inline VoidResult ok_void() { return VoidResult(std::monostate{}); }

}  // namespace gallinac

#endif  // GALLINAC_RESULT_HPP_
