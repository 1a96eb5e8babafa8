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

#ifndef GALLINAC_WELLFORMED_HPP_
#define GALLINAC_WELLFORMED_HPP_

#include <string>
#include <vector>

#include "gallinac/ast.hpp"

namespace gallinac {

struct Diagnostic {
  std::string code;     // stable machine-readable tag, e.g. "unbound-temp"
  std::string message;  // human-readable, names the function and the name

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Static checks the interpreters and the lowering passes rely on:
//   - temporaries are bound (per function; parameters seed the scope)
//   - store variables are in scope, following calls from main so that a
//     callee may use variables declared by its callers
//   - called functions exist and are applied at the right arity
//   - the call graph is acyclic (no recursion in the language)
//   - a var never shadows a variable that is still active in the same
//     function, which keeps cross-function variable lookup unambiguous
//
// Returns an empty vector exactly when the program is well formed.
// Diagnostics are deduplicated and reported in discovery order.
std::vector<Diagnostic> well_formed(const Program& p);

}  // namespace gallinac

#endif  // GALLINAC_WELLFORMED_HPP_
