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

#ifndef GALLINAC_SEXPR_HPP_
#define GALLINAC_SEXPR_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "gallinac/result.hpp"

namespace gallinac {

// Minimal S-expression layer under the .gac surface syntax. Atoms are raw
// token strings; structure beyond that is the concern of the callers in
// gac.cpp and seplog.cpp. Line and column are 1-based and kept on every
// node so shape errors can point at the offending form.
struct Sexp {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 0;
  int col = 0;

  static Sexp make_atom(std::string a) {
    Sexp s;
    s.is_atom = true;
    s.atom = std::move(a);
    return s;
  }
  static Sexp make_list(std::vector<Sexp> xs) {
    Sexp s;
    s.items = std::move(xs);
    return s;
  }
};

// Parses a whole document into its top-level forms. Comments run from ';'
// to end of line. Errors carry "line L, col C: message".
Result<std::vector<Sexp>> parse_sexprs(std::string_view text);

// Canonical rendering: single spaces, no trailing whitespace.
std::string write_sexpr(const Sexp& s);

// Formats a position-tagged error message for a node.
std::string sexp_error(const Sexp& at, std::string_view message);

}  // namespace gallinac

#endif  // GALLINAC_SEXPR_HPP_
