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

#ifndef GALLINAC_GAC_HPP_
#define GALLINAC_GAC_HPP_

#include <string>
#include <string_view>

#include "gallinac/ast.hpp"
#include "gallinac/sexpr.hpp"

namespace gallinac {

// The .gac concrete syntax. Commands and expressions are S-expressions with
// one head per constructor; nullary constructors are bare atoms. A program
// is (program (def <name> (<params>) <cmd>)* (main <cmd>)).
//
// Serialization is canonical (single spaces, one line) and round-trips:
// parse(serialize(x)) == x for every well-formed tree.

Sexp expr_to_sexp(const Expr& e);
Sexp cmd_to_sexp(const Cmd& c);
Sexp program_to_sexp(const Program& p);

Result<ExprPtr> expr_from_sexp(const Sexp& s);
Result<CmdPtr> cmd_from_sexp(const Sexp& s);
Result<Program> program_from_sexp(const Sexp& s);

// Parses one (def <name> (<params>) <cmd>) form; shared with triple files.
Result<std::pair<std::string, FunctionDef>> def_from_sexp(const Sexp& s);

std::string serialize(const Expr& e);
std::string serialize(const Cmd& c);
std::string serialize(const Program& p);

// Each parses a document containing exactly one form of the given shape.
Result<ExprPtr> parse_expr(std::string_view text);
Result<CmdPtr> parse_cmd(std::string_view text);
Result<Program> parse_program(std::string_view text);

}  // namespace gallinac

#endif  // GALLINAC_GAC_HPP_
