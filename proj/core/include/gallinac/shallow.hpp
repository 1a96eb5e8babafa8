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

#ifndef GALLINAC_SHALLOW_HPP_
#define GALLINAC_SHALLOW_HPP_

#include <source_location>
#include <span>
#include <string>
#include <vector>

#include "gallinac/ast.hpp"

namespace gallinac::shallow {

// Combinators for writing deep programs in host code. They produce the
// same nodes as the raw factories but reject misuse eagerly (invalid
// binder names, missing subtrees) with the host source position, so a bad
// builder call points at the line that made it rather than at whatever
// later consumed the tree. Throws std::invalid_argument.

using Loc = std::source_location;

ExprPtr fvar(std::string name, Loc loc = Loc::current());

CmdPtr ret(ExprPtr e, Loc loc = Loc::current());
CmdPtr bind(std::string name, CmdPtr c1, CmdPtr c2, Loc loc = Loc::current());
CmdPtr seq(CmdPtr c1, CmdPtr c2, Loc loc = Loc::current());
CmdPtr call(std::string fn, std::vector<ExprPtr> args,
            Loc loc = Loc::current());
CmdPtr if_(ExprPtr cond, CmdPtr then_cmd, CmdPtr else_cmd,
           Loc loc = Loc::current());
CmdPtr while_(CmdPtr cond, CmdPtr body, Loc loc = Loc::current());
CmdPtr var(std::string name, CmdPtr init, CmdPtr rest,
           Loc loc = Loc::current());
CmdPtr read_var(std::string name, Loc loc = Loc::current());
CmdPtr write_var(std::string name, ExprPtr e, Loc loc = Loc::current());
CmdPtr alloc(Word count, ExprPtr init, Loc loc = Loc::current());
CmdPtr read_ptr(ExprPtr p, Loc loc = Loc::current());
CmdPtr write_ptr(ExprPtr p, ExprPtr v, Loc loc = Loc::current());
CmdPtr free_(ExprPtr p, Loc loc = Loc::current());
CmdPtr fail();
CmdPtr loop();

// In-place linked list reversal. Nodes are two cells: the value at offset
// 0 and the next pointer at offset 1. The function `reverse` takes the
// list head, walks it with store variables `node` and `new_next`, and
// returns the new head; `deref_next` and `cond` are helper functions that
// read `node` from their caller's scope.
FunctionDef deref_next_def();
FunctionDef cond_def();
FunctionDef reverse_def();

// Assembles the three definitions around the given main command.
Program reverse_program(CmdPtr main);

// Main command that allocates the given list, links it, and calls reverse
// on its head. An empty span produces (call reverse (null)).
CmdPtr list_prologue_main(std::span<const Word> values);

}  // namespace gallinac::shallow

#endif  // GALLINAC_SHALLOW_HPP_
