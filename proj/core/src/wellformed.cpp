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

#include "gallinac/wellformed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string_view>

namespace gallinac {

namespace {

class Checker {
 public:
  explicit Checker(const Program& p) : prog_(p) {}

  std::vector<Diagnostic> run() {
    check_signatures();
    check_call_graph();
    for (const auto& [name, def] : prog_.functions) {
      check_env_scope(name, def);
    }
    if (prog_.main) {
      std::vector<std::string_view> env;
      env_walk("main", *prog_.main, env);
    }
    check_store_scope();
    return std::move(diags_);
  }

 private:
  void report(std::string code, std::string message) {
    auto key = std::make_pair(code, message);
    if (!seen_.insert(key).second) return;
    diags_.push_back(Diagnostic{std::move(code), std::move(message)});
  }

  static std::string quoted(std::string_view s) {
    return "'" + std::string(s) + "'";
  }

  void check_signatures() {
    std::set<std::string_view> names;
    for (const auto& [name, def] : prog_.functions) {
      if (!valid_identifier(name)) {
        report("invalid-name", "invalid function name " + quoted(name));
      }
      if (!names.insert(name).second) {
        report("duplicate-function", "duplicate function " + quoted(name));
      }
      std::set<std::string_view> params;
      for (const auto& p : def.params) {
        if (!valid_identifier(p)) {
          report("invalid-name", "invalid parameter name " + quoted(p) +
                                     " in function " + quoted(name));
        }
        if (!params.insert(p).second) {
          report("duplicate-param", "duplicate parameter " + quoted(p) +
                                        " in function " + quoted(name));
        }
      }
      if (!def.body) {
        report("missing-body", "function " + quoted(name) + " has no body");
      }
    }
    if (!prog_.main) report("missing-main", "program has no main command");
  }

  // Collects callees of a command, checking the targets exist with the
  // right arity along the way.
  void collect_calls(std::string_view ctx, const Cmd& c,
                     std::set<std::string>* out) {
    if (c.kind == CmdKind::Call) {
      const FunctionDef* def = prog_.find_function(c.name);
      if (def == nullptr) {
        report("unknown-function", "call to unknown function " +
                                       quoted(c.name) + " in " +
                                       std::string(ctx));
      } else {
        if (def->params.size() != c.args.size()) {
          report("arity-mismatch",
                 "call to " + quoted(c.name) + " in " + std::string(ctx) +
                     " passes " + std::to_string(c.args.size()) +
                     " arguments, expected " +
                     std::to_string(def->params.size()));
        }
        if (out != nullptr) out->insert(c.name);
      }
    }
    if (c.c1) collect_calls(ctx, *c.c1, out);
    if (c.c2) collect_calls(ctx, *c.c2, out);
  }

  void check_call_graph() {
    std::map<std::string_view, std::set<std::string>> edges;
    for (const auto& [name, def] : prog_.functions) {
      if (!def.body) continue;
      collect_calls(name, *def.body, &edges[name]);
    }
    if (prog_.main) collect_calls("main", *prog_.main, nullptr);

    // Three-color depth-first search; a back edge means recursion.
    std::map<std::string_view, int> color;  // 0 white, 1 gray, 2 black
    auto visit = [&](auto&& self, std::string_view f) -> void {
      color[f] = 1;
      for (const auto& g : edges[f]) {
        int c = color[g];
        if (c == 1) {
          report("recursion",
                 "function " + quoted(g) + " participates in a call cycle");
          cyclic_ = true;
        } else if (c == 0) {
          self(self, g);
        }
      }
      color[f] = 2;
    };
    for (const auto& [name, def] : prog_.functions) {
      if (color[name] == 0) visit(visit, name);
    }
  }

  void check_env_scope(std::string_view fname, const FunctionDef& def) {
    if (!def.body) return;
    std::vector<std::string_view> env(def.params.begin(), def.params.end());
    env_walk(fname, *def.body, env);
  }

  void expr_env(std::string_view ctx, const Expr& e,
                const std::vector<std::string_view>& env) {
    if (e.kind == ExprKind::FVar) {
      if (std::find(env.begin(), env.end(), e.name) == env.end()) {
        report("unbound-temp", "unbound temporary " + quoted(e.name) + " in " +
                                   std::string(ctx));
      }
      return;
    }
    if (e.lhs) expr_env(ctx, *e.lhs, env);
    if (e.rhs) expr_env(ctx, *e.rhs, env);
  }

  void env_walk(std::string_view ctx, const Cmd& c,
                std::vector<std::string_view>& env) {
    if (c.e1) expr_env(ctx, *c.e1, env);
    if (c.e2) expr_env(ctx, *c.e2, env);
    for (const auto& a : c.args) expr_env(ctx, *a, env);
    switch (c.kind) {
      case CmdKind::Bind: {
        if (!valid_identifier(c.name)) {
          report("invalid-name", "invalid temporary name " + quoted(c.name) +
                                     " in " + std::string(ctx));
        }
        if (c.c1) env_walk(ctx, *c.c1, env);
        env.push_back(c.name);
        if (c.c2) env_walk(ctx, *c.c2, env);
        env.pop_back();
        return;
      }
      case CmdKind::Var:
        if (!valid_identifier(c.name)) {
          report("invalid-name", "invalid variable name " + quoted(c.name) +
                                     " in " + std::string(ctx));
        }
        break;
      default:
        break;
    }
    if (c.c1) env_walk(ctx, *c.c1, env);
    if (c.c2) env_walk(ctx, *c.c2, env);
  }

  // Store scoping. Calls are followed from main so the scope a callee sees
  // includes every variable active in the call chain. Unreachable
  // functions are checked against an empty outer scope.
  void check_store_scope() {
    if (!prog_.main) return;
    std::vector<std::string_view> scope;
    std::set<std::string_view> own;
    std::set<std::string_view> callstack;
    std::set<std::string_view> reached;
    store_walk("main", *prog_.main, scope, own, callstack, &reached);
    for (const auto& [name, def] : prog_.functions) {
      if (reached.count(name) != 0 || !def.body) continue;
      std::vector<std::string_view> empty_scope;
      std::set<std::string_view> empty_own;
      store_walk(name, *def.body, empty_scope, empty_own, callstack, &reached);
    }
  }

  void store_walk(std::string_view ctx, const Cmd& c,
                  std::vector<std::string_view>& scope,
                  std::set<std::string_view>& own,
                  std::set<std::string_view>& callstack,
                  std::set<std::string_view>* reached) {
    switch (c.kind) {
      case CmdKind::Var: {
        if (c.c1) store_walk(ctx, *c.c1, scope, own, callstack, reached);
        if (own.count(c.name) != 0) {
          report("store-var-shadowing",
                 "variable " + quoted(c.name) +
                     " shadows an active variable of the same function in " +
                     std::string(ctx));
        }
        bool inserted = own.insert(c.name).second;
        scope.push_back(c.name);
        if (c.c2) store_walk(ctx, *c.c2, scope, own, callstack, reached);
        scope.pop_back();
        if (inserted) own.erase(c.name);
        return;
      }
      case CmdKind::ReadVar:
      case CmdKind::WriteVar: {
        if (std::find(scope.begin(), scope.end(), c.name) == scope.end()) {
          report("unbound-store-var", "store variable " + quoted(c.name) +
                                          " is not in scope in " +
                                          std::string(ctx));
        }
        break;
      }
      case CmdKind::Call: {
        const FunctionDef* def = prog_.find_function(c.name);
        if (def != nullptr && def->body && !cyclic_ &&
            callstack.count(c.name) == 0) {
          if (reached != nullptr) reached->insert(c.name);
          callstack.insert(c.name);
          std::set<std::string_view> callee_own;
          store_walk(c.name, *def->body, scope, callee_own, callstack,
                     reached);
          callstack.erase(c.name);
        }
        break;
      }
      default:
        break;
    }
    if (c.c1) store_walk(ctx, *c.c1, scope, own, callstack, reached);
    if (c.c2) store_walk(ctx, *c.c2, scope, own, callstack, reached);
  }

  const Program& prog_;
  std::vector<Diagnostic> diags_;
  std::set<std::pair<std::string, std::string>> seen_;
  bool cyclic_ = false;
};

}  // namespace

std::vector<Diagnostic> well_formed(const Program& p) {
  return Checker(p).run();
}

}  // namespace gallinac
