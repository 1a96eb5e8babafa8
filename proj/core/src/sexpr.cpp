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

#include "gallinac/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace gallinac {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_blank() {
    while (!done()) {
      char c = peek();
      if (c == ';') {
        while (!done() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        return;
      }
    }
  }
};

std::string at(int line, int col, std::string_view msg) {
  std::ostringstream os;
  os << "line " << line << ", col " << col << ": " << msg;
  return os.str();
}

bool atom_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isspace(u) == 0 && c != '(' && c != ')' && c != ';';
}

Result<Sexp> parse_form(Cursor& cur) {
  cur.skip_blank();
  if (cur.done()) {
    return Result<Sexp>::failure(at(cur.line, cur.col, "unexpected end of input"));
  }
  const int line = cur.line;
  const int col = cur.col;
  char c = cur.peek();
  if (c == ')') {
    return Result<Sexp>::failure(at(line, col, "unexpected ')'"));
  }
  if (c == '(') {
    cur.advance();
    std::vector<Sexp> items;
    for (;;) {
      cur.skip_blank();
      if (cur.done()) {
        return Result<Sexp>::failure(
            at(line, col, "unterminated list (missing ')')"));
      }
      if (cur.peek() == ')') {
        cur.advance();
        Sexp s = Sexp::make_list(std::move(items));
        s.line = line;
        s.col = col;
        return s;
      }
      auto item = parse_form(cur);
      if (!item) return item;
      items.push_back(std::move(*item));
    }
  }
  std::string tok;
  while (!cur.done() && atom_byte(cur.peek())) {
    tok.push_back(cur.peek());
    cur.advance();
  }
  if (tok.empty()) {
    return Result<Sexp>::failure(
        at(line, col, std::string("unexpected character '") + c + "'"));
  }
  Sexp s = Sexp::make_atom(std::move(tok));
  s.line = line;
  s.col = col;
  return s;
}

}  // namespace

Result<std::vector<Sexp>> parse_sexprs(std::string_view text) {
  Cursor cur{text};
  std::vector<Sexp> forms;
  for (;;) {
    cur.skip_blank();
    if (cur.done()) return forms;
    auto form = parse_form(cur);
    if (!form) return form.propagate<std::vector<Sexp>>();
    forms.push_back(std::move(*form));
  }
}

std::string write_sexpr(const Sexp& s) {
  if (s.is_atom) return s.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i != 0) out += ' ';
    out += write_sexpr(s.items[i]);
  }
  out += ')';
  return out;
}

std::string sexp_error(const Sexp& node, std::string_view message) {
  return at(node.line, node.col, message);
}

}  // namespace gallinac
