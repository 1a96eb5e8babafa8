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

#include "gallinac/state.hpp"

namespace gallinac {

bool approx_leq(const Approx& a, const Approx& b) {
  if (a.is_bottom()) return true;
  return a == b;
}

std::string to_string(const Approx& a) {
  switch (a.kind()) {
    case Approx::Kind::Bottom: return "bottom";
    case Approx::Kind::Failed: return "failed " + a.reason();
    case Approx::Kind::Done: return "done " + to_string(a.value());
  }
  return "?";
}

bool heap_partition(const Heap& h, const Heap& h1, const Heap& h2) {
  if (h1.blocks() != h.blocks() || h2.blocks() != h.blocks()) return false;
  if (h1.cell_count() + h2.cell_count() != h.cell_count()) return false;
  for (const auto& [cell, value] : h1.cells()) {
    auto it = h.cells().find(cell);
    if (it == h.cells().end() || !(it->second == value)) return false;
    if (h2.cells().count(cell) != 0) return false;
  }
  for (const auto& [cell, value] : h2.cells()) {
    auto it = h.cells().find(cell);
    if (it == h.cells().end() || !(it->second == value)) return false;
  }
  return true;
}

Heap restrict_heap(const Heap& h, const std::map<Cell, Value>& cells) {
  return Heap::from_parts(cells, h.blocks());
}

}  // namespace gallinac
