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

#ifndef GALLINAC_MEMORY_HPP_
#define GALLINAC_MEMORY_HPP_

#include <map>
#include <string>

#include "gallinac/result.hpp"
#include "gallinac/values.hpp"

namespace gallinac {

// One addressable heap location.
struct Cell {
  BlockId block = kNullBlock;
  Word offset = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Per-block bookkeeping. Dead blocks stay in the table so that dangling
// pointers can be diagnosed precisely; their cells are erased on free.
struct BlockInfo {
  Word size = 0;
  bool alive = false;
  bool frame = false;  // true for backend stack frames, never set by source
  friend bool operator==(const BlockInfo&, const BlockInfo&) = default;
};

namespace detail {

std::string block_text(BlockId b);
std::string alloc_zero_error();
std::string null_error(const char* op);
std::string unknown_block_error(const char* op, BlockId b);
std::string dead_block_error(const char* op, BlockId b);
std::string bounds_error(const char* op, BlockId b, Word size, Word offset);
std::string interior_free_error(Word offset);
std::string frame_block_error(const char* op, BlockId b);
std::string unmapped_cell_error(const char* op, BlockId b, Word offset);

}  // namespace detail

// Block-structured memory with provenance pointers. Shared between the
// source heap (V = Value) and the backend memories (V = IrValue). Blocks
// get consecutive ids starting at 1; id 0 is the null block.
template <class V>
class BlockMemory {
 public:
  using CellMap = std::map<Cell, V>;
  using BlockMap = std::map<BlockId, BlockInfo>;

  // Allocates n fresh cells, all holding `init`. Zero-sized blocks are
  // rejected. Frame blocks are a backend notion; the flag exists so both
  // memories share one allocator.
  Result<Pointer> alloc(Word n, const V& init, bool frame = false) {
    if (n == 0) return Result<Pointer>::failure(detail::alloc_zero_error());
    const BlockId b = next_++;
    blocks_[b] = BlockInfo{n, true, frame};
    for (Word i = 0; i < n; ++i) cells_[Cell{b, i}] = init;
    return Pointer{b, 0};
  }

  // Frees the block p points at. Only offset-0 pointers to live non-frame
  // blocks are accepted; the backend frees its own frames via drop_frame.
  VoidResult free_block(Pointer p) { return free_impl(p, false); }

  // Backend-only: releases a stack frame block at function return.
  VoidResult drop_frame(Pointer p) { return free_impl(p, true); }

  Result<V> load(Pointer p) const {
    if (auto r = check_access("load", p); !r.ok()) {
      return r.template propagate<V>();
    }
    return cells_.at(Cell{p.block, p.offset});
  }

  VoidResult store(Pointer p, const V& v) {
    if (auto r = check_access("store", p); !r.ok()) return r;
    cells_[Cell{p.block, p.offset}] = v;
    return ok_void();
  }

  // Bounds-checked pointer arithmetic. Shifting to one past the end is
  // allowed (the resulting pointer cannot be dereferenced); shifting past
  // it is not. Null has no block to measure against and always fails.
  Result<Pointer> shift(Pointer p, Word k) const {
    if (p.is_null()) {
      return Result<Pointer>::failure(detail::null_error("pointer shift"));
    }
    auto it = blocks_.find(p.block);
    if (it == blocks_.end()) {
      return Result<Pointer>::failure(
          detail::unknown_block_error("pointer shift", p.block));
    }
    const Word size = it->second.size;
    if (k > size || p.offset > size - k) {
      return Result<Pointer>::failure(
          detail::bounds_error("pointer shift", p.block, size,
                               word_add(p.offset, k)));
    }
    return Pointer{p.block, p.offset + k};
  }

  const CellMap& cells() const { return cells_; }
  const BlockMap& blocks() const { return blocks_; }

  bool block_alive(BlockId b) const {
    auto it = blocks_.find(b);
    return it != blocks_.end() && it->second.alive;
  }

  std::size_t cell_count() const { return cells_.size(); }

  // Test hook: constructs a memory from explicit tables.
  static BlockMemory from_parts(CellMap cells, BlockMap blocks) {
    BlockMemory m;
    m.cells_ = std::move(cells);
    m.blocks_ = std::move(blocks);
    for (const auto& [b, info] : m.blocks_) {
      if (b >= m.next_) m.next_ = b + 1;
    }
    return m;
  }

  friend bool operator==(const BlockMemory&, const BlockMemory&) = default;

 private:
  VoidResult free_impl(Pointer p, bool expect_frame) {
    const char* op = "free";
    if (p.is_null()) return VoidResult::failure(detail::null_error(op));
    auto it = blocks_.find(p.block);
    if (it == blocks_.end()) {
      return VoidResult::failure(detail::unknown_block_error(op, p.block));
    }
    if (!it->second.alive) {
      return VoidResult::failure(detail::dead_block_error(op, p.block));
    }
    if (it->second.frame != expect_frame) {
      return VoidResult::failure(detail::frame_block_error(op, p.block));
    }
    if (p.offset != 0) {
      return VoidResult::failure(detail::interior_free_error(p.offset));
    }
    it->second.alive = false;
    cells_.erase(cells_.lower_bound(Cell{p.block, 0}),
                 cells_.lower_bound(Cell{p.block + 1, 0}));
    return ok_void();
  }

  VoidResult check_access(const char* op, Pointer p) const {
    if (p.is_null()) return VoidResult::failure(detail::null_error(op));
    auto it = blocks_.find(p.block);
    if (it == blocks_.end()) {
      return VoidResult::failure(detail::unknown_block_error(op, p.block));
    }
    if (!it->second.alive) {
      return VoidResult::failure(detail::dead_block_error(op, p.block));
    }
    if (p.offset >= it->second.size) {
      return VoidResult::failure(
          detail::bounds_error(op, p.block, it->second.size, p.offset));
    }
    // Heaps are partial functions: assertion-built states may omit cells
    // of a live block, and touching such a cell is a fault, not a crash.
    if (cells_.count(Cell{p.block, p.offset}) == 0) {
      return VoidResult::failure(
          detail::unmapped_cell_error(op, p.block, p.offset));
    }
    return ok_void();
  }

  CellMap cells_;
  BlockMap blocks_;
  BlockId next_ = 1;
};

// The source-level heap.
using Heap = BlockMemory<Value>;

// Heap-exact separation: h splits into h1 and h2 when their cell maps are
// disjoint, union to h's cells, and all three share h's block table.
bool heap_partition(const Heap& h, const Heap& h1, const Heap& h2);

// Builds the sub-heap of `h` containing exactly the given cells, keeping
// the full block table. The cells must exist in h.
Heap restrict_heap(const Heap& h, const std::map<Cell, Value>& cells);

}  // namespace gallinac

#endif  // GALLINAC_MEMORY_HPP_
