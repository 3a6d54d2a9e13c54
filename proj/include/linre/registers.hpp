// Thread register stores. Each store owns the memory for one run; handles
// are cheap values that threads carry around.

#ifndef LINRE_REGISTERS_HPP_
#define LINRE_REGISTERS_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "linre/common.hpp"

namespace linre {

enum class StoreKind : uint8_t { kArray, kList, kTree };
const char* store_kind_name(StoreKind k);
std::optional<StoreKind> parse_store_kind(std::string_view name);

// Plain slot vector; fork copies every slot.
class ArrayStore {
 public:
  using Handle = std::vector<Pos>;

  explicit ArrayStore(size_t slots) : slots_(slots) {}
  Handle make() const { return Handle(slots_, kUndefined); }
  Handle fork(const Handle& h) {
    copies_ += h.size();
    return h;
  }
  void set(Handle& h, size_t i, Pos v) { h[i] = v; }
  Pos get(const Handle& h, size_t i) const { return h[i]; }
  std::vector<Pos> materialize(const Handle& h) const { return h; }
  uint64_t slot_copies() const { return copies_; }

 private:
  size_t slots_;
  uint64_t copies_ = 0;
};

// Immutable list of (slot, value) updates, newest first; fork shares it.
class ListStore {
 public:
  using Handle = int32_t;

  explicit ListStore(size_t slots) : slots_(slots) {}
  Handle make() const { return -1; }
  Handle fork(const Handle& h) const { return h; }
  void set(Handle& h, size_t i, Pos v) {
    cells_.push_back({h, static_cast<uint32_t>(i), v});
    h = static_cast<Handle>(cells_.size() - 1);
  }
  Pos get(const Handle& h, size_t i) const;
  std::vector<Pos> materialize(const Handle& h) const;
  uint64_t slot_copies() const { return 0; }

 private:
  struct Cell {
    int32_t next;
    uint32_t slot;
    Pos value;
  };
  size_t slots_;
  std::vector<Cell> cells_;
};

// Persistent complete binary tree; set copies one root-to-leaf path.
class TreeStore {
 public:
  using Handle = int32_t;

  explicit TreeStore(size_t slots);
  Handle make() const { return empty_root_; }
  Handle fork(const Handle& h) const { return h; }
  void set(Handle& h, size_t i, Pos v);
  Pos get(const Handle& h, size_t i) const;
  std::vector<Pos> materialize(const Handle& h) const;
  uint64_t slot_copies() const { return 0; }
  int depth() const { return depth_; }

 private:
  struct TNode {
    int32_t left;
    int32_t right;
    Pos value;
  };
  int32_t set_rec(int32_t node, int level, size_t i, Pos v);
  void collect(int32_t node, int level, size_t base, std::vector<Pos>& out) const;

  size_t slots_;
  int depth_ = 0;
  std::vector<TNode> nodes_;
  Handle empty_root_ = 0;
};

}  // namespace linre

#endif  // LINRE_REGISTERS_HPP_
