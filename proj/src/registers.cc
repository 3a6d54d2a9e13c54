#include "linre/registers.hpp"

namespace linre {

const char* store_kind_name(StoreKind k) {
  switch (k) {
    case StoreKind::kArray: return "array";
    case StoreKind::kList: return "list";
    case StoreKind::kTree: return "tree";
  }
  return "?";
}

std::optional<StoreKind> parse_store_kind(std::string_view name) {
  if (name == "array") return StoreKind::kArray;
  if (name == "list") return StoreKind::kList;
  if (name == "tree") return StoreKind::kTree;
  return std::nullopt;
}

Pos ListStore::get(const Handle& h, size_t i) const {
  for (int32_t c = h; c >= 0; c = cells_[c].next) {
    if (cells_[c].slot == i) return cells_[c].value;
  }
  return kUndefined;
}

std::vector<Pos> ListStore::materialize(const Handle& h) const {
  std::vector<Pos> out(slots_, kUndefined);
  std::vector<bool> seen(slots_, false);
  size_t remaining = slots_;
  for (int32_t c = h; c >= 0 && remaining > 0; c = cells_[c].next) {
    uint32_t s = cells_[c].slot;
    if (!seen[s]) {
      seen[s] = true;
      out[s] = cells_[c].value;
      --remaining;
    }
  }
  return out;
}

TreeStore::TreeStore(size_t slots) : slots_(slots) {
  while ((size_t{1} << depth_) < slots_) ++depth_;
  // One shared all-undefined node per level.
  nodes_.push_back({-1, -1, kUndefined});
  for (int level = depth_ - 1; level >= 0; --level) {
    int32_t child = static_cast<int32_t>(nodes_.size() - 1);
    nodes_.push_back({child, child, kUndefined});
  }
  empty_root_ = static_cast<int32_t>(nodes_.size() - 1);
}

int32_t TreeStore::set_rec(int32_t node, int level, size_t i, Pos v) {
  if (level == depth_) {
    nodes_.push_back({-1, -1, v});
    return static_cast<int32_t>(nodes_.size() - 1);
  }
  bool right = (i >> (depth_ - 1 - level)) & 1;
  TNode copy = nodes_[node];
  int32_t child = set_rec(right ? copy.right : copy.left, level + 1, i, v);
  if (right) {
    copy.right = child;
  } else {
    copy.left = child;
  }
  nodes_.push_back(copy);
  return static_cast<int32_t>(nodes_.size() - 1);
}

void TreeStore::set(Handle& h, size_t i, Pos v) { h = set_rec(h, 0, i, v); }

Pos TreeStore::get(const Handle& h, size_t i) const {
  int32_t node = h;
  for (int level = 0; level < depth_; ++level) {
    bool right = (i >> (depth_ - 1 - level)) & 1;
    node = right ? nodes_[node].right : nodes_[node].left;
  }
  return nodes_[node].value;
}

void TreeStore::collect(int32_t node, int level, size_t base, std::vector<Pos>& out) const {
  if (base >= slots_) return;
  if (level == depth_) {
    out[base] = nodes_[node].value;
    return;
  }
  size_t half = size_t{1} << (depth_ - 1 - level);
  collect(nodes_[node].left, level + 1, base, out);
  collect(nodes_[node].right, level + 1, base + half, out);
}

std::vector<Pos> TreeStore::materialize(const Handle& h) const {
  std::vector<Pos> out(slots_, kUndefined);
  collect(h, 0, 0, out);
  return out;
}

}  // namespace linre
