#include "linre/ast.hpp"

#include <algorithm>
#include <climits>
#include <string>

#include "linre/utf8.hpp"

namespace linre {

const char* nullability_name(Nullability n) {
  switch (n) {
    case Nullability::kNN: return "NN";
    case Nullability::kCDN: return "CDN";
    case Nullability::kCIN: return "CIN";
  }
  return "?";
}

bool CharClass::contains(char32_t c) const {
  auto it = std::upper_bound(ranges.begin(), ranges.end(), c,
                             [](char32_t v, const CharRange& r) { return v < r.lo; });
  bool in = it != ranges.begin() && c <= std::prev(it)->hi;
  return in != negated;
}

void CharClass::add(char32_t lo, char32_t hi) { ranges.push_back({lo, hi}); }

void CharClass::add_all(const std::vector<CharRange>& other) {
  ranges.insert(ranges.end(), other.begin(), other.end());
}

void CharClass::normalize() {
  std::sort(ranges.begin(), ranges.end(),
            [](const CharRange& a, const CharRange& b) { return a.lo < b.lo; });
  std::vector<CharRange> merged;
  for (const CharRange& r : ranges) {
    if (!merged.empty() && r.lo <= merged.back().hi + 1) {
      merged.back().hi = std::max(merged.back().hi, r.hi);
    } else {
      merged.push_back(r);
    }
  }
  ranges = std::move(merged);
}

std::vector<CharRange> complement_ranges(const std::vector<CharRange>& ranges) {
  std::vector<CharRange> out;
  char32_t next = 0;
  for (const CharRange& r : ranges) {
    if (r.lo > next) out.push_back({next, r.lo - 1});
    next = r.hi + 1;
  }
  if (next <= 0x10FFFF) out.push_back({next, 0x10FFFF});
  return out;
}

bool is_line_terminator(char32_t c) {
  return c == '\n' || c == '\r' || c == 0x2028 || c == 0x2029;
}

bool is_word_char(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

NodeId Regex::add(const Node& n) {
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

int32_t Regex::add_class(CharClass c) {
  classes_.push_back(std::move(c));
  return static_cast<int32_t>(classes_.size() - 1);
}

std::vector<NodeId> Regex::children(NodeId id) const {
  const Node& n = nodes_[id];
  std::vector<NodeId> out;
  if (n.lhs != kNoNode) out.push_back(n.lhs);
  if (n.rhs != kNoNode) out.push_back(n.rhs);
  return out;
}

size_t Regex::reachable_count() const {
  if (root_ == kNoNode) return 0;
  size_t count = 0;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    ++count;
    for (NodeId c : children(id)) stack.push_back(c);
  }
  return count;
}

namespace {

struct Finalizer {
  Regex& re;
  bool assign;
  int groups = 0, quants = 0, looks = 0;
  std::vector<Nullability>& null;
  std::vector<NodeId>& parent;
  std::vector<int>& first;
  std::vector<int>& end;

  void visit(NodeId id, NodeId par) {
    Node& n = re.mutable_node(id);
    parent[id] = par;
    int lo = INT_MAX, hi = INT_MIN;
    switch (n.kind) {
      case NodeKind::kGroup:
        if (assign) n.id = ++groups;
        groups = std::max(groups, n.id);
        lo = hi = n.id;
        break;
      case NodeKind::kQuantified:
      case NodeKind::kCountedRep:
        if (assign) n.id = ++quants;
        quants = std::max(quants, n.id);
        break;
      case NodeKind::kLookaround:
        if (assign) n.id = ++looks;
        looks = std::max(looks, n.id);
        break;
      default:
        break;
    }
    NodeId l = n.lhs, r = n.rhs;
    if (l != kNoNode) {
      visit(l, id);
      if (end[l] > first[l]) {
        lo = std::min(lo, first[l]);
        hi = std::max(hi, end[l] - 1);
      }
    }
    if (r != kNoNode) {
      visit(r, id);
      if (end[r] > first[r]) {
        lo = std::min(lo, first[r]);
        hi = std::max(hi, end[r] - 1);
      }
    }
    if (lo == INT_MAX) {
      first[id] = end[id] = 0;
    } else {
      first[id] = lo;
      end[id] = hi + 1;
    }
    const Node& m = re.node(id);
    switch (m.kind) {
      case NodeKind::kChar:
      case NodeKind::kAnyChar:
      case NodeKind::kClass:
        null[id] = Nullability::kNN;
        break;
      case NodeKind::kEpsilon:
        null[id] = Nullability::kCIN;
        break;
      case NodeKind::kConcat:
        null[id] = std::max(null[m.lhs], null[m.rhs]);
        break;
      case NodeKind::kUnion:
        null[id] = std::min(null[m.lhs], null[m.rhs]);
        break;
      case NodeKind::kQuantified:
        null[id] = m.quant == QuantKind::kStar ? Nullability::kCIN : null[m.lhs];
        break;
      case NodeKind::kCountedRep:
        null[id] = m.min == 0 ? Nullability::kCIN : null[m.lhs];
        break;
      case NodeKind::kGroup:
      case NodeKind::kNonCapGroup:
        null[id] = null[m.lhs];
        break;
      case NodeKind::kLookaround:
      case NodeKind::kAnchor:
        null[id] = Nullability::kCDN;
        break;
    }
  }
};

}  // namespace

void Regex::finalize(bool assign_ids) {
  size_t n = nodes_.size();
  nullability_.assign(n, Nullability::kNN);
  parent_.assign(n, kNoNode);
  first_group_.assign(n, 0);
  end_group_.assign(n, 0);
  Finalizer f{*this, assign_ids, 0, 0, 0, nullability_, parent_, first_group_, end_group_};
  if (root_ != kNoNode) f.visit(root_, kNoNode);
  num_groups_ = f.groups;
  num_quants_ = f.quants;
  num_looks_ = f.looks;
  look_nodes_.assign(num_looks_ + 1, kNoNode);
  quant_nodes_.assign(num_quants_ + 1, kNoNode);
  group_nodes_.assign(num_groups_ + 1, kNoNode);
  if (root_ == kNoNode) return;
  // Preorder walk so the first occurrence of each id wins.
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const Node& nd = nodes_[id];
    if (nd.kind == NodeKind::kGroup && group_nodes_[nd.id] == kNoNode) group_nodes_[nd.id] = id;
    if ((nd.kind == NodeKind::kQuantified || nd.kind == NodeKind::kCountedRep) &&
        quant_nodes_[nd.id] == kNoNode) {
      quant_nodes_[nd.id] = id;
    }
    if (nd.kind == NodeKind::kLookaround && look_nodes_[nd.id] == kNoNode) look_nodes_[nd.id] = id;
    if (nd.rhs != kNoNode) stack.push_back(nd.rhs);
    if (nd.lhs != kNoNode) stack.push_back(nd.lhs);
  }
}

bool structurally_equal(const Regex& ra, NodeId a, const Regex& rb, NodeId b) {
  if ((a == kNoNode) != (b == kNoNode)) return false;
  if (a == kNoNode) return true;
  const Node& x = ra.node(a);
  const Node& y = rb.node(b);
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::kChar:
      if (x.ch != y.ch) return false;
      break;
    case NodeKind::kClass:
      if (!(ra.char_class(x.cls) == rb.char_class(y.cls))) return false;
      break;
    case NodeKind::kQuantified:
      if (x.quant != y.quant || x.greedy != y.greedy || x.id != y.id) return false;
      break;
    case NodeKind::kCountedRep:
      if (x.min != y.min || x.max != y.max || x.greedy != y.greedy || x.id != y.id) return false;
      break;
    case NodeKind::kGroup:
      if (x.id != y.id) return false;
      break;
    case NodeKind::kLookaround:
      if (x.look != y.look || x.id != y.id) return false;
      break;
    case NodeKind::kAnchor:
      if (x.anchor != y.anchor) return false;
      break;
    default:
      break;
  }
  return structurally_equal(ra, x.lhs, rb, y.lhs) && structurally_equal(ra, x.rhs, rb, y.rhs);
}

std::string dump_tree(const Regex& re, NodeId id) {
  if (id == kNoNode) return "-";
  const Node& n = re.node(id);
  auto un = [&](const std::string& name) { return name + "(" + dump_tree(re, n.lhs) + ")"; };
  switch (n.kind) {
    case NodeKind::kChar: {
      std::string s = "Char ";
      utf8_append(s, n.ch);
      return s;
    }
    case NodeKind::kAnyChar: return "AnyChar";
    case NodeKind::kClass: return "Class#" + std::to_string(n.cls);
    case NodeKind::kEpsilon: return "Epsilon";
    case NodeKind::kConcat: return "Concat(" + dump_tree(re, n.lhs) + ", " + dump_tree(re, n.rhs) + ")";
    case NodeKind::kUnion: return "Union(" + dump_tree(re, n.lhs) + ", " + dump_tree(re, n.rhs) + ")";
    case NodeKind::kQuantified:
      return un(std::string(n.quant == QuantKind::kStar ? "Star" : "Plus") + (n.greedy ? "" : "Lazy") +
                "#" + std::to_string(n.id));
    case NodeKind::kCountedRep: {
      std::string s = "Rep#" + std::to_string(n.id) + "{" + std::to_string(n.min) + "," +
                      (n.max == kUnbounded ? std::string() : std::to_string(n.max)) + "}" +
                      (n.greedy ? "" : "Lazy") + "(" + dump_tree(re, n.lhs);
      if (n.rhs != kNoNode) s += "; " + dump_tree(re, n.rhs);
      return s + ")";
    }
    case NodeKind::kGroup: return un("Group#" + std::to_string(n.id));
    case NodeKind::kNonCapGroup: return un("NonCap");
    case NodeKind::kLookaround: {
      static const char* names[] = {"Ahead", "NegAhead", "Behind", "NegBehind"};
      return un(std::string(names[static_cast<int>(n.look)]) + "#" + std::to_string(n.id));
    }
    case NodeKind::kAnchor: {
      static const char* names[] = {"Begin", "End", "WordBoundary", "NonWordBoundary"};
      return names[static_cast<int>(n.anchor)];
    }
  }
  return "?";
}

}  // namespace linre
