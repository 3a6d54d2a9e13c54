// Annotated regex AST. Nodes live in an arena owned by Regex and refer to
// each other by index, so derived trees (reversed, desugared) can keep the
// same numbering as the parsed tree.

#ifndef LINRE_AST_HPP_
#define LINRE_AST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace linre {

using NodeId = int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr int32_t kUnbounded = -1;

enum class NodeKind : uint8_t {
  kChar,
  kAnyChar,
  kClass,
  kEpsilon,
  kConcat,
  kUnion,
  kQuantified,
  kCountedRep,
  kGroup,
  kNonCapGroup,
  kLookaround,
  kAnchor,
};

enum class QuantKind : uint8_t { kStar, kPlus };
enum class LookKind : uint8_t { kAhead, kNegAhead, kBehind, kNegBehind };
enum class AnchorKind : uint8_t { kBegin, kEnd, kWordBoundary, kNonWordBoundary };

// Ordered CIN < CDN < NN, so max/min follow the analysis rules directly.
enum class Nullability : uint8_t { kCIN = 0, kCDN = 1, kNN = 2 };
const char* nullability_name(Nullability n);

inline bool is_behind(LookKind k) { return k == LookKind::kBehind || k == LookKind::kNegBehind; }
inline bool is_positive(LookKind k) { return k == LookKind::kAhead || k == LookKind::kBehind; }

struct CharRange {
  char32_t lo;
  char32_t hi;
  bool operator==(const CharRange&) const = default;
};

struct CharClass {
  std::vector<CharRange> ranges;  // sorted, non-overlapping
  bool negated = false;

  bool contains(char32_t c) const;
  void add(char32_t lo, char32_t hi);
  void add_all(const std::vector<CharRange>& other);
  void normalize();
  bool operator==(const CharClass&) const = default;
};

// Complement of a normalized range list over all code points.
std::vector<CharRange> complement_ranges(const std::vector<CharRange>& ranges);
bool is_line_terminator(char32_t c);
bool is_word_char(char32_t c);

struct Node {
  NodeKind kind = NodeKind::kEpsilon;
  // Body for unary nodes, left operand for binary ones.
  NodeId lhs = kNoNode;
  // Right operand; for CountedRep{0,1} the next optional layer (desugared form).
  NodeId rhs = kNoNode;
  char32_t ch = 0;
  int32_t cls = -1;
  QuantKind quant = QuantKind::kStar;
  bool greedy = true;
  int32_t min = 0;
  int32_t max = 0;
  // Group, quantifier or lookaround id depending on kind.
  int32_t id = 0;
  LookKind look = LookKind::kAhead;
  AnchorKind anchor = AnchorKind::kBegin;
};

class Regex {
 public:
  NodeId add(const Node& n);
  int32_t add_class(CharClass c);
  void set_root(NodeId r) { root_ = r; }
  Node& mutable_node(NodeId id) { return nodes_[id]; }

  // Computes parents, nullability and id tables. With assign_ids the group,
  // quantifier and lookaround ids are (re)numbered in preorder; otherwise the
  // existing ids are kept (derived trees).
  void finalize(bool assign_ids);

  NodeId root() const { return root_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  size_t size() const { return nodes_.size(); }
  const CharClass& char_class(int32_t i) const { return classes_[i]; }
  const std::vector<CharClass>& classes() const { return classes_; }

  int num_groups() const { return num_groups_; }  // excluding group 0
  int num_quantifiers() const { return num_quants_; }
  int num_lookarounds() const { return num_looks_; }

  Nullability nullability(NodeId id) const { return nullability_[id]; }
  NodeId parent(NodeId id) const { return parent_[id]; }
  // Group ids found in the subtree, as the half-open range [first, end).
  int first_group(NodeId id) const { return first_group_[id]; }
  int end_group(NodeId id) const { return end_group_[id]; }
  bool contains_group(NodeId id) const { return end_group_[id] > first_group_[id]; }

  // First node in preorder carrying the id.
  NodeId lookaround_node(int id) const { return look_nodes_[id]; }
  NodeId quantifier_node(int id) const { return quant_nodes_[id]; }
  NodeId group_node(int id) const { return group_nodes_[id]; }

  // Children in left-to-right order.
  std::vector<NodeId> children(NodeId id) const;
  // Nodes reachable from the root.
  size_t reachable_count() const;

 private:
  std::vector<Node> nodes_;
  std::vector<CharClass> classes_;
  NodeId root_ = kNoNode;
  int num_groups_ = 0;
  int num_quants_ = 0;
  int num_looks_ = 0;
  std::vector<Nullability> nullability_;
  std::vector<NodeId> parent_;
  std::vector<int> first_group_;
  std::vector<int> end_group_;
  std::vector<NodeId> look_nodes_;
  std::vector<NodeId> quant_nodes_;
  std::vector<NodeId> group_nodes_;
};

// Structural equality of the trees rooted at a and b.
bool structurally_equal(const Regex& ra, NodeId a, const Regex& rb, NodeId b);
// Debug rendering, e.g. Concat(Group#1(Union(Char a, AnyChar)), Char b).
std::string dump_tree(const Regex& re, NodeId id);

}  // namespace linre

#endif  // LINRE_AST_HPP_
