#include "linre/analysis.hpp"

#include <string>
#include <utility>

#include "linre/common.hpp"

namespace linre {

Regex reverse(const Regex& re) {
  Regex out = re;
  for (size_t i = 0; i < out.size(); ++i) {
    Node& n = out.mutable_node(static_cast<NodeId>(i));
    if (n.kind == NodeKind::kConcat) std::swap(n.lhs, n.rhs);
  }
  out.finalize(false);
  return out;
}

namespace {

constexpr size_t kMaxDesugaredNodes = 4'000'000;

class Desugarer {
 public:
  Desugarer(const Regex& src, int32_t limit) : src_(src), limit_(limit) {
    for (const CharClass& c : src.classes()) out_.add_class(c);
  }

  Regex run() {
    out_.set_root(copy(src_.root()));
    out_.finalize(false);
    return std::move(out_);
  }

 private:
  NodeId add(const Node& n) {
    if (out_.size() >= kMaxDesugaredNodes) {
      throw RegexError(ErrorCode::kResourceLimit, "counted repetition expands beyond the size limit");
    }
    return out_.add(n);
  }

  NodeId copy(NodeId id) {
    if (id == kNoNode) return kNoNode;
    Node n = src_.node(id);
    if (n.kind == NodeKind::kCountedRep && n.rhs == kNoNode &&
        !(n.min == 1 && n.max == 1) && !(n.min == 0 && n.max == 1)) {
      return expand(n);
    }
    n.lhs = copy(n.lhs);
    n.rhs = copy(n.rhs);
    return add(n);
  }

  NodeId expand(const Node& rep) {
    if (rep.min > limit_ || (rep.max != kUnbounded && rep.max > limit_)) {
      throw RegexError(ErrorCode::kResourceLimit,
                       "repetition bound exceeds limit " + std::to_string(limit_));
    }
    NodeId acc = kNoNode;
    auto append = [&](NodeId part) {
      if (acc == kNoNode) {
        acc = part;
        return;
      }
      Node c;
      c.kind = NodeKind::kConcat;
      c.lhs = acc;
      c.rhs = part;
      acc = add(c);
    };
    for (int32_t k = 0; k < rep.min; ++k) {
      Node m = rep;
      m.min = m.max = 1;
      m.lhs = copy(rep.lhs);
      m.rhs = kNoNode;
      append(add(m));
    }
    if (rep.max == kUnbounded) {
      Node star = rep;
      star.kind = NodeKind::kQuantified;
      star.quant = QuantKind::kStar;
      star.lhs = copy(rep.lhs);
      star.rhs = kNoNode;
      append(add(star));
    } else if (rep.max > rep.min) {
      NodeId chain = kNoNode;
      for (int32_t k = 0; k < rep.max - rep.min; ++k) {
        Node layer = rep;
        layer.min = 0;
        layer.max = 1;
        layer.lhs = copy(rep.lhs);
        layer.rhs = chain;
        chain = add(layer);
      }
      append(chain);
    }
    if (acc == kNoNode) {
      Node eps;
      eps.kind = NodeKind::kEpsilon;
      acc = add(eps);
    }
    return acc;
  }

  const Regex& src_;
  int32_t limit_;
  Regex out_;
};

}  // namespace

Regex desugar_counted(const Regex& re, int32_t limit) { return Desugarer(re, limit).run(); }

bool has_lazy_nullable_plus(const Regex& re) {
  for (size_t i = 0; i < re.size(); ++i) {
    const Node& n = re.node(static_cast<NodeId>(i));
    if (n.kind == NodeKind::kQuantified && n.quant == QuantKind::kPlus && !n.greedy &&
        re.nullability(n.lhs) != Nullability::kNN) {
      return true;
    }
  }
  return false;
}

int enclosing_quantifier_count(const Regex& re, NodeId id) {
  int count = 0;
  for (NodeId p = re.parent(id); p != kNoNode; p = re.parent(p)) {
    NodeKind k = re.node(p).kind;
    if (k == NodeKind::kQuantified || k == NodeKind::kCountedRep) ++count;
  }
  return count;
}

}  // namespace linre
