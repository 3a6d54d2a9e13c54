#include "linre/backtracker.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <string>
#include <vector>

namespace linre {

namespace {

// Non-owning callable reference; continuations live on the caller's stack
// for the whole dynamic extent of the call that receives them.
template <class>
class FnRef;

template <class R, class... A>
class FnRef<R(A...)> {
 public:
  template <class F>
  FnRef(F& f)  // NOLINT: implicit by design
      : obj_(&f), call_([](void* o, A... a) -> R { return (*static_cast<F*>(o))(a...); }) {}
  R operator()(A... a) const { return call_(obj_, a...); }

 private:
  void* obj_;
  R (*call_)(void*, A...);
};

using Cont = FnRef<bool(Pos)>;
constexpr int64_t kInf = -1;

class Backtracker {
 public:
  Backtracker(const Regex& re, std::u32string_view text, const BacktrackOptions& opts)
      : re_(re), text_(text), n_(static_cast<Pos>(text.size())), budget_(opts.step_budget),
        caps_(2 * (re.num_groups() + 1), kUndefined) {}

  std::optional<MatchResult> search() {
    for (Pos start = 0; start <= n_; ++start) {
      std::fill(caps_.begin(), caps_.end(), kUndefined);
      Pos end = 0;
      auto done = [&](Pos y) {
        end = y;
        return true;
      };
      if (m(re_.root(), start, false, done)) {
        MatchResult r(re_.num_groups() + 1);
        r[0] = Span{start, end};
        for (int g = 1; g <= re_.num_groups(); ++g) {
          if (caps_[2 * g] != kUndefined) r[g] = Span{caps_[2 * g], caps_[2 * g + 1]};
        }
        return r;
      }
    }
    return std::nullopt;
  }

  bool holds(NodeId body, bool back, Pos pos) {
    auto accept = [](Pos) { return true; };
    return m(body, pos, back, accept);
  }

  bool empty_at(NodeId node, Pos pos) {
    auto same = [pos](Pos y) { return y == pos; };
    return m(node, pos, false, same);
  }

  uint64_t steps() const { return steps_; }

 private:
  bool m(NodeId id, Pos x, bool back, Cont k) {
    if (++steps_ > budget_) throw BudgetExceeded();
    const Node& n = re_.node(id);
    switch (n.kind) {
      case NodeKind::kChar:
        return step_char(x, back, k, [&](char32_t c) { return c == n.ch; });
      case NodeKind::kAnyChar:
        return step_char(x, back, k, [](char32_t c) { return !is_line_terminator(c); });
      case NodeKind::kClass: {
        const CharClass& cls = re_.char_class(n.cls);
        return step_char(x, back, k, [&](char32_t c) { return cls.contains(c); });
      }
      case NodeKind::kEpsilon:
        return k(x);
      case NodeKind::kConcat: {
        NodeId first = back ? n.rhs : n.lhs;
        NodeId second = back ? n.lhs : n.rhs;
        auto rest = [&](Pos y) { return m(second, y, back, k); };
        return m(first, x, back, rest);
      }
      case NodeKind::kUnion:
        return m(n.lhs, x, back, k) || m(n.rhs, x, back, k);
      case NodeKind::kGroup: {
        int g = n.id;
        auto close = [&](Pos y) {
          Pos s = caps_[2 * g], e = caps_[2 * g + 1];
          caps_[2 * g] = back ? y : x;
          caps_[2 * g + 1] = back ? x : y;
          if (k(y)) return true;
          caps_[2 * g] = s;
          caps_[2 * g + 1] = e;
          return false;
        };
        return m(n.lhs, x, back, close);
      }
      case NodeKind::kNonCapGroup:
        return m(n.lhs, x, back, k);
      case NodeKind::kLookaround: {
        std::vector<Pos> snapshot = caps_;
        auto accept = [](Pos) { return true; };
        bool r = m(n.lhs, x, is_behind(n.look), accept);
        if (is_positive(n.look)) {
          if (!r) return false;
          if (k(x)) return true;
          caps_ = snapshot;
          return false;
        }
        if (r) {
          caps_ = snapshot;
          return false;
        }
        return k(x);
      }
      case NodeKind::kAnchor: {
        bool ok = false;
        switch (n.anchor) {
          case AnchorKind::kBegin: ok = x == 0; break;
          case AnchorKind::kEnd: ok = x == n_; break;
          case AnchorKind::kWordBoundary:
          case AnchorKind::kNonWordBoundary: {
            bool a = x > 0 && is_word_char(text_[x - 1]);
            bool b = x < n_ && is_word_char(text_[x]);
            ok = (a != b) == (n.anchor == AnchorKind::kWordBoundary);
            break;
          }
        }
        return ok && k(x);
      }
      case NodeKind::kQuantified:
        return repeat(id, n.quant == QuantKind::kStar ? 0 : 1, kInf, x, back, k);
      case NodeKind::kCountedRep:
        return repeat(id, n.min, n.max == kUnbounded ? kInf : n.max, x, back, k);
    }
    return false;
  }

  template <class Pred>
  bool step_char(Pos x, bool back, Cont k, Pred pred) {
    if (back) return x > 0 && pred(text_[x - 1]) && k(x - 1);
    return x < n_ && pred(text_[x]) && k(x + 1);
  }

  // RepeatMatcher: captures inside the body reset per iteration, optional
  // iterations may not match empty.
  bool repeat(NodeId id, int64_t min, int64_t max, Pos x, bool back, Cont k) {
    if (max == 0) return k(x);
    const Node& n = re_.node(id);
    // A desugared optional layer chains the next layer through rhs.
    auto body = [&](Pos from, Cont then) {
      if (n.rhs == kNoNode) return m(n.lhs, from, back, then);
      NodeId first = back ? n.rhs : n.lhs;
      NodeId second = back ? n.lhs : n.rhs;
      auto rest = [&](Pos y) { return m(second, y, back, then); };
      return m(first, from, back, rest);
    };
    auto d = [&](Pos y) {
      if (min == 0 && y == x) return false;
      return repeat(id, min == 0 ? 0 : min - 1, max == kInf ? kInf : max - 1, y, back, k);
    };
    size_t lo = 2 * static_cast<size_t>(re_.first_group(n.lhs));
    size_t hi = 2 * static_cast<size_t>(re_.end_group(n.lhs));
    std::vector<Pos> saved(caps_.begin() + lo, caps_.begin() + hi);
    auto reset = [&] { std::fill(caps_.begin() + lo, caps_.begin() + hi, kUndefined); };
    auto restore = [&] { std::copy(saved.begin(), saved.end(), caps_.begin() + lo); };
    if (min != 0) {
      reset();
      if (body(x, d)) return true;
      restore();
      return false;
    }
    if (!n.greedy) {
      if (k(x)) return true;
      reset();
      if (body(x, d)) return true;
      restore();
      return false;
    }
    reset();
    if (body(x, d)) return true;
    restore();
    return k(x);
  }

  const Regex& re_;
  std::u32string_view text_;
  Pos n_;
  uint64_t budget_;
  uint64_t steps_ = 0;
  std::vector<Pos> caps_;
};

}  // namespace

std::optional<MatchResult> bt_match(const Regex& re, std::u32string_view text, const BacktrackOptions& opts,
                                    uint64_t* steps) {
  Backtracker bt(re, text, opts);
  try {
    auto r = bt.search();
    if (steps) *steps = bt.steps();
    return r;
  } catch (const BudgetExceeded&) {
    if (steps) *steps = bt.steps();
    throw;
  }
}

bool bt_lookaround_holds(const Regex& re, int id, std::u32string_view text, Pos pos,
                         const BacktrackOptions& opts) {
  const Node& n = re.node(re.lookaround_node(id));
  Backtracker bt(re, text, opts);
  return bt.holds(n.lhs, is_behind(n.look), pos);
}

bool bt_matches_empty_at(const Regex& re, NodeId node, std::u32string_view text, Pos pos,
                         const BacktrackOptions& opts) {
  Backtracker bt(re, text, opts);
  return bt.empty_at(node, pos);
}

namespace {

struct StackTask {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* stack_entry(void* arg) {
  auto* task = static_cast<StackTask*>(arg);
  try {
    (*task->fn)();
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_stack(size_t bytes, const std::function<void()>& fn) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  StackTask task{&fn, nullptr};
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, stack_entry, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("pthread_create failed");
  pthread_join(thread, nullptr);
  if (task.error) std::rethrow_exception(task.error);
}

}  // namespace linre
