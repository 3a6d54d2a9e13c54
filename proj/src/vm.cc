#include "linre/vm.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace linre {

std::vector<Pos> Oracle::row_positions(int l) const {
  std::vector<Pos> out;
  for (size_t p = 0; p < cols_; ++p) {
    if (get(l, static_cast<Pos>(p))) out.push_back(static_cast<Pos>(p));
  }
  return out;
}

RunCounters& RunCounters::operator+=(const RunCounters& o) {
  instructions += o.instructions;
  forks += o.forks;
  slot_copies += o.slot_copies;
  aux_slot_copies += o.aux_slot_copies;
  threads_peak = std::max(threads_peak, o.threads_peak);
  steps += o.steps;
  null_checks += o.null_checks;
  return *this;
}

std::optional<Span> extract_group(const ThreadSnapshot& t, int g, Direction dir) {
  Pos a = t.caps[2 * g];
  Pos b = t.caps[2 * g + 1];
  if (a == kUndefined && b == kUndefined) return std::nullopt;
  if (a == kUndefined || b == kUndefined) {
    throw RegexError(ErrorCode::kInternal, "half-defined group #" + std::to_string(g));
  }
  if (dir == Direction::kBackward) std::swap(a, b);
  return Span{a, b};
}

namespace {

bool anchor_holds(AnchorKind k, std::u32string_view text, Pos pos) {
  Pos n = static_cast<Pos>(text.size());
  switch (k) {
    case AnchorKind::kBegin: return pos == 0;
    case AnchorKind::kEnd: return pos == n;
    case AnchorKind::kWordBoundary:
    case AnchorKind::kNonWordBoundary: {
      bool before = pos > 0 && is_word_char(text[pos - 1]);
      bool after = pos < n && is_word_char(text[pos]);
      return (before != after) == (k == AnchorKind::kWordBoundary);
    }
  }
  return false;
}

// Structural empty-match test with per-position memoization.
class NullProbe {
 public:
  NullProbe(const Regex* re, std::u32string_view text, const Oracle* oracle,
            const std::vector<uint8_t>* lbtable)
      : re_(re), text_(text), oracle_(oracle), lbtable_(lbtable) {
    if (re_) {
      stamp_.assign(re_->size(), 0);
      value_.assign(re_->size(), 0);
    }
  }

  void reset(uint32_t stamp) { current_ = stamp; }

  bool eval(NodeId id, Pos pos) {
    if (stamp_[id] == current_) return value_[id] != 0;
    ++evaluated_;
    bool v = compute(id, pos);
    stamp_[id] = current_;
    value_[id] = v;
    return v;
  }

  uint64_t evaluated() const { return evaluated_; }

 private:
  bool compute(NodeId id, Pos pos) {
    const Node& n = re_->node(id);
    switch (n.kind) {
      case NodeKind::kChar:
      case NodeKind::kAnyChar:
      case NodeKind::kClass:
        return false;
      case NodeKind::kEpsilon:
        return true;
      case NodeKind::kConcat:
        return eval(n.lhs, pos) && eval(n.rhs, pos);
      case NodeKind::kUnion:
        return eval(n.lhs, pos) || eval(n.rhs, pos);
      case NodeKind::kQuantified:
        return n.quant == QuantKind::kStar || eval(n.lhs, pos);
      case NodeKind::kCountedRep:
        return n.min == 0 || eval(n.lhs, pos);
      case NodeKind::kGroup:
      case NodeKind::kNonCapGroup:
        return eval(n.lhs, pos);
      case NodeKind::kLookaround: {
        bool holds;
        if (lbtable_) {
          holds = (*lbtable_)[n.id] != 0;
        } else if (oracle_) {
          holds = oracle_->get(n.id, pos);
        } else {
          throw RegexError(ErrorCode::kInternal, "CheckNull needs an oracle");
        }
        return is_positive(n.look) ? holds : !holds;
      }
      case NodeKind::kAnchor:
        return anchor_holds(n.anchor, text_, pos);
    }
    return false;
  }

  const Regex* re_;
  std::u32string_view text_;
  const Oracle* oracle_;
  const std::vector<uint8_t>* lbtable_;
  std::vector<uint32_t> stamp_;
  std::vector<uint8_t> value_;
  uint32_t current_ = 0;
  uint64_t evaluated_ = 0;
};

void validate(const Program& p, const Oracle* oracle) {
  int32_t size = static_cast<int32_t>(p.code.size());
  int32_t regs = 2 * (p.num_groups + 1);
  bool needs_oracle = false;
  for (const Instruction& ins : p.code) {
    switch (ins.op) {
      case Opcode::kJump:
        if (ins.a < 0 || ins.a >= size) throw RegexError(ErrorCode::kInternal, "jump out of range");
        break;
      case Opcode::kFork:
        if (ins.a < 0 || ins.a >= size || ins.b < 0 || ins.b >= size) {
          throw RegexError(ErrorCode::kInternal, "fork out of range");
        }
        break;
      case Opcode::kSetReg:
        if (ins.a < 0 || ins.a >= regs) throw RegexError(ErrorCode::kInternal, "register out of range");
        break;
      case Opcode::kClearReg:
        if (ins.a < 0 || ins.a > p.num_groups) throw RegexError(ErrorCode::kInternal, "register out of range");
        break;
      case Opcode::kCheckOracle:
      case Opcode::kNegCheckOracle:
      case Opcode::kWriteOracle:
        needs_oracle = true;
        break;
      default:
        break;
    }
  }
  if (needs_oracle && oracle == nullptr) throw RegexError(ErrorCode::kInternal, "missing oracle");
}

template <class Store>
class Machine {
 public:
  explicit Machine(const RunRequest& req)
      : req_(req),
        prog_(*req.program),
        layout_(prog_),
        caps_(2 * (prog_.num_groups + 1)),
        aux_(layout_.size()),
        lbtable_(prog_.num_lookarounds + 1, 0),
        probe_(prog_.source.get(), req.text, req.oracle,
               prog_.kind == ProgramKind::kStreaming ? &lbtable_ : nullptr) {}

  RunOutcome run() {
    validate(prog_, req_.oracle);
    const Pos n = static_cast<Pos>(req_.text.size());
    const bool forward = prog_.direction == Direction::kForward;
    const bool streaming = prog_.kind == ProgramKind::kStreaming;
    std::vector<uint32_t> processed(2 * prog_.code.size(), 0);
    uint32_t epoch = 0;
    if (req_.label_counts) req_.label_counts->assign(prog_.code.size(), 0);
    Pos pos = req_.start;
    for (auto it = prog_.entry_points.rbegin(); it != prog_.entry_points.rend(); ++it) {
      active_.push_back(Thread{*it, true, caps_.make(), aux_.make()});
    }
    bool matched = false;
    Thread best{0, true, caps_.make(), aux_.make()};
    int64_t clk = 0;

    for (;;) {
      ++counters_.steps;
      ++epoch;
      probe_.reset(epoch);
      if (streaming) std::fill(lbtable_.begin(), lbtable_.end(), 0);
      bool can_read = forward ? pos < n : pos > 0;
      char32_t ch = can_read ? req_.text[forward ? pos : pos - 1] : 0;

      while (!active_.empty()) {
        Thread& t = active_.back();
        size_t key = 2 * static_cast<size_t>(t.pc) + (t.left ? 1 : 0);
        if (processed[key] == epoch) {
          active_.pop_back();
          continue;
        }
        processed[key] = epoch;
        ++clk;
        ++counters_.instructions;
        if (req_.label_counts) ++(*req_.label_counts)[t.pc];
        const Instruction& ins = prog_.code[t.pc];
        switch (ins.op) {
          case Opcode::kConsume:
            consume(can_read && ch == ins.c);
            break;
          case Opcode::kConsumeClass:
            consume(can_read && prog_.source->char_class(ins.a).contains(ch));
            break;
          case Opcode::kConsumeAny:
            consume(can_read && (ins.a == 0 || !is_line_terminator(ch)));
            break;
          case Opcode::kJump:
            t.pc = ins.a;
            break;
          case Opcode::kFork: {
            Thread copy{ins.a, t.left, caps_.fork(t.caps), aux_.fork(t.aux)};
            t.pc = ins.b;
            active_.push_back(std::move(copy));
            ++counters_.forks;
            track_peak();
            break;
          }
          case Opcode::kAccept:
            best = std::move(t);
            matched = true;
            active_.clear();
            break;
          case Opcode::kSetReg:
            caps_.set(t.caps, ins.a, pos);
            if (ins.a % 2 == 0) aux_.set(t.aux, layout_.gclock(ins.a / 2), clk);
            ++t.pc;
            break;
          case Opcode::kClearReg:
            caps_.set(t.caps, 2 * ins.a, kUndefined);
            caps_.set(t.caps, 2 * ins.a + 1, kUndefined);
            ++t.pc;
            break;
          case Opcode::kBeginLoop:
            t.left = false;
            ++t.pc;
            break;
          case Opcode::kEndLoop:
            if (t.left) {
              ++t.pc;
            } else {
              active_.pop_back();
            }
            break;
          case Opcode::kSetQuant:
            aux_.set(t.aux, layout_.qclock(ins.a), clk);
            aux_.set(t.aux, layout_.plusnulled(ins.a), kUndefined);
            ++t.pc;
            break;
          case Opcode::kSetNullPlus:
            aux_.set(t.aux, layout_.qclock(ins.a), clk);
            aux_.set(t.aux, layout_.plusnulled(ins.a), pos);
            ++t.pc;
            break;
          case Opcode::kCheckNull:
            pass_if(probe_.eval(prog_.quant_body[ins.a], pos));
            break;
          case Opcode::kWriteOracle:
            req_.oracle->set(ins.a, pos);
            active_.pop_back();
            break;
          case Opcode::kCheckOracle:
            if (req_.oracle->get(ins.a, pos)) {
              aux_.set(t.aux, layout_.lookpos(ins.a), pos);
              aux_.set(t.aux, layout_.lclock(ins.a), clk);
              ++t.pc;
            } else {
              active_.pop_back();
            }
            break;
          case Opcode::kNegCheckOracle:
            pass_if(!req_.oracle->get(ins.a, pos));
            break;
          case Opcode::kWriteLB:
            lbtable_[ins.a] = 1;
            active_.pop_back();
            break;
          case Opcode::kCheckLB:
            pass_if(lbtable_[ins.a] != 0);
            break;
          case Opcode::kNegCheckLB:
            pass_if(lbtable_[ins.a] == 0);
            break;
          case Opcode::kAssertAnchor:
            pass_if(anchor_holds(static_cast<AnchorKind>(ins.a), req_.text, pos));
            break;
        }
      }

      if (req_.empty_only || next_.empty()) break;
      if (streaming && std::none_of(next_.begin(), next_.end(), [&](const Thread& t) {
            return t.pc >= prog_.main_begin && t.pc < prog_.main_end;
          })) {
        break;
      }
      pos += forward ? 1 : -1;
      for (auto it = next_.rbegin(); it != next_.rend(); ++it) active_.push_back(std::move(*it));
      next_.clear();
    }

    RunOutcome out;
    out.matched = matched;
    if (matched) {
      out.winner.caps = caps_.materialize(best.caps);
      out.winner.aux = aux_.materialize(best.aux);
    }
    counters_.slot_copies = caps_.slot_copies();
    counters_.aux_slot_copies = aux_.slot_copies();
    counters_.null_checks = probe_.evaluated();
    out.counters = counters_;
    return out;
  }

 private:
  struct Thread {
    int32_t pc;
    bool left;
    typename Store::Handle caps;
    typename Store::Handle aux;
  };

  void consume(bool ok) {
    if (ok) {
      Thread& t = active_.back();
      ++t.pc;
      t.left = true;
      next_.push_back(std::move(t));
      track_peak();
    }
    active_.pop_back();
  }

  void pass_if(bool ok) {
    if (ok) {
      ++active_.back().pc;
    } else {
      active_.pop_back();
    }
  }

  void track_peak() {
    uint64_t live = active_.size() + next_.size();
    if (live > counters_.threads_peak) counters_.threads_peak = live;
  }

  const RunRequest& req_;
  const Program& prog_;
  AuxLayout layout_;
  Store caps_;
  Store aux_;
  std::vector<uint8_t> lbtable_;
  NullProbe probe_;
  std::vector<Thread> active_;
  std::vector<Thread> next_;
  RunCounters counters_;
};

}  // namespace

RunOutcome run(const RunRequest& req) {
  switch (req.store) {
    case StoreKind::kArray: return Machine<ArrayStore>(req).run();
    case StoreKind::kList: return Machine<ListStore>(req).run();
    case StoreKind::kTree: return Machine<TreeStore>(req).run();
  }
  throw RegexError(ErrorCode::kInternal, "unknown store");
}

bool nullable_at(const Regex& re, NodeId node, std::u32string_view text, Pos pos, const Oracle* oracle) {
  NullProbe probe(&re, text, oracle, nullptr);
  probe.reset(1);
  return probe.eval(node, pos);
}

}  // namespace linre
