#include "linre/compiler.hpp"

#include <string>
#include <vector>

#include "linre/analysis.hpp"
#include "linre/common.hpp"

namespace linre {

bool streaming_eligible(const Regex& re) {
  bool any_lookbehind = false;
  bool plus_with_group = false;
  for (size_t i = 0; i < re.size(); ++i) {
    NodeId id = static_cast<NodeId>(i);
    const Node& n = re.node(id);
    if (n.kind == NodeKind::kLookaround) {
      if (!is_behind(n.look) || re.contains_group(n.lhs)) return false;
      any_lookbehind = true;
    }
    if (n.kind == NodeKind::kQuantified && n.quant == QuantKind::kPlus &&
        re.nullability(n.lhs) != Nullability::kNN && re.contains_group(n.lhs)) {
      plus_with_group = true;
    }
  }
  return !(any_lookbehind && plus_with_group);
}

namespace {

class Compiler {
 public:
  Compiler(const RegexPtr& re, ProgramKind kind, Direction dir, const CompileOptions& opts)
      : re_(*re), opts_(opts) {
    prog_.kind = kind;
    prog_.direction = dir;
    prog_.source = re;
    prog_.num_groups = re_.num_groups();
    prog_.num_quantifiers = re_.num_quantifiers();
    prog_.num_lookarounds = re_.num_lookarounds();
    prog_.quant_body.assign(re_.num_quantifiers() + 1, kNoNode);
    for (int q = 1; q <= re_.num_quantifiers(); ++q) {
      NodeId node = re_.quantifier_node(q);
      if (node != kNoNode) prog_.quant_body[q] = re_.node(node).lhs;
    }
  }

  Program take() { return std::move(prog_); }

  int32_t pc() const { return static_cast<int32_t>(prog_.code.size()); }

  int32_t put(Opcode op, int32_t a = 0, int32_t b = 0, NodeId src = kNoNode) {
    if (prog_.code.size() >= opts_.max_instructions) {
      throw RegexError(ErrorCode::kResourceLimit, "program exceeds " +
                                                      std::to_string(opts_.max_instructions) +
                                                      " instructions");
    }
    Instruction ins;
    ins.op = op;
    ins.a = a;
    ins.b = b;
    ins.source = src;
    prog_.code.push_back(ins);
    return pc() - 1;
  }

  // Fork/ConsumeAny/Jump loop that lets a match start anywhere.
  void search_loop() {
    int32_t top = pc();
    put(Opcode::kFork, top + 3, top + 1);
    put(Opcode::kConsumeAny, 0);
    put(Opcode::kJump, top);
  }

  void emit(NodeId id) {
    const Node& n = re_.node(id);
    switch (n.kind) {
      case NodeKind::kChar: {
        int32_t at = put(Opcode::kConsume, 0, 0, id);
        prog_.code[at].c = n.ch;
        return;
      }
      case NodeKind::kAnyChar:
        put(Opcode::kConsumeAny, 1, 0, id);
        return;
      case NodeKind::kClass:
        put(Opcode::kConsumeClass, n.cls, 0, id);
        return;
      case NodeKind::kEpsilon:
        return;
      case NodeKind::kConcat:
        emit(n.lhs);
        emit(n.rhs);
        return;
      case NodeKind::kUnion: {
        int32_t fork = put(Opcode::kFork, 0, 0, id);
        int32_t high = pc();
        emit(n.lhs);
        int32_t jump = put(Opcode::kJump, 0, 0, id);
        int32_t low = pc();
        emit(n.rhs);
        set_fork(fork, high, low, opts_.swap_alternation);
        prog_.code[jump].a = pc();
        return;
      }
      case NodeKind::kGroup:
        if (keep_groups()) put(Opcode::kSetReg, 2 * n.id, 0, id);
        emit(n.lhs);
        if (keep_groups()) put(Opcode::kSetReg, 2 * n.id + 1, 0, id);
        return;
      case NodeKind::kNonCapGroup:
        emit(n.lhs);
        return;
      case NodeKind::kLookaround: {
        bool pos = is_positive(n.look);
        if (prog_.kind == ProgramKind::kStreaming) {
          put(pos ? Opcode::kCheckLB : Opcode::kNegCheckLB, n.id, 0, id);
        } else {
          put(pos ? Opcode::kCheckOracle : Opcode::kNegCheckOracle, n.id, 0, id);
        }
        return;
      }
      case NodeKind::kAnchor:
        put(Opcode::kAssertAnchor, static_cast<int32_t>(n.anchor), 0, id);
        return;
      case NodeKind::kQuantified:
        if (n.quant == QuantKind::kStar) {
          emit_star(id);
        } else {
          emit_plus(id);
        }
        return;
      case NodeKind::kCountedRep:
        emit_counted(id);
        return;
    }
  }

  void finish_main() { put(Opcode::kAccept); }

  bool keep_groups() const { return prog_.kind != ProgramKind::kOracle; }
  bool keep_quant_clocks() const { return prog_.kind != ProgramKind::kOracle; }

  Program& program() { return prog_; }

 private:
  void set_fork(int32_t at, int32_t high, int32_t low, bool swap = false) {
    prog_.code[at].a = swap ? low : high;
    prog_.code[at].b = swap ? high : low;
  }

  bool nullable_body(NodeId quant) const {
    return re_.nullability(re_.node(quant).lhs) != Nullability::kNN;
  }

  // Iteration entry: SetQuant, legacy ClearRegs, then BeginLoop if the
  // iteration must not match empty.
  void iteration_prologue(NodeId quant, bool begin_loop) {
    const Node& n = re_.node(quant);
    if (keep_quant_clocks()) put(Opcode::kSetQuant, n.id, 0, quant);
    if (opts_.mode == CompileMode::kLegacyClearReg && keep_groups()) {
      for (int g = re_.first_group(n.lhs); g < re_.end_group(n.lhs); ++g) {
        put(Opcode::kClearReg, g, 0, quant);
      }
    }
    if (begin_loop) put(Opcode::kBeginLoop, 0, 0, quant);
  }

  void emit_star(NodeId id) {
    const Node& n = re_.node(id);
    bool nullable = nullable_body(id);
    int32_t fork = put(Opcode::kFork, 0, 0, id);
    int32_t body = pc();
    iteration_prologue(id, nullable);
    emit(n.lhs);
    if (nullable) put(Opcode::kEndLoop, 0, 0, id);
    put(Opcode::kJump, fork, 0, id);
    if (n.greedy) {
      set_fork(fork, body, pc());
    } else {
      set_fork(fork, pc(), body);
    }
  }

  void emit_mandatory(NodeId id) {
    iteration_prologue(id, false);
    emit(re_.node(id).lhs);
  }

  void emit_plus(NodeId id) {
    const Node& n = re_.node(id);
    Nullability null = re_.nullability(n.lhs);
    if (opts_.expand_plus) {
      emit_mandatory(id);
      emit_star(id);
      return;
    }
    if (null == Nullability::kNN) {
      int32_t top = pc();
      iteration_prologue(id, false);
      emit(n.lhs);
      int32_t fork = put(Opcode::kFork, 0, 0, id);
      if (n.greedy) {
        set_fork(fork, top, pc());
      } else {
        set_fork(fork, pc(), top);
      }
      return;
    }
    if (!n.greedy) {
      throw RegexError(ErrorCode::kLazyNullablePlus,
                       "lazy plus over a nullable body is not supported");
    }
    if (prog_.kind == ProgramKind::kNulledPlusRecon) {
      null_path(id, null);
      return;
    }
    int32_t entry = put(Opcode::kFork, 0, 0, id);
    int32_t nonnull = pc();
    iteration_prologue(id, true);
    emit(n.lhs);
    put(Opcode::kEndLoop, 0, 0, id);
    int32_t loop = put(Opcode::kFork, 0, 0, id);
    int32_t nullpath = pc();
    null_path(id, null);
    set_fork(entry, nonnull, nullpath);
    set_fork(loop, nonnull, pc());
  }

  void null_path(NodeId id, Nullability null) {
    int32_t q = re_.node(id).id;
    if (null == Nullability::kCDN) put(Opcode::kCheckNull, q, 0, id);
    if (keep_quant_clocks()) put(Opcode::kSetNullPlus, q, 0, id);
  }

  void emit_counted(NodeId id) {
    const Node& n = re_.node(id);
    if (n.rhs != kNoNode || (n.min == 0 && n.max == 1)) {
      // One optional layer, possibly chaining the next one (desugared form).
      std::vector<int32_t> forks;
      for (NodeId layer = id; layer != kNoNode; layer = re_.node(layer).rhs) {
        forks.push_back(optional_layer_head(layer));
      }
      close_layers(id, forks);
      return;
    }
    if (n.min > kDefaultRepetitionLimit || (n.max != kUnbounded && n.max > kDefaultRepetitionLimit)) {
      throw RegexError(ErrorCode::kResourceLimit, "repetition bound exceeds limit " +
                                                      std::to_string(kDefaultRepetitionLimit));
    }
    for (int32_t k = 0; k < n.min; ++k) emit_mandatory(id);
    if (n.max == kUnbounded) {
      emit_star(id);
      return;
    }
    std::vector<int32_t> forks;
    for (int32_t k = n.min; k < n.max; ++k) forks.push_back(optional_layer_head(id));
    close_layers(id, forks);
  }

  // Fork; SetQuant; [BeginLoop]; body; [EndLoop]. Returns the fork label.
  int32_t optional_layer_head(NodeId id) {
    bool nullable = nullable_body(id);
    int32_t fork = put(Opcode::kFork, pc() + 1, 0, id);
    iteration_prologue(id, nullable);
    emit(re_.node(id).lhs);
    if (nullable) put(Opcode::kEndLoop, 0, 0, id);
    return fork;
  }

  void close_layers(NodeId id, const std::vector<int32_t>& forks) {
    bool greedy = re_.node(id).greedy;
    for (int32_t f : forks) {
      int32_t body = f + 1;
      if (greedy) {
        set_fork(f, body, pc());
      } else {
        set_fork(f, pc(), body);
      }
    }
  }

  const Regex& re_;
  const CompileOptions& opts_;
  Program prog_;
};

void reject_lazy_nullable_plus(const Regex& re) {
  if (has_lazy_nullable_plus(re)) {
    throw RegexError(ErrorCode::kLazyNullablePlus, "lazy plus over a nullable body is not supported");
  }
}

NodeId lookaround_body(const Regex& re, int id) {
  if (id < 1 || id > re.num_lookarounds()) {
    throw RegexError(ErrorCode::kInternal, "no lookaround #" + std::to_string(id));
  }
  return re.node(re.lookaround_node(id)).lhs;
}

void emit_main_automaton(Compiler& c, const Regex& re, const CompileOptions& opts) {
  if (opts.unanchored_prefix) c.search_loop();
  if (opts.capture_whole_match) c.put(Opcode::kSetReg, 0);
  c.emit(re.root());
  if (opts.capture_whole_match) c.put(Opcode::kSetReg, 1);
  c.finish_main();
}

}  // namespace

Program compile_main(const RegexPtr& re, const CompileOptions& opts) {
  reject_lazy_nullable_plus(*re);
  Compiler c(re, ProgramKind::kMain, Direction::kForward, opts);
  emit_main_automaton(c, *re, opts);
  Program p = c.take();
  p.main_end = static_cast<int32_t>(p.size());
  return p;
}

Program compile_main(const Regex& re, const CompileOptions& opts) {
  return compile_main(std::make_shared<const Regex>(re), opts);
}

Program compile_oracle_pass(const RegexPtr& fwd, const RegexPtr& rev, int id, const CompileOptions& opts) {
  reject_lazy_nullable_plus(*fwd);
  bool behind = is_behind(fwd->node(fwd->lookaround_node(id)).look);
  const RegexPtr& src = behind ? fwd : rev;
  Compiler c(src, ProgramKind::kOracle, behind ? Direction::kForward : Direction::kBackward, opts);
  c.search_loop();
  c.emit(lookaround_body(*src, id));
  c.put(Opcode::kWriteOracle, id);
  Program p = c.take();
  p.main_end = static_cast<int32_t>(p.size());
  return p;
}

Program compile_streaming(const RegexPtr& re, const CompileOptions& opts) {
  reject_lazy_nullable_plus(*re);
  if (!streaming_eligible(*re)) {
    throw RegexError(ErrorCode::kIneligible, "regex is not eligible for the streaming pipeline");
  }
  Compiler c(re, ProgramKind::kStreaming, Direction::kForward, opts);
  emit_main_automaton(c, *re, opts);
  c.program().main_end = c.pc();
  std::vector<int32_t> entries;
  for (int id = re->num_lookarounds(); id >= 1; --id) {
    entries.push_back(c.pc());
    c.search_loop();
    c.emit(lookaround_body(*re, id));
    c.put(Opcode::kWriteLB, id);
  }
  entries.push_back(0);
  Program p = c.take();
  p.entry_points = std::move(entries);
  return p;
}

Program compile_lookaround_reconstruction(const RegexPtr& fwd, const RegexPtr& rev, int id,
                                          const CompileOptions& opts) {
  bool behind = is_behind(fwd->node(fwd->lookaround_node(id)).look);
  const RegexPtr& src = behind ? rev : fwd;
  Compiler c(src, ProgramKind::kLookaroundRecon, behind ? Direction::kBackward : Direction::kForward, opts);
  c.emit(lookaround_body(*src, id));
  c.finish_main();
  Program p = c.take();
  p.main_end = static_cast<int32_t>(p.size());
  return p;
}

Program compile_plus_reconstruction(const RegexPtr& fwd, int qid, const CompileOptions& opts) {
  NodeId q = fwd->quantifier_node(qid);
  Compiler c(fwd, ProgramKind::kNulledPlusRecon, Direction::kForward, opts);
  c.emit(fwd->node(q).lhs);
  c.finish_main();
  Program p = c.take();
  p.main_end = static_cast<int32_t>(p.size());
  return p;
}

}  // namespace linre
