#include "linre/engine.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "linre/analysis.hpp"
#include "linre/parser.hpp"

namespace linre {

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::kAuto: return "auto";
    case Pipeline::kOracle: return "oracle";
    case Pipeline::kStreaming: return "streaming";
  }
  return "?";
}

std::optional<Pipeline> parse_pipeline(std::string_view name) {
  if (name == "auto") return Pipeline::kAuto;
  if (name == "oracle") return Pipeline::kOracle;
  if (name == "streaming") return Pipeline::kStreaming;
  return std::nullopt;
}

size_t MatchStats::string_passes() const {
  size_t n = 0;
  for (const RunRecord& r : runs) {
    if (r.phase != 3) ++n;
  }
  return n;
}

bool MatchStats::within_run_bound(size_t text_size) const {
  for (const RunRecord& r : runs) {
    if (r.counters.instructions > r.program_size * (text_size + 1)) return false;
  }
  return true;
}

double MatchStats::max_run_ratio(size_t text_size) const {
  double worst = 0;
  for (const RunRecord& r : runs) {
    double cap = static_cast<double>(r.program_size) * static_cast<double>(text_size + 1);
    worst = std::max(worst, static_cast<double>(r.counters.instructions) / cap);
  }
  return worst;
}

namespace {

class CaptureFilter {
 public:
  CaptureFilter(const Regex& re, const ThreadSnapshot& t, const AuxLayout& layout, Direction dir)
      : re_(re), t_(t), layout_(layout), dir_(dir) {}

  void visit(NodeId id, Pos enclosing) {
    const Node& n = re_.node(id);
    switch (n.kind) {
      case NodeKind::kGroup: {
        std::optional<Span> span = extract_group(t_, n.id, dir_);
        if (span && t_.aux[layout_.gclock(n.id)] > enclosing) out_.groups.emplace_back(n.id, *span);
        visit(n.lhs, enclosing);
        return;
      }
      case NodeKind::kQuantified:
      case NodeKind::kCountedRep: {
        Pos qc = t_.aux[layout_.qclock(n.id)];
        if (qc <= enclosing) return;
        Pos nulled = t_.aux[layout_.plusnulled(n.id)];
        if (nulled != kUndefined) {
          if (re_.contains_group(n.lhs)) out_.plusses.emplace_back(n.id, nulled);
          return;
        }
        visit(n.lhs, qc);
        return;
      }
      case NodeKind::kLookaround: {
        if (!is_positive(n.look) || !re_.contains_group(n.lhs)) return;
        Pos at = t_.aux[layout_.lookpos(n.id)];
        if (at != kUndefined && t_.aux[layout_.lclock(n.id)] > enclosing) {
          out_.lookarounds.emplace_back(n.id, at);
        }
        return;
      }
      default:
        for (NodeId c : re_.children(id)) visit(c, enclosing);
        return;
    }
  }

  FilterOutput take() { return std::move(out_); }

 private:
  const Regex& re_;
  const ThreadSnapshot& t_;
  const AuxLayout& layout_;
  Direction dir_;
  FilterOutput out_;
};

}  // namespace

FilterOutput filter_captures(const Regex& re, NodeId scope, const ThreadSnapshot& t,
                             const AuxLayout& layout, Direction dir) {
  CaptureFilter f(re, t, layout, dir);
  f.visit(scope, kUndefined);
  return f.take();
}

Engine::Engine(std::string_view pattern, const EngineOptions& opts) : opts_(opts) {
  fwd_ = std::make_shared<const Regex>(parse(pattern));
  build();
}

Engine::Engine(Regex re, const EngineOptions& opts) : opts_(opts) {
  fwd_ = std::make_shared<const Regex>(std::move(re));
  build();
}

void Engine::build() {
  const Regex& re = *fwd_;
  if (has_lazy_nullable_plus(re)) {
    throw RegexError(ErrorCode::kLazyNullablePlus, "lazy plus over a nullable body is not supported");
  }
  rev_ = std::make_shared<const Regex>(reverse(re));
  bool eligible = streaming_eligible(re);
  switch (opts_.pipeline) {
    case Pipeline::kAuto:
      pipeline_ = eligible ? Pipeline::kStreaming : Pipeline::kOracle;
      break;
    case Pipeline::kStreaming:
      if (!eligible) {
        throw RegexError(ErrorCode::kIneligible, "regex is not eligible for the streaming pipeline");
      }
      pipeline_ = Pipeline::kStreaming;
      break;
    case Pipeline::kOracle:
      pipeline_ = Pipeline::kOracle;
      break;
  }
  int looks = re.num_lookarounds();
  oracle_.resize(looks + 1);
  look_recon_.resize(looks + 1);
  plus_recon_.resize(re.num_quantifiers() + 1);
  if (pipeline_ == Pipeline::kStreaming) {
    main_ = compile_streaming(fwd_, opts_.compile);
  } else {
    main_ = compile_main(fwd_, opts_.compile);
    for (int l = 1; l <= looks; ++l) {
      oracle_[l] = compile_oracle_pass(fwd_, rev_, l, opts_.compile);
      const Node& n = re.node(re.lookaround_node(l));
      if (is_positive(n.look) && re.contains_group(n.lhs)) {
        look_recon_[l] = compile_lookaround_reconstruction(fwd_, rev_, l, opts_.compile);
      }
    }
  }
  for (int q = 1; q <= re.num_quantifiers(); ++q) {
    const Node& n = re.node(re.quantifier_node(q));
    if (n.kind == NodeKind::kQuantified && n.quant == QuantKind::kPlus &&
        re.nullability(n.lhs) != Nullability::kNN && re.contains_group(n.lhs)) {
      plus_recon_[q] = compile_plus_reconstruction(fwd_, q, opts_.compile);
    }
  }
}

size_t Engine::bytecode_size() const {
  size_t total = main_.size();
  for (size_t l = 1; l < oracle_.size(); ++l) total += oracle_[l].size();
  for (const auto& p : look_recon_) {
    if (p) total += p->size();
  }
  for (const auto& p : plus_recon_) {
    if (p) total += p->size();
  }
  return total;
}

RunOutcome Engine::run_program(const Program& p, std::u32string_view text, Pos start, Oracle* oracle,
                               bool empty_only, int phase, MatchStats* stats) const {
  RunRequest req;
  req.program = &p;
  req.text = text;
  req.start = start;
  req.oracle = oracle;
  req.store = opts_.store;
  req.empty_only = empty_only;
  RunOutcome out = run(req);
  if (stats) {
    uint64_t instr = out.counters.instructions;
    if (phase == 1) stats->instr_phase1 += instr;
    if (phase == 2) stats->instr_phase2 += instr;
    if (phase == 3) stats->instr_phase3 += instr;
    stats->totals += out.counters;
    stats->runs.push_back(RunRecord{phase, p.kind, p.size(), out.counters});
  }
  return out;
}

Oracle Engine::build_oracle(std::u32string_view text, MatchStats* stats) const {
  int looks = fwd_->num_lookarounds();
  Oracle oracle(looks, text.size());
  if (pipeline_ != Pipeline::kOracle) return oracle;
  for (int l = looks; l >= 1; --l) {
    const Program& p = oracle_[l];
    Pos start = p.direction == Direction::kForward ? 0 : static_cast<Pos>(text.size());
    run_program(p, text, start, &oracle, false, 1, stats);
  }
  return oracle;
}

std::optional<MatchResult> Engine::match(std::u32string_view text, MatchStats* stats) const {
  const Regex& re = *fwd_;
  Oracle oracle = build_oracle(text, stats);
  RunOutcome main = run_program(main_, text, 0, &oracle, false, 2, stats);
  if (!main.matched) return std::nullopt;

  MatchResult result(re.num_groups() + 1);
  result[0] = extract_group(main.winner, 0, Direction::kForward);

  struct Task {
    bool lookaround;
    int id;
    Pos at;
  };
  std::deque<Task> work;
  auto absorb = [&](FilterOutput f) {
    for (const auto& [g, span] : f.groups) result[g] = span;
    for (const auto& [l, at] : f.lookarounds) work.push_back({true, l, at});
    for (const auto& [q, at] : f.plusses) work.push_back({false, q, at});
  };
  AuxLayout layout(main_);
  absorb(filter_captures(re, re.root(), main.winner, layout, Direction::kForward));

  while (!work.empty()) {
    Task task = work.front();
    work.pop_front();
    const Program* p = task.lookaround ? &*look_recon_[task.id] : &*plus_recon_[task.id];
    RunOutcome sub = run_program(*p, text, task.at, &oracle, !task.lookaround, 3, stats);
    if (!sub.matched) {
      throw RegexError(ErrorCode::kInternal, std::string("reconstruction failed for ") +
                                                 (task.lookaround ? "lookaround #" : "plus #") +
                                                 std::to_string(task.id));
    }
    NodeId owner = task.lookaround ? re.lookaround_node(task.id) : re.quantifier_node(task.id);
    absorb(filter_captures(re, re.node(owner).lhs, sub.winner, AuxLayout(*p), p->direction));
  }
  return result;
}

std::optional<MatchResult> full_match(std::string_view pattern, std::u32string_view text,
                                      const EngineOptions& opts, MatchStats* stats) {
  return Engine(pattern, opts).match(text, stats);
}

}  // namespace linre
