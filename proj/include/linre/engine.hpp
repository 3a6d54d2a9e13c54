// Full matching: pipeline selection, oracle rows, main run, and capture
// reconstruction for lookarounds and nulled plusses.

#ifndef LINRE_ENGINE_HPP_
#define LINRE_ENGINE_HPP_

#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "linre/ast.hpp"
#include "linre/common.hpp"
#include "linre/compiler.hpp"
#include "linre/program.hpp"
#include "linre/registers.hpp"
#include "linre/vm.hpp"

namespace linre {

enum class Pipeline : uint8_t { kAuto, kOracle, kStreaming };
const char* pipeline_name(Pipeline p);
std::optional<Pipeline> parse_pipeline(std::string_view name);

struct EngineOptions {
  CompileOptions compile;
  Pipeline pipeline = Pipeline::kAuto;
  StoreKind store = StoreKind::kList;
};

struct RunRecord {
  int phase = 0;  // 1 oracle rows, 2 main, 3 reconstruction
  ProgramKind kind = ProgramKind::kMain;
  size_t program_size = 0;
  RunCounters counters;
};

struct MatchStats {
  uint64_t instr_phase1 = 0;
  uint64_t instr_phase2 = 0;
  uint64_t instr_phase3 = 0;
  RunCounters totals;
  std::vector<RunRecord> runs;

  uint64_t instr_total() const { return instr_phase1 + instr_phase2 + instr_phase3; }
  // Runs that traverse the string: oracle rows plus the main run.
  size_t string_passes() const;
  // Every run executed at most |program| * (|s|+1) instructions.
  bool within_run_bound(size_t text_size) const;
  // Largest instructions / (|program| * (|s|+1)) over the runs. Programs with
  // BeginLoop may reach 2: dedup is per (label, left).
  double max_run_ratio(size_t text_size) const;
};

// What one run contributes after clock filtering.
struct FilterOutput {
  std::vector<std::pair<int, Span>> groups;
  std::vector<std::pair<int, Pos>> lookarounds;  // positive, live, with groups
  std::vector<std::pair<int, Pos>> plusses;      // nulled, live, with groups
};

// Top-down walk of `scope`: a quantifier subtree survives if its qclock is
// later than the enclosing live quantifier's, a group if its gclock is.
FilterOutput filter_captures(const Regex& re, NodeId scope, const ThreadSnapshot& t,
                             const AuxLayout& layout, Direction dir);

class Engine {
 public:
  explicit Engine(std::string_view pattern, const EngineOptions& opts = {});
  explicit Engine(Regex re, const EngineOptions& opts = {});

  std::optional<MatchResult> match(std::u32string_view text, MatchStats* stats = nullptr) const;
  // Phase 1 alone; rows are filled innermost lookaround first.
  Oracle build_oracle(std::u32string_view text, MatchStats* stats = nullptr) const;

  Pipeline pipeline() const { return pipeline_; }
  const Regex& regex() const { return *fwd_; }
  const Program& main_program() const { return main_; }
  const Program& oracle_program(int id) const { return oracle_[id]; }
  const std::optional<Program>& lookaround_program(int id) const { return look_recon_[id]; }
  const std::optional<Program>& plus_program(int qid) const { return plus_recon_[qid]; }
  // Instructions over every program this engine may run.
  size_t bytecode_size() const;

 private:
  void build();
  RunOutcome run_program(const Program& p, std::u32string_view text, Pos start, Oracle* oracle,
                         bool empty_only, int phase, MatchStats* stats) const;

  EngineOptions opts_;
  std::shared_ptr<const Regex> fwd_;
  std::shared_ptr<const Regex> rev_;
  Pipeline pipeline_ = Pipeline::kOracle;
  Program main_;
  std::vector<Program> oracle_;                   // by lookaround id
  std::vector<std::optional<Program>> look_recon_;  // by lookaround id
  std::vector<std::optional<Program>> plus_recon_;  // by quantifier id
};

std::optional<MatchResult> full_match(std::string_view pattern, std::u32string_view text,
                                      const EngineOptions& opts = {}, MatchStats* stats = nullptr);

}  // namespace linre

#endif  // LINRE_ENGINE_HPP_
