// Complexity families and their measurement. Instruction counts are
// deterministic; wall time is informational.

#ifndef LINRE_BENCH_HPP_
#define LINRE_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "linre/engine.hpp"

namespace linre {

enum class BenchEngine : uint8_t { kLinear, kBacktrack };
enum class BenchMetric : uint8_t { kInstructions, kWallTime };

struct BenchConfig {
  BenchEngine engine = BenchEngine::kLinear;
  BenchMetric metric = BenchMetric::kInstructions;
  EngineOptions engine_options;
  int warmup = 10;
  int repetitions = 10;
  uint64_t step_budget = 2'000'000'000;
};

struct BenchCase {
  std::string pattern;
  std::u32string text;
};

struct BenchRow {
  std::string family;
  int64_t size = 0;
  size_t bytecode = 0;  // zero for the backtracker
  uint64_t instr_total = 0;  // backtracker: matcher steps
  uint64_t instr_phase1 = 0;
  uint64_t instr_phase2 = 0;
  uint64_t instr_phase3 = 0;
  uint64_t forks = 0;
  uint64_t slot_copies = 0;
  uint64_t threads_peak = 0;
  int64_t wall_ns = 0;
  // Not in the CSV.
  size_t string_passes = 0;
  bool within_run_bound = true;
  double max_run_ratio = 0;
};

// c1, c2, c3, c4, c5-regex, c5-string, tradeoff.
const std::vector<std::string>& bench_families();
std::vector<int64_t> default_sizes(const std::string& family);
// Throws std::invalid_argument for an unknown family or a non-positive size.
BenchCase bench_case(const std::string& family, int64_t size);

BenchRow bench_run(const std::string& family, int64_t size, const BenchConfig& cfg = {});
std::vector<BenchRow> bench_family(const std::string& family, const std::vector<int64_t>& sizes,
                                   const BenchConfig& cfg = {});

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace linre

#endif  // LINRE_BENCH_HPP_
