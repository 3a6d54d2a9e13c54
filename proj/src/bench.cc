#include "linre/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "linre/backtracker.hpp"
#include "linre/parser.hpp"

namespace linre {

namespace {

constexpr size_t kBacktrackStack = size_t{1} << 30;

std::u32string repeat(char32_t c, int64_t n) { return std::u32string(static_cast<size_t>(n), c); }

std::string nest(std::string r, int64_t n, const std::string& open, const std::string& close) {
  for (int64_t i = 0; i < n; ++i) r = open + r + close;
  return r;
}

int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

const std::vector<std::string>& bench_families() {
  static const std::vector<std::string> names = {"c1",       "c2",        "c3",      "c4",
                                                 "c5-regex", "c5-string", "tradeoff"};
  return names;
}

std::vector<int64_t> default_sizes(const std::string& family) {
  if (family == "c1" || family == "c2" || family == "c3") return {5, 10, 20, 40};
  if (family == "c4" || family == "c5-string") return {250, 500, 1000, 2000};
  if (family == "c5-regex") return {10, 20, 40, 80};
  if (family == "tradeoff") return {1, 2, 4, 8, 16};
  throw std::invalid_argument("unknown benchmark family: " + family);
}

BenchCase bench_case(const std::string& family, int64_t n) {
  if (n <= 0) throw std::invalid_argument("benchmark sizes must be positive");
  if (family == "c1") return {nest("a", n, "(", ")*"), repeat('a', 100)};
  if (family == "c2") return {nest("a", n, "(?:", ")+"), repeat('a', 100)};
  if (family == "c3") return {nest("a|(^)", n, "(?:", ")+"), U"b"};
  if (family == "c4") return {"b(?:a(?<=ba*))*", U"b" + repeat('a', n)};
  if (family == "c5-regex") {
    std::string r = "(a*)b";
    for (int64_t i = 0; i < n; ++i) r = "a(?=" + r + ")";
    return {r, repeat('a', 1000) + U"b"};
  }
  if (family == "c5-string") return {"c(?:a(?=a*(?<=c(a*))b))*", U"c" + repeat('a', n) + U"b"};
  if (family == "tradeoff") {
    std::string body;
    for (int64_t i = 0; i < n; ++i) body += "(a)?";
    return {"(?:" + body + ")*", repeat('a', 1000)};
  }
  throw std::invalid_argument("unknown benchmark family: " + family);
}

BenchRow bench_run(const std::string& family, int64_t size, const BenchConfig& cfg) {
  BenchCase c = bench_case(family, size);
  BenchRow row;
  row.family = family;
  row.size = size;
  int runs = cfg.metric == BenchMetric::kWallTime ? cfg.warmup + cfg.repetitions : 1;
  std::vector<int64_t> times;

  if (cfg.engine == BenchEngine::kBacktrack) {
    Regex re = parse(c.pattern);
    BacktrackOptions bo;
    bo.step_budget = cfg.step_budget;
    run_with_stack(kBacktrackStack, [&] {
      for (int i = 0; i < runs; ++i) {
        uint64_t steps = 0;
        int64_t t0 = now_ns();
        bt_match(re, c.text, bo, &steps);
        times.push_back(now_ns() - t0);
        row.instr_total = steps;
      }
    });
  } else {
    Engine engine(c.pattern, cfg.engine_options);
    row.bytecode = engine.bytecode_size();
    for (int i = 0; i < runs; ++i) {
      MatchStats stats;
      int64_t t0 = now_ns();
      engine.match(c.text, &stats);
      times.push_back(now_ns() - t0);
      row.instr_total = stats.instr_total();
      row.instr_phase1 = stats.instr_phase1;
      row.instr_phase2 = stats.instr_phase2;
      row.instr_phase3 = stats.instr_phase3;
      row.forks = stats.totals.forks;
      row.slot_copies = stats.totals.slot_copies;
      row.threads_peak = stats.totals.threads_peak;
      row.string_passes = stats.string_passes();
      row.within_run_bound = stats.within_run_bound(c.text.size());
      row.max_run_ratio = stats.max_run_ratio(c.text.size());
    }
  }
  if (cfg.metric == BenchMetric::kWallTime) times.erase(times.begin(), times.begin() + cfg.warmup);
  std::sort(times.begin(), times.end());
  row.wall_ns = times[times.size() / 2];
  return row;
}

std::vector<BenchRow> bench_family(const std::string& family, const std::vector<int64_t>& sizes,
                                   const BenchConfig& cfg) {
  std::vector<BenchRow> rows;
  for (int64_t n : sizes) rows.push_back(bench_run(family, n, cfg));
  return rows;
}

std::string bench_csv_header() {
  return "family,size,bytecode,instr_total,instr_phase1,instr_phase2,instr_phase3,forks,slot_copies,"
         "threads_peak,wall_ns";
}

std::string bench_csv_row(const BenchRow& r) {
  std::string out = r.family;
  for (uint64_t v : {static_cast<uint64_t>(r.size), static_cast<uint64_t>(r.bytecode), r.instr_total,
                     r.instr_phase1, r.instr_phase2, r.instr_phase3, r.forks, r.slot_copies,
                     r.threads_peak, static_cast<uint64_t>(r.wall_ns)}) {
    out += ',' + std::to_string(v);
  }
  return out;
}

}  // namespace linre
