// Grammar-directed differential fuzzing of the linear engine against the
// backtracker.

#ifndef LINRE_FUZZER_HPP_
#define LINRE_FUZZER_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linre/engine.hpp"

namespace linre {

struct FuzzProfile {
  int max_depth = 6;
  int max_nodes = 25;
  bool lookarounds = true;
  bool anchors = true;
  bool classes = true;
  bool counted = true;
  int max_count = 5;
  int max_string = 12;
  // Share of patterns allowed to keep a lazy nullable plus (error-path cases).
  double lazy_nullable_plus_rate = 0.02;
  uint64_t step_budget = 1'000'000;

  // Missing keys keep their defaults. Throws on malformed JSON.
  static FuzzProfile from_json(std::string_view text);
};

std::string gen_regex(uint64_t seed, const FuzzProfile& profile);
// Characters drawn from the pattern's literals plus one character outside.
std::u32string gen_string(uint64_t seed, std::string_view pattern, const FuzzProfile& profile);

enum class CaseStatus { kAgree, kMismatch, kSkipped, kRejected };

struct CaseOutcome {
  CaseStatus status = CaseStatus::kAgree;
  // Some run executed more than |program| * (|s|+1) instructions.
  bool bound_violation = false;
  double max_run_ratio = 0;
  std::string detail;
};

// Linear engine (and the 3-phase pipeline when auto picks streaming) versus
// the backtracker. Lazy nullable plusses must be rejected by the linear
// engine; the case then counts as kRejected.
CaseOutcome compare_case(std::string_view pattern, std::u32string_view text, const EngineOptions& opts,
                         const FuzzProfile& profile);

struct Reproducer {
  std::string pattern;
  std::u32string text;
  std::string detail;
};

struct FuzzReport {
  uint64_t cases = 0;
  uint64_t agreed = 0;
  uint64_t mismatches = 0;
  uint64_t skipped = 0;
  uint64_t rejected = 0;
  uint64_t bound_violations = 0;
  double max_run_ratio = 0;
  std::vector<Reproducer> reproducers;  // shrunk

  double skip_rate() const { return cases ? static_cast<double>(skipped) / cases : 0.0; }
  FuzzReport& operator+=(const FuzzReport& o);
};

// Deletes AST nodes and string characters while the mismatch persists.
Reproducer shrink(const Reproducer& r, const EngineOptions& opts, const FuzzProfile& profile);

FuzzReport fuzz_campaign(uint64_t n, uint64_t seed, const FuzzProfile& profile, const EngineOptions& opts = {},
                         size_t max_reproducers = 10);
FuzzReport fuzz_strings(std::string_view pattern, const std::vector<std::u32string>& texts,
                        const EngineOptions& opts = {}, const FuzzProfile& profile = {});

// Writes reproducers as `pattern\nstring\n`, one file each; returns paths.
std::vector<std::string> write_reproducers(const std::vector<Reproducer>& rs, const std::string& dir);

}  // namespace linre

#endif  // LINRE_FUZZER_HPP_
