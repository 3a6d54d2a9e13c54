#ifndef LINRE_COMPILER_HPP_
#define LINRE_COMPILER_HPP_

#include <cstddef>
#include <memory>

#include "linre/ast.hpp"
#include "linre/program.hpp"

namespace linre {

enum class CompileMode : uint8_t { kDefault, kLegacyClearReg };

struct CompileOptions {
  CompileMode mode = CompileMode::kDefault;
  // Main programs only: the Fork/ConsumeAny/Jump search loop and SetReg 0/1.
  bool unanchored_prefix = true;
  bool capture_whole_match = true;
  // Test-only: compile e+ as e e* (exponential in plus nesting).
  bool expand_plus = false;
  // Test-only mutant: alternation forks prefer the right branch.
  bool swap_alternation = false;
  size_t max_instructions = 4'000'000;
};

// Streaming is possible iff every lookaround is a lookbehind without capture
// groups and, when lookbehinds exist, no nullable greedy plus holds a group.
bool streaming_eligible(const Regex& re);

// The regex is shared so the program can evaluate CheckNull on its source.
using RegexPtr = std::shared_ptr<const Regex>;

// `.*?(r)` with group 0. Throws kLazyNullablePlus.
Program compile_main(const RegexPtr& re, const CompileOptions& opts = {});
Program compile_main(const Regex& re, const CompileOptions& opts = {});

// Phase-1 program for lookaround `id`: search loop, group-free body,
// WriteOracle. Lookbehinds run forward over `fwd`; lookaheads run backward
// over `rev` (reverse(fwd)).
Program compile_oracle_pass(const RegexPtr& fwd, const RegexPtr& rev, int id,
                            const CompileOptions& opts = {});

// Lookbehind automata (innermost first) plus the main automaton in one
// program. Throws kIneligible if !streaming_eligible.
Program compile_streaming(const RegexPtr& re, const CompileOptions& opts = {});

// Anchored program binding the groups of positive lookaround `id`.
Program compile_lookaround_reconstruction(const RegexPtr& fwd, const RegexPtr& rev, int id,
                                          const CompileOptions& opts = {});

// Empty-path program for the body of nullable plus `qid`; nested nullable
// plusses keep only their null path.
Program compile_plus_reconstruction(const RegexPtr& fwd, int qid, const CompileOptions& opts = {});

}  // namespace linre

#endif  // LINRE_COMPILER_HPP_
