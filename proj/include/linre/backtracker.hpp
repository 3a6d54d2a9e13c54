// Reference matcher: continuation-passing backtracking over the AST in the
// order ECMAScript prescribes. Exponential in the worst case.

#ifndef LINRE_BACKTRACKER_HPP_
#define LINRE_BACKTRACKER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "linre/ast.hpp"
#include "linre/common.hpp"

namespace linre {

struct BacktrackOptions {
  uint64_t step_budget = 10'000'000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("backtracking step budget exceeded") {}
};

// First match in ECMAScript order, or nullopt. `steps` receives the number of
// matcher invocations. Throws BudgetExceeded.
std::optional<MatchResult> bt_match(const Regex& re, std::u32string_view text,
                                    const BacktrackOptions& opts = {}, uint64_t* steps = nullptr);

// Whether the body of lookaround `id` matches at `pos` (starting there for
// lookaheads, ending there for lookbehinds), ignoring the lookaround's sign.
bool bt_lookaround_holds(const Regex& re, int id, std::u32string_view text, Pos pos,
                         const BacktrackOptions& opts = {});

// Whether `node` has an empty-width match at `pos`.
bool bt_matches_empty_at(const Regex& re, NodeId node, std::u32string_view text, Pos pos,
                         const BacktrackOptions& opts = {});

// Runs `fn` on a thread with a `bytes`-sized stack (deep recursion on long
// inputs). Exceptions propagate to the caller.
void run_with_stack(size_t bytes, const std::function<void()>& fn);

}  // namespace linre

#endif  // LINRE_BACKTRACKER_HPP_
