// Shared vocabulary types for the linre engine.

#ifndef LINRE_COMMON_HPP_
#define LINRE_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace linre {

// Positions are code-point indices. -1 marks an undefined register.
using Pos = int64_t;
inline constexpr Pos kUndefined = -1;

enum class Direction : uint8_t { kForward, kBackward };

struct Span {
  Pos start = 0;
  Pos end = 0;
  bool operator==(const Span&) const = default;
};

// Per-group capture results; index 0 is the whole match.
using MatchResult = std::vector<std::optional<Span>>;

enum class ErrorCode {
  kSyntax,
  kUnsupported,
  kLazyNullablePlus,
  kResourceLimit,
  kIneligible,
  kInternal,
};

class RegexError : public std::runtime_error {
 public:
  RegexError(ErrorCode code, const std::string& msg, int64_t offset = -1)
      : std::runtime_error(msg), code_(code), offset_(offset) {}

  ErrorCode code() const { return code_; }
  // Offset into the pattern (code points) for syntax errors, else -1.
  int64_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  int64_t offset_;
};

const char* error_code_name(ErrorCode code);

// Text records: "group <id>: <start>,<end>" or "group <id>: undefined".
std::string format_result(const MatchResult& result);
// One-line JSON object mapping group ids to [start,end] or null.
std::string format_result_json(const MatchResult& result);

}  // namespace linre

#endif  // LINRE_COMMON_HPP_
