#ifndef LINRE_TESTS_TEST_UTIL_HPP_
#define LINRE_TESTS_TEST_UTIL_HPP_

#include <initializer_list>
#include <optional>
#include <string>

#include "linre/common.hpp"
#include "linre/utf8.hpp"

namespace linre::testing {

inline std::u32string U(std::string_view s) { return utf8_decode(s); }

// Result literal: {{0, 3}, {0, 1}, std::nullopt}.
inline MatchResult R(std::initializer_list<std::optional<Span>> groups) { return MatchResult(groups); }

inline std::string show(const std::optional<MatchResult>& r) { return r ? format_result_json(*r) : "null"; }

}  // namespace linre::testing

#endif  // LINRE_TESTS_TEST_UTIL_HPP_
