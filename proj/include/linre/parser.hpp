#ifndef LINRE_PARSER_HPP_
#define LINRE_PARSER_HPP_

#include <string>
#include <string_view>

#include "linre/ast.hpp"

namespace linre {

// Parses a bare pattern (no delimiters, no flags). Throws RegexError.
// `e?` becomes CountedRep{0,1}.
Regex parse(std::string_view pattern);
Regex parse(std::u32string_view pattern);

// Pattern text for the subtree. Reparsing the output of a parsed tree yields
// a structurally equal tree.
std::string to_pattern(const Regex& re, NodeId id);
inline std::string to_pattern(const Regex& re) { return to_pattern(re, re.root()); }
// Bracket form of a class, e.g. [^a-c].
std::string class_to_pattern(const CharClass& cls);

}  // namespace linre

#endif  // LINRE_PARSER_HPP_
