#ifndef LINRE_UTF8_HPP_
#define LINRE_UTF8_HPP_

#include <string>
#include <string_view>

namespace linre {

// Malformed sequences decode to U+FFFD, one per offending byte.
std::u32string utf8_decode(std::string_view bytes);
std::string utf8_encode(std::u32string_view text);
void utf8_append(std::string& out, char32_t c);

}  // namespace linre

#endif  // LINRE_UTF8_HPP_
