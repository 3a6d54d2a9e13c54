#include "linre/common.hpp"

#include <string>

#include "linre/utf8.hpp"

namespace linre {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax-error";
    case ErrorCode::kUnsupported: return "unsupported-feature";
    case ErrorCode::kLazyNullablePlus: return "lazy-nullable-plus-unsupported";
    case ErrorCode::kResourceLimit: return "resource-limit";
    case ErrorCode::kIneligible: return "ineligible-regex";
    case ErrorCode::kInternal: return "internal-error";
  }
  return "unknown";
}

std::string format_result(const MatchResult& result) {
  std::string out;
  for (size_t g = 0; g < result.size(); ++g) {
    out += "group " + std::to_string(g) + ": ";
    if (result[g]) {
      out += std::to_string(result[g]->start) + "," + std::to_string(result[g]->end);
    } else {
      out += "undefined";
    }
    out += '\n';
  }
  return out;
}

std::string format_result_json(const MatchResult& result) {
  std::string out = "{";
  for (size_t g = 0; g < result.size(); ++g) {
    if (g > 0) out += ",";
    out += "\"" + std::to_string(g) + "\":";
    if (result[g]) {
      out += "[" + std::to_string(result[g]->start) + "," + std::to_string(result[g]->end) + "]";
    } else {
      out += "null";
    }
  }
  out += "}";
  return out;
}

std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b < 0x80) {
      len = 1;
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      unsigned char c = static_cast<unsigned char>(s[i + k]);
      if ((c & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok || cp > 0x10FFFF) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void utf8_append(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string utf8_encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) utf8_append(out, c);
  return out;
}

}  // namespace linre
