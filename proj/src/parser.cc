#include "linre/parser.hpp"

#include <climits>
#include <string>

#include "linre/common.hpp"
#include "linre/utf8.hpp"

namespace linre {

namespace {

constexpr int kMaxNesting = 1000;

const std::vector<CharRange>& digit_ranges() {
  static const std::vector<CharRange> r{{'0', '9'}};
  return r;
}

const std::vector<CharRange>& word_ranges() {
  static const std::vector<CharRange> r{{'0', '9'}, {'A', 'Z'}, {'_', '_'}, {'a', 'z'}};
  return r;
}

const std::vector<CharRange>& space_ranges() {
  static const std::vector<CharRange> r{{0x09, 0x0D}, {0x20, 0x20},     {0xA0, 0xA0},
                                        {0x1680, 0x1680}, {0x2000, 0x200A}, {0x2028, 0x2029},
                                        {0x202F, 0x202F}, {0x205F, 0x205F}, {0x3000, 0x3000},
                                        {0xFEFF, 0xFEFF}};
  return r;
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::u32string_view src) : src_(src) {}

  Regex run() {
    NodeId root = disjunction();
    if (pos_ < src_.size()) {
      // Only an unmatched ')' can stop the top-level disjunction early.
      fail("unmatched ')'");
    }
    re_.set_root(root);
    re_.finalize(true);
    return std::move(re_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw RegexError(ErrorCode::kSyntax, msg + " at offset " + std::to_string(pos_),
                     static_cast<int64_t>(pos_));
  }
  [[noreturn]] void unsupported(const std::string& what) {
    throw RegexError(ErrorCode::kUnsupported, what + " not supported (offset " + std::to_string(pos_) + ")",
                     static_cast<int64_t>(pos_));
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char32_t peek(size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : 0; }
  bool lookahead(std::u32string_view s) const { return src_.substr(pos_, s.size()) == s; }

  NodeId leaf(NodeKind kind) {
    Node n;
    n.kind = kind;
    return re_.add(n);
  }
  NodeId binary(NodeKind kind, NodeId l, NodeId r) {
    Node n;
    n.kind = kind;
    n.lhs = l;
    n.rhs = r;
    return re_.add(n);
  }
  NodeId char_node(char32_t c) {
    Node n;
    n.kind = NodeKind::kChar;
    n.ch = c;
    return re_.add(n);
  }
  NodeId class_node(CharClass cls) {
    Node n;
    n.kind = NodeKind::kClass;
    n.cls = re_.add_class(std::move(cls));
    return re_.add(n);
  }

  NodeId disjunction() {
    if (++depth_ > kMaxNesting) {
      throw RegexError(ErrorCode::kResourceLimit, "pattern nesting too deep", static_cast<int64_t>(pos_));
    }
    NodeId left = alternative();
    NodeId result = left;
    if (!at_end() && peek() == '|') {
      ++pos_;
      result = binary(NodeKind::kUnion, left, disjunction());
    }
    --depth_;
    return result;
  }

  NodeId alternative() {
    NodeId acc = kNoNode;
    while (!at_end() && peek() != '|' && peek() != ')') {
      NodeId t = term();
      acc = acc == kNoNode ? t : binary(NodeKind::kConcat, acc, t);
    }
    return acc == kNoNode ? leaf(NodeKind::kEpsilon) : acc;
  }

  NodeId anchor(AnchorKind k) {
    Node n;
    n.kind = NodeKind::kAnchor;
    n.anchor = k;
    return re_.add(n);
  }

  NodeId term() {
    char32_t c = peek();
    NodeId atom_id = kNoNode;
    bool quantifiable = true;
    if (c == '^' || c == '$') {
      ++pos_;
      atom_id = anchor(c == '^' ? AnchorKind::kBegin : AnchorKind::kEnd);
      quantifiable = false;
    } else if (c == '\\' && (peek(1) == 'b' || peek(1) == 'B')) {
      atom_id = anchor(peek(1) == 'b' ? AnchorKind::kWordBoundary : AnchorKind::kNonWordBoundary);
      pos_ += 2;
      quantifiable = false;
    } else if (c == '(') {
      atom_id = group(&quantifiable);
    } else {
      atom_id = atom();
    }
    int32_t mn = 0, mx = 0;
    QuantKind qk = QuantKind::kStar;
    bool counted = false;
    if (!parse_quantifier(&mn, &mx, &qk, &counted)) return atom_id;
    if (!quantifiable) fail("nothing to repeat");
    bool greedy = true;
    if (!at_end() && peek() == '?') {
      ++pos_;
      greedy = false;
    }
    Node n;
    n.lhs = atom_id;
    n.greedy = greedy;
    if (counted) {
      n.kind = NodeKind::kCountedRep;
      n.min = mn;
      n.max = mx;
    } else {
      n.kind = NodeKind::kQuantified;
      n.quant = qk;
    }
    return re_.add(n);
  }

  // Reads a quantifier at the cursor. Returns false (cursor untouched) if
  // there is none; a '{' that does not form a bound is left as a literal.
  bool parse_quantifier(int32_t* mn, int32_t* mx, QuantKind* qk, bool* counted) {
    if (at_end()) return false;
    char32_t c = peek();
    if (c == '*' || c == '+') {
      ++pos_;
      *qk = c == '*' ? QuantKind::kStar : QuantKind::kPlus;
      *counted = false;
      return true;
    }
    if (c == '?') {
      ++pos_;
      *mn = 0;
      *mx = 1;
      *counted = true;
      return true;
    }
    if (c == '{') {
      size_t save = pos_;
      if (read_bounds(mn, mx)) {
        if (*mx != kUnbounded && *mx < *mn) fail("numbers out of order in {} quantifier");
        *counted = true;
        return true;
      }
      pos_ = save;
    }
    return false;
  }

  bool read_number(int32_t* out) {
    if (at_end() || !is_digit(peek())) return false;
    int64_t v = 0;
    while (!at_end() && is_digit(peek())) {
      v = v * 10 + (peek() - '0');
      if (v > INT32_MAX - 1) v = INT32_MAX - 1;
      ++pos_;
    }
    *out = static_cast<int32_t>(v);
    return true;
  }

  bool read_bounds(int32_t* mn, int32_t* mx) {
    ++pos_;  // '{'
    if (!read_number(mn)) return false;
    if (!at_end() && peek() == '}') {
      ++pos_;
      *mx = *mn;
      return true;
    }
    if (at_end() || peek() != ',') return false;
    ++pos_;
    if (!at_end() && peek() == '}') {
      ++pos_;
      *mx = kUnbounded;
      return true;
    }
    if (!read_number(mx)) return false;
    if (at_end() || peek() != '}') return false;
    ++pos_;
    return true;
  }

  NodeId group(bool* quantifiable) {
    size_t open = pos_;
    ++pos_;  // '('
    NodeKind kind = NodeKind::kGroup;
    LookKind look = LookKind::kAhead;
    if (lookahead(U"?:")) {
      pos_ += 2;
      kind = NodeKind::kNonCapGroup;
    } else if (lookahead(U"?=") || lookahead(U"?!")) {
      look = peek(1) == '=' ? LookKind::kAhead : LookKind::kNegAhead;
      pos_ += 2;
      kind = NodeKind::kLookaround;
    } else if (lookahead(U"?<=") || lookahead(U"?<!")) {
      look = peek(2) == '=' ? LookKind::kBehind : LookKind::kNegBehind;
      pos_ += 3;
      kind = NodeKind::kLookaround;
      *quantifiable = false;
    } else if (lookahead(U"?<")) {
      unsupported("named group");
    } else if (peek() == '?') {
      char32_t f = peek(1);
      if ((f >= 'a' && f <= 'z') || (f >= 'A' && f <= 'Z') || f == '-') unsupported("flags");
      fail("invalid group");
    }
    NodeId body = disjunction();
    if (at_end() || peek() != ')') {
      pos_ = open;
      fail("unterminated group");
    }
    ++pos_;
    Node n;
    n.kind = kind;
    n.lhs = body;
    n.look = look;
    return re_.add(n);
  }

  NodeId atom() {
    char32_t c = peek();
    switch (c) {
      case '*':
      case '+':
      case '?':
        fail("nothing to repeat");
      case '{': {
        size_t save = pos_;
        int32_t a, b;
        if (read_bounds(&a, &b)) {
          pos_ = save;
          fail("nothing to repeat");
        }
        pos_ = save + 1;
        return char_node('{');
      }
      case '.':
        ++pos_;
        return leaf(NodeKind::kAnyChar);
      case '[':
        return bracket_class();
      case '\\':
        return atom_escape();
      default:
        ++pos_;
        return char_node(c);
    }
  }

  // Escapes shared by atoms and classes. Returns true and fills `cls` for
  // class escapes (\d \w \s and negations), otherwise fills `ch`.
  bool escape(bool in_class, char32_t* ch, CharClass* cls) {
    ++pos_;  // '\'
    if (at_end()) fail("\\ at end of pattern");
    char32_t c = peek();
    ++pos_;
    switch (c) {
      case 'd':
      case 'D':
      case 'w':
      case 'W':
      case 's':
      case 'S': {
        const std::vector<CharRange>& base =
            (c == 'd' || c == 'D') ? digit_ranges() : (c == 'w' || c == 'W') ? word_ranges() : space_ranges();
        cls->ranges = base;
        cls->negated = (c == 'D' || c == 'W' || c == 'S');
        return true;
      }
      case 'n': *ch = '\n'; return false;
      case 't': *ch = '\t'; return false;
      case 'r': *ch = '\r'; return false;
      case 'f': *ch = '\f'; return false;
      case 'v': *ch = '\v'; return false;
      case 'b':
        // Only reachable inside a class; outside it is a word boundary.
        *ch = 0x08;
        return false;
      case '0':
        if (!at_end() && is_digit(peek())) {
          --pos_;
          unsupported("octal escape");
        }
        *ch = 0;
        return false;
      case 'x':
      case 'u':
        pos_ -= 2;
        unsupported("hex/Unicode escape");
      case 'p':
      case 'P':
        pos_ -= 2;
        unsupported("Unicode property escape");
      case 'c':
        pos_ -= 2;
        unsupported("control escape");
      case 'k':
        pos_ -= 2;
        unsupported("named backreference");
      default:
        if (c >= '1' && c <= '9') {
          pos_ -= 2;
          unsupported(in_class ? "octal escape" : "backreference");
        }
        *ch = c;
        return false;
    }
  }

  NodeId atom_escape() {
    char32_t ch = 0;
    CharClass cls;
    if (escape(false, &ch, &cls)) return class_node(std::move(cls));
    return char_node(ch);
  }

  // One class item: a single code point or a class escape.
  bool class_atom(char32_t* ch, CharClass* cls) {
    if (peek() == '\\') return escape(true, ch, cls);
    *ch = peek();
    ++pos_;
    return false;
  }

  static void add_escape_class(CharClass& out, const CharClass& esc) {
    out.add_all(esc.negated ? complement_ranges(esc.ranges) : esc.ranges);
  }

  NodeId bracket_class() {
    size_t open = pos_;
    ++pos_;  // '['
    CharClass out;
    if (!at_end() && peek() == '^') {
      out.negated = true;
      ++pos_;
    }
    while (true) {
      if (at_end()) {
        pos_ = open;
        fail("unterminated character class");
      }
      if (peek() == ']') {
        ++pos_;
        break;
      }
      char32_t lo = 0;
      CharClass lo_cls;
      bool lo_is_class = class_atom(&lo, &lo_cls);
      if (!at_end() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
        ++pos_;
        char32_t hi = 0;
        CharClass hi_cls;
        bool hi_is_class = class_atom(&hi, &hi_cls);
        if (lo_is_class || hi_is_class) {
          // Annex B: a class escape next to '-' makes the dash literal.
          if (lo_is_class) add_escape_class(out, lo_cls); else out.add(lo, lo);
          out.add('-', '-');
          if (hi_is_class) add_escape_class(out, hi_cls); else out.add(hi, hi);
          continue;
        }
        if (hi < lo) fail("range out of order in character class");
        out.add(lo, hi);
        continue;
      }
      if (lo_is_class) {
        add_escape_class(out, lo_cls);
      } else {
        out.add(lo, lo);
      }
    }
    out.normalize();
    return class_node(std::move(out));
  }

  std::u32string_view src_;
  size_t pos_ = 0;
  int depth_ = 0;
  Regex re_;
};

// Printing.

bool is_syntax_char(char32_t c) {
  switch (c) {
    case '^': case '$': case '\\': case '.': case '*': case '+': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}': case '|': case '/':
      return true;
    default:
      return false;
  }
}

void append_control_or_raw(std::string& out, char32_t c) {
  switch (c) {
    case '\n': out += "\\n"; return;
    case '\t': out += "\\t"; return;
    case '\r': out += "\\r"; return;
    case '\f': out += "\\f"; return;
    case '\v': out += "\\v"; return;
    case 0: out += "\\0"; return;
    default: utf8_append(out, c);
  }
}

void append_pattern_char(std::string& out, char32_t c) {
  if (is_syntax_char(c)) out.push_back('\\');
  append_control_or_raw(out, c);
}

void append_class_char(std::string& out, char32_t c) {
  if (c == '\\' || c == ']' || c == '[' || c == '^' || c == '-') out.push_back('\\');
  if (c == 0x08) {
    out += "\\b";
    return;
  }
  append_control_or_raw(out, c);
}

class Printer {
 public:
  explicit Printer(const Regex& re) : re_(re) {}

  void print(NodeId id, std::string& out) {
    const Node& n = re_.node(id);
    switch (n.kind) {
      case NodeKind::kChar:
        append_pattern_char(out, n.ch);
        return;
      case NodeKind::kAnyChar:
        out += '.';
        return;
      case NodeKind::kClass:
        out += class_to_pattern(re_.char_class(n.cls));
        return;
      case NodeKind::kEpsilon:
        return;
      case NodeKind::kConcat:
        print_concat_operand(n.lhs, out);
        print_concat_operand(n.rhs, out);
        return;
      case NodeKind::kUnion:
        if (re_.node(n.lhs).kind == NodeKind::kUnion) {
          wrap(n.lhs, out);
        } else {
          print(n.lhs, out);
        }
        out += '|';
        print(n.rhs, out);
        return;
      case NodeKind::kQuantified:
        print_atom(n.lhs, out);
        out += n.quant == QuantKind::kStar ? '*' : '+';
        if (!n.greedy) out += '?';
        return;
      case NodeKind::kCountedRep:
        print_counted(id, out);
        return;
      case NodeKind::kGroup:
        out += '(';
        print(n.lhs, out);
        out += ')';
        return;
      case NodeKind::kNonCapGroup:
        wrap(n.lhs, out);
        return;
      case NodeKind::kLookaround: {
        static const char* open[] = {"(?=", "(?!", "(?<=", "(?<!"};
        out += open[static_cast<int>(n.look)];
        print(n.lhs, out);
        out += ')';
        return;
      }
      case NodeKind::kAnchor: {
        static const char* text[] = {"^", "$", "\\b", "\\B"};
        out += text[static_cast<int>(n.anchor)];
        return;
      }
    }
  }

 private:
  void wrap(NodeId id, std::string& out) {
    out += "(?:";
    print(id, out);
    out += ')';
  }

  void print_concat_operand(NodeId id, std::string& out) {
    if (re_.node(id).kind == NodeKind::kUnion) {
      wrap(id, out);
    } else {
      print(id, out);
    }
  }

  void print_atom(NodeId id, std::string& out) {
    const Node& n = re_.node(id);
    bool atomic = false;
    switch (n.kind) {
      case NodeKind::kChar:
      case NodeKind::kAnyChar:
      case NodeKind::kClass:
      case NodeKind::kGroup:
      case NodeKind::kNonCapGroup:
        atomic = true;
        break;
      case NodeKind::kLookaround:
        atomic = !is_behind(n.look);
        break;
      default:
        break;
    }
    if (atomic) {
      print(id, out);
    } else {
      wrap(id, out);
    }
  }

  void print_counted(NodeId id, std::string& out) {
    const Node& n = re_.node(id);
    if (n.rhs != kNoNode) {
      // Desugared optional layer: (?:e(?:e)?)? style.
      out += "(?:";
      print_atom(n.lhs, out);
      print(n.rhs, out);
      out += ")?";
      if (!n.greedy) out += '?';
      return;
    }
    print_atom(n.lhs, out);
    if (n.min == 0 && n.max == 1) {
      out += '?';
    } else if (n.max == n.min) {
      out += "{" + std::to_string(n.min) + "}";
    } else if (n.max == kUnbounded) {
      out += "{" + std::to_string(n.min) + ",}";
    } else {
      out += "{" + std::to_string(n.min) + "," + std::to_string(n.max) + "}";
    }
    if (!n.greedy) out += '?';
  }

  const Regex& re_;
};

}  // namespace

Regex parse(std::u32string_view pattern) { return Parser(pattern).run(); }

Regex parse(std::string_view pattern) {
  std::u32string text = utf8_decode(pattern);
  return Parser(text).run();
}

std::string class_to_pattern(const CharClass& cls) {
  std::string out = cls.negated ? "[^" : "[";
  for (const CharRange& r : cls.ranges) {
    append_class_char(out, r.lo);
    if (r.hi != r.lo) {
      out += '-';
      append_class_char(out, r.hi);
    }
  }
  out += ']';
  return out;
}

std::string to_pattern(const Regex& re, NodeId id) {
  std::string out;
  if (id != kNoNode) Printer(re).print(id, out);
  return out;
}

}  // namespace linre
