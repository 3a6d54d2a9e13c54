#include <gtest/gtest.h>

#include <set>

#include "linre/analysis.hpp"
#include "linre/backtracker.hpp"
#include "linre/fuzzer.hpp"
#include "linre/parser.hpp"
#include "test_util.hpp"

namespace linre {
namespace {

using testing::U;

ErrorCode parse_error(std::string_view p) {
  try {
    parse(p);
  } catch (const RegexError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << p;
  return ErrorCode::kInternal;
}

TEST(Parser, GroupUnionAndConcat) {
  Regex re = parse("(a|.)b");
  EXPECT_EQ(dump_tree(re, re.root()), "Concat(Group#1(Union(Char a, AnyChar)), Char b)");
}

TEST(Parser, SingleLiteral) {
  Regex re = parse("a");
  EXPECT_EQ(dump_tree(re, re.root()), "Char a");
}

TEST(Parser, QuestionMarkIsCountedRep) {
  Regex re = parse("a?");
  EXPECT_EQ(dump_tree(re, re.root()), "Rep#1{0,1}(Char a)");
  Regex lazy = parse("a??");
  EXPECT_EQ(dump_tree(lazy, lazy.root()), "Rep#1{0,1}Lazy(Char a)");
}

TEST(Parser, QuantifierForms) {
  Regex re = parse("a*b*?c+d+?e{2}f{2,}g{1,3}?");
  EXPECT_EQ(re.num_quantifiers(), 7);
  EXPECT_EQ(dump_tree(re, re.root()),
            "Concat(Concat(Concat(Concat(Concat(Concat(Star#1(Char a), StarLazy#2(Char b)), Plus#3(Char c)), "
            "PlusLazy#4(Char d)), Rep#5{2,2}(Char e)), Rep#6{2,}(Char f)), Rep#7{1,3}Lazy(Char g))");
}

TEST(Parser, PreorderIds) {
  Regex re = parse("((a)(?=(b)(?<!c))*)(?<=d)");
  EXPECT_EQ(re.num_groups(), 3);
  EXPECT_EQ(re.num_lookarounds(), 3);
  EXPECT_EQ(re.num_quantifiers(), 1);
  EXPECT_EQ(re.node(re.group_node(2)).lhs, re.node(re.group_node(2)).lhs);
  EXPECT_EQ(dump_tree(re, re.group_node(3)), "Group#3(Char b)");
  EXPECT_EQ(dump_tree(re, re.lookaround_node(2)), "NegBehind#2(Char c)");
  EXPECT_EQ(dump_tree(re, re.lookaround_node(3)), "Behind#3(Char d)");
}

TEST(Parser, NestedLookaroundIdsIncreaseInward) {
  FuzzProfile p;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    for (int l = 1; l <= re.num_lookarounds(); ++l) {
      for (NodeId up = re.parent(re.lookaround_node(l)); up != kNoNode; up = re.parent(up)) {
        if (re.node(up).kind == NodeKind::kLookaround) {
          EXPECT_LT(re.node(up).id, l);
        }
      }
    }
  }
}

TEST(Parser, ClassesAndEscapes) {
  Regex re = parse("[a-c\\d][^x]\\w\\s\\.");
  ASSERT_EQ(re.classes().size(), 4u);
  EXPECT_TRUE(re.char_class(0).contains('b'));
  EXPECT_TRUE(re.char_class(0).contains('7'));
  EXPECT_FALSE(re.char_class(0).contains('d'));
  EXPECT_FALSE(re.char_class(1).contains('x'));
  EXPECT_TRUE(re.char_class(1).contains('y'));
  EXPECT_TRUE(re.char_class(2).contains('_'));
  EXPECT_TRUE(re.char_class(3).contains(' '));
}

TEST(Parser, Anchors) {
  Regex re = parse("^\\b\\B$");
  EXPECT_EQ(dump_tree(re, re.root()), "Concat(Concat(Concat(Begin, WordBoundary), NonWordBoundary), End)");
}

TEST(Parser, EmptyAlternatives) {
  Regex re = parse("|a|");
  EXPECT_EQ(dump_tree(re, re.root()), "Union(Epsilon, Union(Char a, Epsilon))");
}

TEST(Parser, UnsupportedFeatures) {
  EXPECT_EQ(parse_error("(a*)b\\1"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("(?<n>a)"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("\\u0041"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("\\x41"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("\\p{L}"), ErrorCode::kUnsupported);
  EXPECT_EQ(parse_error("(?i)a"), ErrorCode::kUnsupported);
}

TEST(Parser, BackreferenceMessageNamesIt) {
  try {
    parse("(a*)b\\1");
    FAIL();
  } catch (const RegexError& e) {
    EXPECT_NE(std::string(e.what()).find("backreference"), std::string::npos);
  }
}

TEST(Parser, SyntaxErrors) {
  EXPECT_EQ(parse_error("*a"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("(a"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("a)"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("[a"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("[z-a]"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("a{3,2}"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("a**"), ErrorCode::kSyntax);
  EXPECT_EQ(parse_error("(?<=a)*"), ErrorCode::kSyntax);
}

TEST(Parser, SyntaxErrorOffset) {
  try {
    parse("ab(c");
    FAIL();
  } catch (const RegexError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSyntax);
    EXPECT_GE(e.offset(), 2);
  }
}

TEST(Parser, NestingLimit) {
  std::string deep(5000, '(');
  deep += std::string(5000, ')');
  EXPECT_EQ(parse_error(deep), ErrorCode::kResourceLimit);
}

TEST(Parser, PrintParseIdentity) {
  FuzzProfile p;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    std::string printed = to_pattern(re);
    Regex again = parse(printed);
    ASSERT_TRUE(structurally_equal(re, re.root(), again, again.root())) << printed;
  }
  for (const char* s : {"[\\]a]", "a\\/b", "\\^\\$", "(?:a|b)*", "a{2,}?", "[^\\-a]", "\\n\\t"}) {
    Regex re = parse(s);
    Regex again = parse(to_pattern(re));
    EXPECT_TRUE(structurally_equal(re, re.root(), again, again.root())) << s;
  }
}

Nullability null_of(std::string_view p) {
  Regex re = parse(p);
  return re.nullability(re.root());
}

TEST(Nullability, Rules) {
  EXPECT_EQ(null_of("a"), Nullability::kNN);
  EXPECT_EQ(null_of("."), Nullability::kNN);
  EXPECT_EQ(null_of("[ab]"), Nullability::kNN);
  EXPECT_EQ(null_of("a*"), Nullability::kCIN);
  EXPECT_EQ(null_of("(?:ab)*?"), Nullability::kCIN);
  EXPECT_EQ(null_of("a|(?=b)"), Nullability::kCDN);
  EXPECT_EQ(null_of("a|"), Nullability::kCIN);
  EXPECT_EQ(null_of("^"), Nullability::kCDN);
  EXPECT_EQ(null_of("\\b"), Nullability::kCDN);
  EXPECT_EQ(null_of("(?<!a)"), Nullability::kCDN);
  EXPECT_EQ(null_of("a(?=b)"), Nullability::kNN);
  EXPECT_EQ(null_of("^a*"), Nullability::kCDN);
  EXPECT_EQ(null_of("(?:a|^)+"), Nullability::kCDN);
  EXPECT_EQ(null_of("a+"), Nullability::kNN);
  EXPECT_EQ(null_of("a{0,3}"), Nullability::kCIN);
  EXPECT_EQ(null_of("a{2,3}"), Nullability::kNN);
  EXPECT_EQ(null_of("(?:\\b){2}"), Nullability::kCDN);
  EXPECT_EQ(null_of("a?"), Nullability::kCIN);
}

// NN never matches empty; CIN always does.
TEST(Nullability, OverApproximation) {
  FuzzProfile p;
  int nn = 0, cin = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    std::string pattern = gen_regex(seed, p);
    Regex re = parse(pattern);
    std::u32string text = gen_string(seed, pattern, p);
    for (NodeId id = 0; id < static_cast<NodeId>(re.size()); ++id) {
      Nullability n = re.nullability(id);
      if (n == Nullability::kCDN) continue;
      for (Pos pos = 0; pos <= static_cast<Pos>(text.size()); ++pos) {
        bool empty;
        try {
          empty = bt_matches_empty_at(re, id, text, pos);
        } catch (const BudgetExceeded&) {
          continue;
        }
        if (n == Nullability::kNN) {
          ++nn;
          ASSERT_FALSE(empty) << pattern << " node " << dump_tree(re, id) << " at " << pos;
        } else {
          ++cin;
          ASSERT_TRUE(empty) << pattern << " node " << dump_tree(re, id) << " at " << pos;
        }
      }
    }
  }
  EXPECT_GT(nn, 1000);
  EXPECT_GT(cin, 100);
}

TEST(Reverse, ConcatSpellsBackward) {
  Regex re = parse("a(?:bc)");
  Regex rev = reverse(re);
  EXPECT_EQ(dump_tree(rev, rev.root()), "Concat(NonCap(Concat(Char c, Char b)), Char a)");
  EXPECT_TRUE(bt_match(rev, U("cba")).has_value());
  EXPECT_FALSE(bt_match(rev, U("abc")).has_value());
}

TEST(Reverse, LeafFixedPoint) {
  Regex re = parse("a");
  Regex rev = reverse(re);
  EXPECT_TRUE(structurally_equal(re, re.root(), rev, rev.root()));
}

TEST(Reverse, LookaroundKindsUnchanged) {
  Regex rev = reverse(parse("(?=a)(?<!b)"));
  EXPECT_EQ(dump_tree(rev, rev.root()), "Concat(NegBehind#2(Char b), Ahead#1(Char a))");
}

std::multiset<int> ids_of(const Regex& re) {
  std::multiset<int> ids;
  for (NodeId i = 0; i < static_cast<NodeId>(re.size()); ++i) {
    NodeKind k = re.node(i).kind;
    if (k == NodeKind::kGroup || k == NodeKind::kQuantified || k == NodeKind::kCountedRep ||
        k == NodeKind::kLookaround) {
      ids.insert(static_cast<int>(k) * 1000 + re.node(i).id);
    }
  }
  return ids;
}

TEST(Reverse, InvolutionAndPreservation) {
  FuzzProfile p;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    Regex rev = reverse(re);
    EXPECT_EQ(rev.reachable_count(), re.reachable_count());
    EXPECT_EQ(ids_of(rev), ids_of(re));
    Regex back = reverse(rev);
    ASSERT_TRUE(structurally_equal(re, re.root(), back, back.root())) << to_pattern(re);
  }
}

// Some substring of s matches a lookaround- and anchor-free regex iff some
// substring of reversed s matches its reverse.
TEST(Reverse, ReversedStrings) {
  FuzzProfile p;
  p.lookarounds = false;
  p.anchors = false;
  int checked = 0;
  for (uint64_t seed = 0; seed < 400; ++seed) {
    std::string pattern = gen_regex(seed, p);
    Regex re = parse(pattern);
    Regex rev = reverse(re);
    std::u32string s = gen_string(seed, pattern, p);
    std::u32string r(s.rbegin(), s.rend());
    try {
      EXPECT_EQ(bt_match(re, s).has_value(), bt_match(rev, r).has_value()) << pattern;
      ++checked;
    } catch (const BudgetExceeded&) {
    }
  }
  EXPECT_GT(checked, 350);
}

TEST(Desugar, OptionalLayers) {
  Regex re = desugar_counted(parse("a{0,2}"));
  EXPECT_EQ(dump_tree(re, re.root()), "Rep#1{0,1}(Char a; Rep#1{0,1}(Char a))");
}

TEST(Desugar, MandatoryCopies) {
  Regex re = desugar_counted(parse("a{2}"));
  EXPECT_EQ(dump_tree(re, re.root()), "Concat(Rep#1{1,1}(Char a), Rep#1{1,1}(Char a))");
}

TEST(Desugar, Unbounded) {
  Regex re = desugar_counted(parse("(a){1,}"));
  EXPECT_EQ(dump_tree(re, re.root()), "Concat(Rep#1{1,1}(Group#1(Char a)), Star#1(Group#1(Char a)))");
}

TEST(Desugar, LimitIsResourceError) {
  EXPECT_THROW(desugar_counted(parse("a{1001}")), RegexError);
  try {
    desugar_counted(parse("a{0,5000}"));
  } catch (const RegexError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceLimit);
  }
  EXPECT_NO_THROW(desugar_counted(parse("a{1000}")));
}

TEST(Desugar, OptionalRepsMayNotMatchEmpty) {
  Regex re = desugar_counted(parse("(?:(?:a|)(?:|b)){0,7}"));
  auto r = bt_match(re, U("ab"));
  ASSERT_TRUE(r);
  EXPECT_EQ((*r)[0], (Span{0, 2}));
}

}  // namespace
}  // namespace linre
