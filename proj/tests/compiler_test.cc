#include <gtest/gtest.h>

#include <map>

#include "linre/analysis.hpp"
#include "linre/compiler.hpp"
#include "linre/engine.hpp"
#include "linre/fuzzer.hpp"
#include "linre/parser.hpp"

namespace linre {
namespace {

constexpr const char* kLookbehindInLookahead = "(c)(?:a(?=a*(?<=c(a*))b))*";

std::string join(std::initializer_list<const char*> lines) {
  std::string out;
  for (const char* l : lines) out += std::string(l) + "\n";
  return out;
}

CompileOptions bare() {
  CompileOptions o;
  o.unanchored_prefix = false;
  o.capture_whole_match = false;
  return o;
}

TEST(Compiler, TaggedNfaListing) {
  Program p = compile_main(parse("(a|.)b"), bare());
  EXPECT_EQ(listing(p), join({"0: SetReg #1:entry", "1: Fork 2 4", "2: Consume a", "3: Jump 5", "4: ConsumeAny",
                              "5: SetReg #1:exit", "6: Consume b", "7: Accept"}));
}

TEST(Compiler, WorkedExampleMain) {
  Engine e(kLookbehindInLookahead);
  EXPECT_EQ(e.pipeline(), Pipeline::kOracle);
  EXPECT_EQ(listing(e.main_program()),
            join({"0: Fork 3 1", "1: ConsumeAny", "2: Jump 0", "3: SetReg #0:entry", "4: SetReg #1:entry",
                  "5: Consume c", "6: SetReg #1:exit", "7: Fork 8 12", "8: SetQuant 1", "9: Consume a",
                  "10: CheckOracle 1", "11: Jump 7", "12: SetReg #0:exit", "13: Accept"}));
}

TEST(Compiler, WorkedExampleOraclePasses) {
  Engine e(kLookbehindInLookahead);
  const Program& inner = e.oracle_program(2);
  EXPECT_EQ(inner.direction, Direction::kForward);
  EXPECT_EQ(listing(inner), join({"0: Fork 3 1", "1: ConsumeAny", "2: Jump 0", "3: Consume c", "4: Fork 5 7",
                                  "5: Consume a", "6: Jump 4", "7: WriteOracle 2"}));
  const Program& outer = e.oracle_program(1);
  EXPECT_EQ(outer.direction, Direction::kBackward);
  EXPECT_EQ(listing(outer), join({"0: Fork 3 1", "1: ConsumeAny", "2: Jump 0", "3: Consume b", "4: CheckOracle 2",
                                  "5: Fork 6 8", "6: Consume a", "7: Jump 5", "8: WriteOracle 1"}));
}

TEST(Compiler, WorkedExampleReconstructions) {
  Engine e(kLookbehindInLookahead);
  ASSERT_TRUE(e.lookaround_program(1));
  EXPECT_EQ(e.lookaround_program(1)->direction, Direction::kForward);
  EXPECT_EQ(listing(*e.lookaround_program(1)),
            join({"0: Fork 1 4", "1: SetQuant 2", "2: Consume a", "3: Jump 0", "4: CheckOracle 2", "5: Consume b",
                  "6: Accept"}));
  ASSERT_TRUE(e.lookaround_program(2));
  EXPECT_EQ(e.lookaround_program(2)->direction, Direction::kBackward);
  EXPECT_EQ(listing(*e.lookaround_program(2)),
            join({"0: SetReg #2:entry", "1: Fork 2 5", "2: SetQuant 3", "3: Consume a", "4: Jump 1",
                  "5: SetReg #2:exit", "6: Consume c", "7: Accept"}));
}

TEST(Compiler, SingleCharLookbehindOraclePass) {
  Engine e("x(?<=a)", EngineOptions{{}, Pipeline::kOracle});
  const Program& p = e.oracle_program(1);
  EXPECT_EQ(p.direction, Direction::kForward);
  EXPECT_EQ(listing(p), join({"0: Fork 3 1", "1: ConsumeAny", "2: Jump 0", "3: Consume a", "4: WriteOracle 1"}));
}

TEST(Compiler, ForkPriorities) {
  EXPECT_EQ(listing(compile_main(parse("a|b"), bare())),
            join({"0: Fork 1 3", "1: Consume a", "2: Jump 4", "3: Consume b", "4: Accept"}));
  EXPECT_EQ(listing(compile_main(parse("a*"), bare())),
            join({"0: Fork 1 4", "1: SetQuant 1", "2: Consume a", "3: Jump 0", "4: Accept"}));
  EXPECT_EQ(listing(compile_main(parse("a*?"), bare())),
            join({"0: Fork 4 1", "1: SetQuant 1", "2: Consume a", "3: Jump 0", "4: Accept"}));
}

TEST(Compiler, NullableBodiesGetLoopMarkers) {
  EXPECT_EQ(listing(compile_main(parse("(?:a|)*"), bare())),
            join({"0: Fork 1 8", "1: SetQuant 1", "2: BeginLoop", "3: Fork 4 6", "4: Consume a", "5: Jump 6",
                  "6: EndLoop", "7: Jump 0", "8: Accept"}));
}

TEST(Compiler, NonnullablePlusBackEdge) {
  EXPECT_EQ(listing(compile_main(parse("a+"), bare())),
            join({"0: SetQuant 1", "1: Consume a", "2: Fork 0 3", "3: Accept"}));
}

TEST(Compiler, NullableGreedyPlus) {
  EXPECT_EQ(listing(compile_main(parse("(?:a|)+"), bare())),
            join({"0: Fork 1 8", "1: SetQuant 1", "2: BeginLoop", "3: Fork 4 6", "4: Consume a", "5: Jump 6",
                  "6: EndLoop", "7: Fork 1 9", "8: SetNullPlus 1", "9: Accept"}));
  Program cin = compile_main(parse("(?:a|)+"), bare());
  Program cdn = compile_main(parse("(?:a|^)+"), bare());
  auto count = [](const Program& p, Opcode op) {
    int n = 0;
    for (const Instruction& i : p.code) n += i.op == op;
    return n;
  };
  EXPECT_EQ(count(cin, Opcode::kSetNullPlus), 1);
  EXPECT_EQ(count(cin, Opcode::kCheckNull), 0);
  EXPECT_EQ(count(cdn, Opcode::kSetNullPlus), 1);
  EXPECT_EQ(count(cdn, Opcode::kCheckNull), 1);
}

TEST(Compiler, LazyNullablePlusRejected) {
  try {
    compile_main(parse("(?:a|)+?"));
    FAIL();
  } catch (const RegexError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLazyNullablePlus);
  }
  EXPECT_NO_THROW(compile_main(parse("a+?")));
}

TEST(Compiler, CountedRepetitionMatchesDesugaredForm) {
  FuzzProfile p;
  p.lookarounds = false;
  for (const char* pattern : {"a{0,2}", "a{2}", "(a){1,}", "(?:(?:a|)(?:|b)){0,7}", "(a|b){2,4}?", "(?:a*){3}"}) {
    Regex re = parse(pattern);
    EXPECT_EQ(listing(compile_main(re)), listing(compile_main(desugar_counted(re)))) << pattern;
  }
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    if (has_lazy_nullable_plus(re)) continue;
    ASSERT_EQ(listing(compile_main(re)), listing(compile_main(desugar_counted(re)))) << to_pattern(re);
  }
}

// Instructions per AST node stays under a fixed constant in default mode.
TEST(Compiler, LinearSize) {
  FuzzProfile p;
  for (uint64_t seed = 0; seed < 2000; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    if (has_lazy_nullable_plus(re)) continue;
    // Counted repetition multiplies the body; measure against the expansion.
    Regex expanded = desugar_counted(re);
    size_t nodes = expanded.reachable_count();
    Program main = compile_main(expanded);
    EXPECT_LE(main.size(), 12 * nodes) << to_pattern(re);
  }
}

TEST(Compiler, SingleBodyCopy) {
  FuzzProfile p;
  p.counted = false;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    if (has_lazy_nullable_plus(re)) continue;
    Program main = compile_main(re);
    std::map<NodeId, int> seen;
    for (const Instruction& ins : main.code) {
      bool consume = ins.op == Opcode::kConsume || ins.op == Opcode::kConsumeClass ||
                     (ins.op == Opcode::kConsumeAny && ins.source != kNoNode);
      if (consume) ++seen[ins.source];
    }
    for (const auto& [node, n] : seen) ASSERT_EQ(n, 1) << to_pattern(re) << " node " << node;
  }
}

TEST(Compiler, ExpandPlusIsExponential) {
  std::string r = "a";
  for (int i = 0; i < 14; ++i) r = "(?:" + r + ")+";
  CompileOptions o;
  o.expand_plus = true;
  EXPECT_GT(compile_main(parse(r), o).size(), 10000u);
  EXPECT_LT(compile_main(parse(r)).size(), 100u);
}

TEST(Compiler, LegacyClearRegCount) {
  FuzzProfile p;
  p.counted = false;
  p.lookarounds = false;
  CompileOptions legacy;
  legacy.mode = CompileMode::kLegacyClearReg;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    Regex re = parse(gen_regex(seed, p));
    if (has_lazy_nullable_plus(re)) continue;
    int expected = 0;
    for (int g = 1; g <= re.num_groups(); ++g) expected += enclosing_quantifier_count(re, re.group_node(g));
    int got = 0;
    for (const Instruction& i : compile_main(re, legacy).code) got += i.op == Opcode::kClearReg;
    ASSERT_EQ(got, expected) << to_pattern(re);
  }
}

TEST(Compiler, LegacyNestedStarGrowsQuadratically) {
  CompileOptions legacy;
  legacy.mode = CompileMode::kLegacyClearReg;
  auto family = [](int n) {
    std::string r = "a";
    for (int i = 0; i < n; ++i) r = "(" + r + ")*";
    return parse(r);
  };
  size_t d20 = compile_main(family(20)).size(), d40 = compile_main(family(40)).size();
  size_t l20 = compile_main(family(20), legacy).size(), l40 = compile_main(family(40), legacy).size();
  EXPECT_LE(static_cast<double>(d40) / d20, 2.2);
  EXPECT_GE(static_cast<double>(l40) / l20, 3.0);
}

TEST(Compiler, StreamingLookbehindAutomata) {
  Program p = compile_streaming(std::make_shared<const Regex>(parse("abc(?<=ab(?<=b)c)")));
  EXPECT_EQ(listing(p), join({"0: Fork 3 1",        "1: ConsumeAny", "2: Jump 0",       "3: SetReg #0:entry",
                              "4: Consume a",       "5: Consume b",  "6: Consume c",    "7: CheckLB 1",
                              "8: SetReg #0:exit",  "9: Accept",     "10: Fork 13 11",  "11: ConsumeAny",
                              "12: Jump 10",        "13: Consume b", "14: WriteLB 2",   "15: Fork 18 16",
                              "16: ConsumeAny",     "17: Jump 15",   "18: Consume a",   "19: Consume b",
                              "20: CheckLB 2",      "21: Consume c", "22: WriteLB 1"}));
  EXPECT_EQ(p.entry_points, (std::vector<int32_t>{10, 15, 0}));
}

TEST(Compiler, StreamingWithoutLookbehindsIsMain) {
  auto re = std::make_shared<const Regex>(parse("(a|b)*c"));
  Program s = compile_streaming(re);
  EXPECT_EQ(listing(s), listing(compile_main(re)));
  EXPECT_EQ(s.entry_points, (std::vector<int32_t>{0}));
}

TEST(Compiler, StreamingRejectsIneligible) {
  for (const char* p : {"(?=a)", "(?<=(a))", "(?<=a)(?:(b)|^)+"}) {
    auto re = std::make_shared<const Regex>(parse(p));
    EXPECT_FALSE(streaming_eligible(*re)) << p;
    try {
      compile_streaming(re);
      ADD_FAILURE() << p;
    } catch (const RegexError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIneligible);
    }
  }
  EXPECT_TRUE(streaming_eligible(parse("b(?:a(?<=ba*))*")));
}

TEST(Compiler, JumpTargetsInRange) {
  FuzzProfile p;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    std::string pattern = gen_regex(seed, p);
    Regex re = parse(pattern);
    if (has_lazy_nullable_plus(re)) continue;
    Engine e(pattern);
    const Program& m = e.main_program();
    int accepts = 0;
    for (const Instruction& i : m.code) {
      if (i.op == Opcode::kJump || i.op == Opcode::kFork) {
        ASSERT_GE(i.a, 0);
        ASSERT_LT(static_cast<size_t>(i.a), m.size());
      }
      if (i.op == Opcode::kFork) {
        ASSERT_LT(static_cast<size_t>(i.b), m.size());
      }
      accepts += i.op == Opcode::kAccept;
    }
    EXPECT_EQ(accepts, 1);
  }
}

}  // namespace
}  // namespace linre
