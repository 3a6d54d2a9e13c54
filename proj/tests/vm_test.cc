#include <gtest/gtest.h>

#include <random>

#include "linre/backtracker.hpp"
#include "linre/compiler.hpp"
#include "linre/engine.hpp"
#include "linre/parser.hpp"
#include "linre/registers.hpp"
#include "linre/vm.hpp"
#include "test_util.hpp"

namespace linre {
namespace {

using testing::U;

template <class Store>
void check_store_model() {
  // Random set/fork interleavings against a plain vector model.
  constexpr size_t kSlots = 9;
  std::mt19937 rng(7);
  Store store(kSlots);
  std::vector<typename Store::Handle> handles{store.make()};
  std::vector<std::vector<Pos>> model{std::vector<Pos>(kSlots, kUndefined)};
  for (int step = 0; step < 5000; ++step) {
    size_t h = rng() % handles.size();
    if (rng() % 3 == 0 && handles.size() < 64) {
      handles.push_back(store.fork(handles[h]));
      model.push_back(model[h]);
    } else {
      size_t slot = rng() % kSlots;
      Pos v = static_cast<Pos>(rng() % 100);
      store.set(handles[h], slot, v);
      model[h][slot] = v;
    }
    size_t probe = rng() % handles.size();
    ASSERT_EQ(store.get(handles[probe], step % kSlots), model[probe][step % kSlots]);
  }
  for (size_t h = 0; h < handles.size(); ++h) ASSERT_EQ(store.materialize(handles[h]), model[h]);
}

TEST(Registers, ArrayMatchesModel) { check_store_model<ArrayStore>(); }
TEST(Registers, ListMatchesModel) { check_store_model<ListStore>(); }
TEST(Registers, TreeMatchesModel) { check_store_model<TreeStore>(); }

TEST(Registers, ForkCosts) {
  ArrayStore a(6);
  ArrayStore::Handle ah = a.make();
  a.fork(ah);
  a.fork(ah);
  EXPECT_EQ(a.slot_copies(), 12u);
  ListStore l(6);
  ListStore::Handle lh = l.make();
  l.set(lh, 3, 1);
  l.fork(lh);
  EXPECT_EQ(l.slot_copies(), 0u);
  TreeStore t(6);
  EXPECT_EQ(t.depth(), 3);
}

TEST(Registers, StoreNames) {
  for (StoreKind k : {StoreKind::kArray, StoreKind::kList, StoreKind::kTree}) {
    EXPECT_EQ(parse_store_kind(store_kind_name(k)), k);
  }
  EXPECT_FALSE(parse_store_kind("heap"));
}

RunOutcome run_bare(const Program& p, std::u32string_view text, std::vector<uint64_t>* counts = nullptr) {
  RunRequest req;
  req.program = &p;
  req.text = text;
  req.label_counts = counts;
  return run(req);
}

Program tagged_nfa() {
  CompileOptions o;
  o.unanchored_prefix = false;
  o.capture_whole_match = false;
  return compile_main(parse("(a|.)b"), o);
}

TEST(Vm, TaggedNfaMatches) {
  Program p = tagged_nfa();
  RunOutcome out = run_bare(p, U("ab"));
  ASSERT_TRUE(out.matched);
  EXPECT_EQ(extract_group(out.winner, 1, Direction::kForward), (Span{0, 1}));
  EXPECT_FALSE(extract_group(out.winner, 0, Direction::kForward));
}

TEST(Vm, DedupRunsLabelOncePerPosition) {
  Program p = tagged_nfa();
  std::vector<uint64_t> counts;
  RunOutcome out = run_bare(p, U("ac"), &counts);
  EXPECT_FALSE(out.matched);
  // Both branches reach `6: Consume b` at position 1.
  EXPECT_EQ(counts[6], 1u);
  EXPECT_EQ(counts[5], 1u);
}

TEST(Vm, WholeMatchWithPrefix) {
  Program p = compile_main(parse("(a|.)b"));
  RunOutcome out = run_bare(p, U("xab"));
  ASSERT_TRUE(out.matched);
  EXPECT_EQ(extract_group(out.winner, 0, Direction::kForward), (Span{1, 3}));
  EXPECT_EQ(extract_group(out.winner, 1, Direction::kForward), (Span{1, 2}));
}

TEST(Vm, StreamingLookbehindTable) {
  Program p = compile_streaming(std::make_shared<const Regex>(parse("abc(?<=ab(?<=b)c)")));
  std::vector<uint64_t> counts;
  RunOutcome out = run_bare(p, U("abc"), &counts);
  ASSERT_TRUE(out.matched);
  EXPECT_EQ(extract_group(out.winner, 0, Direction::kForward), (Span{0, 3}));
  EXPECT_GE(counts[14], 1u);  // WriteLB 2
  EXPECT_GE(counts[20], 1u);  // CheckLB 2
  EXPECT_GE(counts[22], 1u);  // WriteLB 1
  EXPECT_FALSE(run_bare(p, U("abd")).matched);
}

TEST(Vm, MissingOracleIsAnError) {
  Engine e("a(?=b)");
  RunRequest req;
  req.program = &e.main_program();
  req.text = U"ab";
  EXPECT_THROW(run(req), RegexError);
}

TEST(Vm, BackwardGroupExtraction) {
  ThreadSnapshot t;
  t.caps = {kUndefined, kUndefined, 3, 1};
  EXPECT_EQ(extract_group(t, 1, Direction::kBackward), (Span{1, 3}));
  EXPECT_FALSE(extract_group(t, 0, Direction::kBackward));
  t.caps = {kUndefined, kUndefined, 3, kUndefined};
  EXPECT_THROW(extract_group(t, 1, Direction::kForward), RegexError);
}

TEST(Vm, ClockIsMonotonic) {
  // A later SetQuant must carry a larger clock than an earlier SetReg.
  Engine e("(?:(a)|b)*");
  RunRequest req;
  req.program = &e.main_program();
  std::u32string text = U"ab";
  req.text = text;
  RunOutcome out = run(req);
  AuxLayout layout(e.main_program());
  EXPECT_LT(out.winner.aux[layout.gclock(1)], out.winner.aux[layout.qclock(1)]);
  EXPECT_GT(out.winner.aux[layout.gclock(0)], kUndefined);
}

TEST(Vm, StoresAgree) {
  for (const char* pattern : {"((a)|(b))*", "(?:(a)?(a)?)*", "(c)(?:a(?=a*(?<=c(a*))b))*", "((?:)+)+"}) {
    std::optional<MatchResult> ref;
    for (StoreKind k : {StoreKind::kArray, StoreKind::kList, StoreKind::kTree}) {
      EngineOptions o;
      o.store = k;
      auto r = full_match(pattern, U("caabab"), o);
      if (k == StoreKind::kArray) ref = r;
      EXPECT_EQ(testing::show(r), testing::show(ref)) << pattern << " " << store_kind_name(k);
    }
  }
}

TEST(Vm, ArrayForkCopiesAllSlots) {
  EngineOptions o;
  o.store = StoreKind::kArray;
  MatchStats stats;
  full_match("(?:(a)?(a)?(a)?)*", std::u32string(50, 'a'), o, &stats);
  ASSERT_GT(stats.totals.forks, 0u);
  EXPECT_EQ(stats.totals.slot_copies, stats.totals.forks * 2 * (3 + 1));
  o.store = StoreKind::kList;
  MatchStats list;
  full_match("(?:(a)?(a)?(a)?)*", std::u32string(50, 'a'), o, &list);
  EXPECT_EQ(list.totals.slot_copies, 0u);
  EXPECT_EQ(list.instr_total(), stats.instr_total());
}

bool nullable(const char* pattern, const char* text, Pos pos) {
  Regex re = parse(pattern);
  Engine e(pattern, EngineOptions{{}, Pipeline::kOracle});
  std::u32string s = U(text);
  Oracle oracle = e.build_oracle(s);
  return nullable_at(re, re.root(), s, pos, &oracle);
}

TEST(NullableAt, Examples) {
  EXPECT_TRUE(nullable("a|(^)", "b", 0));
  EXPECT_FALSE(nullable("a|(^)", "b", 1));
  EXPECT_TRUE(nullable("a|", "ab", 0));
  EXPECT_TRUE(nullable("a|", "ab", 1));
  EXPECT_TRUE(nullable("a|", "ab", 2));
  EXPECT_TRUE(nullable("a|(?=b)", "ab", 1));
  EXPECT_FALSE(nullable("a|(?=b)", "ab", 0));
  EXPECT_TRUE(nullable("a|(?<!b)", "ab", 1));
  EXPECT_FALSE(nullable("a|(?<!a)", "ab", 1));
  EXPECT_TRUE(nullable("\\b", "ab", 2));
  EXPECT_FALSE(nullable("\\b", "ab", 1));
  EXPECT_TRUE(nullable("(?:a|$)+", "ab", 2));
  EXPECT_FALSE(nullable("a{2}|b*c", "ab", 0));
}

TEST(NullableAt, AgreesWithBacktracker) {
  const char* patterns[] = {"a|(^)", "(?:a|\\b)(?=b|$)", "(?:^|a)(?:$|b)", "(?<=a)|(?!b)", "(a*)(?:\\B|b)"};
  std::u32string s = U("abba");
  for (const char* p : patterns) {
    Regex re = parse(p);
    Engine e(p, EngineOptions{{}, Pipeline::kOracle});
    Oracle oracle = e.build_oracle(s);
    for (Pos i = 0; i <= 4; ++i) {
      EXPECT_EQ(nullable_at(re, re.root(), s, i, &oracle), bt_matches_empty_at(re, re.root(), s, i))
          << p << " at " << i;
    }
  }
}

}  // namespace
}  // namespace linre
