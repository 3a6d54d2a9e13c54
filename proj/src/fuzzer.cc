#include "linre/fuzzer.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "json.hpp"

#include "linre/analysis.hpp"
#include "linre/backtracker.hpp"
#include "linre/parser.hpp"
#include "linre/utf8.hpp"

namespace linre {

FuzzProfile FuzzProfile::from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FuzzProfile p;
  p.max_depth = j.value("max_depth", p.max_depth);
  p.max_nodes = j.value("max_nodes", p.max_nodes);
  p.lookarounds = j.value("lookarounds", p.lookarounds);
  p.anchors = j.value("anchors", p.anchors);
  p.classes = j.value("classes", p.classes);
  p.counted = j.value("counted", p.counted);
  p.max_count = j.value("max_count", p.max_count);
  p.max_string = j.value("max_string", p.max_string);
  p.lazy_nullable_plus_rate = j.value("lazy_nullable_plus_rate", p.lazy_nullable_plus_rate);
  p.step_budget = j.value("step_budget", p.step_budget);
  return p;
}

FuzzReport& FuzzReport::operator+=(const FuzzReport& o) {
  cases += o.cases;
  agreed += o.agreed;
  mismatches += o.mismatches;
  skipped += o.skipped;
  rejected += o.rejected;
  bound_violations += o.bound_violations;
  max_run_ratio = std::max(max_run_ratio, o.max_run_ratio);
  reproducers.insert(reproducers.end(), o.reproducers.begin(), o.reproducers.end());
  return *this;
}

namespace {

uint64_t mix(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Standard distributions are implementation-defined; these keep generated
// cases identical across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

uint64_t below(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

class Generator {
 public:
  Generator(uint64_t seed, const FuzzProfile& p) : rng_(seed), p_(p) {}

  std::string pattern() { return disjunction(p_.max_depth); }

 private:
  bool chance(double q) { return unit(rng_) < q; }
  int pick(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
  bool exhausted() const { return nodes_ >= p_.max_nodes; }

  std::string literal() {
    ++nodes_;
    static const char* chars[] = {"a", "a", "b", "b", "c"};
    return chars[pick(5)];
  }

  std::string disjunction(int depth) {
    if (depth > 0 && !exhausted() && chance(0.25)) {
      ++nodes_;
      std::string left = chance(0.15) ? "" : alternative(depth - 1);
      std::string right = chance(0.3) ? "" : alternative(depth - 1);
      return left + "|" + right;
    }
    return alternative(depth);
  }

  std::string alternative(int depth) {
    int k = exhausted() ? 1 : 1 + pick(3);
    std::string out;
    for (int i = 0; i < k; ++i) out += term(depth);
    return out;
  }

  std::string quantifier() {
    std::string q;
    int r = pick(p_.counted ? 10 : 7);
    switch (r) {
      case 0: case 1: case 2: q = "*"; break;
      case 3: case 4: case 5: q = "+"; break;
      case 6: q = "?"; break;
      default: {
        int a = pick(p_.max_count + 1);
        int form = pick(3);
        if (form == 0) {
          q = "{" + std::to_string(a) + "}";
        } else if (form == 1) {
          q = "{" + std::to_string(std::min(a, 2)) + ",}";
        } else {
          int b = a + pick(p_.max_count - a + 1);
          q = "{" + std::to_string(a) + "," + std::to_string(b) + "}";
        }
      }
    }
    ++nodes_;
    if (chance(0.3)) q += "?";
    return q;
  }

  std::string term(int depth) {
    if (depth <= 0 || exhausted()) {
      std::string l = literal();
      return chance(0.2) ? l + "*" : l;
    }
    if (chance(0.4)) {
      std::string body = chance(0.45) ? nullable_body(depth - 1) : quantifiable_atom(depth - 1);
      return body + quantifier();
    }
    return atom(depth - 1);
  }

  std::string nullable_body(int depth) {
    nodes_ += 2;
    int r = pick(6);
    switch (r) {
      case 0: return "(?:" + alternative(depth) + "|)";
      case 1: return "(|" + alternative(depth) + ")";
      case 2: return "(" + quantifiable_atom(depth) + "*)";
      case 3: return "(?:" + quantifiable_atom(depth) + "?" + quantifiable_atom(depth) + "?)";
      case 4:
        if (p_.anchors) return "(?:" + std::string(chance(0.5) ? "\\b" : "^") + "|" + alternative(depth) + ")";
        return "(?:" + alternative(depth) + "|)";
      default:
        if (p_.lookarounds) return "(?:(?" + std::string(chance(0.5) ? "=" : "<=") + alternative(depth) + ")|" + alternative(depth) + ")";
        return "(" + quantifiable_atom(depth) + "?)";
    }
  }

  std::string char_class() {
    ++nodes_;
    static const char* classes[] = {"[ab]", "[^a]", "[a-c]", "[bc]", "\\w", "[^bc]"};
    return classes[pick(6)];
  }

  std::string quantifiable_atom(int depth) {
    if (depth <= 0 || exhausted()) return literal();
    int r = pick(12);
    if (r < 4) return literal();
    if (r == 4) {
      ++nodes_;
      return ".";
    }
    if (r == 5 && p_.classes) return char_class();
    ++nodes_;
    if (r <= 7) return "(" + disjunction(depth - 1) + ")";
    if (r <= 9) return "(?:" + disjunction(depth - 1) + ")";
    if (p_.lookarounds) return std::string(chance(0.7) ? "(?=" : "(?!") + disjunction(depth - 1) + ")";
    return "(" + disjunction(depth - 1) + ")";
  }

  std::string atom(int depth) {
    int r = pick(10);
    if (r == 0 && p_.anchors) {
      ++nodes_;
      static const char* anchors[] = {"^", "$", "\\b", "\\B"};
      return anchors[pick(4)];
    }
    if (r == 1 && p_.lookarounds && depth > 0 && !exhausted()) {
      ++nodes_;
      return std::string(chance(0.7) ? "(?<=" : "(?<!") + disjunction(depth - 1) + ")";
    }
    return quantifiable_atom(depth);
  }

  std::mt19937_64 rng_;
  const FuzzProfile& p_;
  int nodes_ = 0;
};

bool results_equal(const std::optional<MatchResult>& a, const std::optional<MatchResult>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

std::string describe(const std::optional<MatchResult>& r) {
  if (!r) return "no match";
  std::string s = format_result(*r);
  if (!s.empty() && s.back() == '\n') s.pop_back();
  for (char& c : s) {
    if (c == '\n') c = ';';
  }
  return s;
}

}  // namespace

std::string gen_regex(uint64_t seed, const FuzzProfile& profile) {
  // Lazy nullable plusses are kept only at the configured rate.
  for (uint64_t attempt = 0;; ++attempt) {
    Generator g(mix(seed, attempt), profile);
    std::string p = g.pattern();
    Regex re = parse(p);
    if (!has_lazy_nullable_plus(re)) return p;
    std::mt19937_64 coin(mix(seed, 1000 + attempt));
    if (unit(coin) < profile.lazy_nullable_plus_rate) return p;
  }
}

std::u32string gen_string(uint64_t seed, std::string_view pattern, const FuzzProfile& profile) {
  std::mt19937_64 rng(mix(seed, 77));
  std::set<char32_t> letters;
  for (char c : pattern) {
    if (c >= 'a' && c <= 'c') letters.insert(c);
  }
  if (letters.empty()) letters.insert('a');
  std::vector<char32_t> alphabet(letters.begin(), letters.end());
  int len = static_cast<int>(below(rng, profile.max_string + 1));
  std::u32string out;
  for (int i = 0; i < len; ++i) {
    if (below(rng, 8) == 0) {
      out.push_back('d');
    } else {
      out.push_back(alphabet[below(rng, alphabet.size())]);
    }
  }
  return out;
}

CaseOutcome compare_case(std::string_view pattern, std::u32string_view text, const EngineOptions& opts,
                         const FuzzProfile& profile) {
  CaseOutcome out;
  Regex re = parse(pattern);
  if (has_lazy_nullable_plus(re)) {
    try {
      Engine e(pattern, opts);
      out.status = CaseStatus::kMismatch;
      out.detail = "lazy nullable plus accepted by the linear engine";
    } catch (const RegexError& err) {
      out.status = err.code() == ErrorCode::kLazyNullablePlus ? CaseStatus::kRejected : CaseStatus::kMismatch;
      if (out.status == CaseStatus::kMismatch) out.detail = err.what();
    }
    return out;
  }
  std::optional<MatchResult> expected;
  try {
    BacktrackOptions bo;
    bo.step_budget = profile.step_budget;
    expected = bt_match(re, text, bo);
  } catch (const BudgetExceeded&) {
    out.status = CaseStatus::kSkipped;
    return out;
  }
  auto check = [&](const EngineOptions& o, const char* label) {
    try {
      Engine e(pattern, o);
      MatchStats stats;
      std::optional<MatchResult> got = e.match(text, &stats);
      if (!stats.within_run_bound(text.size())) out.bound_violation = true;
      out.max_run_ratio = std::max(out.max_run_ratio, stats.max_run_ratio(text.size()));
      if (!results_equal(got, expected)) {
        out.status = CaseStatus::kMismatch;
        out.detail += std::string(label) + ": " + describe(got) + " expected " + describe(expected) + ". ";
      }
      return e.pipeline();
    } catch (const RegexError& err) {
      out.status = CaseStatus::kMismatch;
      out.detail += std::string(label) + " error: " + err.what() + ". ";
      return Pipeline::kOracle;
    }
  };
  Pipeline used = check(opts, "linear");
  if (used == Pipeline::kStreaming) {
    EngineOptions o = opts;
    o.pipeline = Pipeline::kOracle;
    check(o, "oracle-pipeline");
  }
  return out;
}

namespace {

bool still_fails(const std::string& pattern, std::u32string_view text, const EngineOptions& opts,
                 const FuzzProfile& profile) {
  try {
    return compare_case(pattern, text, opts, profile).status == CaseStatus::kMismatch;
  } catch (const RegexError&) {
    return false;
  }
}

// Pattern with node `target` replaced by `with` (kNoNode: epsilon).
std::string replaced(const Regex& re, NodeId target, NodeId with) {
  Regex copy = re;
  Node& n = copy.mutable_node(target);
  if (with == kNoNode) {
    n = Node{};
    n.kind = NodeKind::kEpsilon;
  } else {
    n = re.node(with);
  }
  copy.finalize(false);
  return to_pattern(copy);
}

}  // namespace

Reproducer shrink(const Reproducer& r, const EngineOptions& opts, const FuzzProfile& profile) {
  Reproducer best = r;
  bool progress = true;
  int rounds = 0;
  while (progress && rounds++ < 200) {
    progress = false;
    Regex re = parse(best.pattern);
    std::vector<NodeId> order;
    std::vector<NodeId> stack{re.root()};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      order.push_back(id);
      for (NodeId c : re.children(id)) stack.push_back(c);
    }
    for (NodeId id : order) {
      std::vector<NodeId> options = re.children(id);
      if (re.node(id).kind != NodeKind::kEpsilon) options.push_back(kNoNode);
      for (NodeId with : options) {
        std::string cand = replaced(re, id, with);
        if (cand.size() >= best.pattern.size()) continue;
        try {
          parse(cand);
        } catch (const RegexError&) {
          continue;
        }
        if (still_fails(cand, best.text, opts, profile)) {
          best.pattern = cand;
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
    if (progress) continue;
    for (size_t i = 0; i < best.text.size(); ++i) {
      std::u32string cand = best.text;
      cand.erase(i, 1);
      if (still_fails(best.pattern, cand, opts, profile)) {
        best.text = cand;
        progress = true;
        break;
      }
    }
  }
  best.detail = compare_case(best.pattern, best.text, opts, profile).detail;
  return best;
}

namespace {

void record(FuzzReport& rep, const CaseOutcome& c, const std::string& pattern, std::u32string_view text,
            const EngineOptions& opts, const FuzzProfile& profile, size_t max_reproducers) {
  ++rep.cases;
  if (c.bound_violation) ++rep.bound_violations;
  rep.max_run_ratio = std::max(rep.max_run_ratio, c.max_run_ratio);
  switch (c.status) {
    case CaseStatus::kAgree: ++rep.agreed; break;
    case CaseStatus::kSkipped: ++rep.skipped; break;
    case CaseStatus::kRejected: ++rep.rejected; break;
    case CaseStatus::kMismatch:
      ++rep.mismatches;
      if (rep.reproducers.size() < max_reproducers) {
        rep.reproducers.push_back(shrink(Reproducer{pattern, std::u32string(text), c.detail}, opts, profile));
      }
      break;
  }
}

}  // namespace

FuzzReport fuzz_campaign(uint64_t n, uint64_t seed, const FuzzProfile& profile, const EngineOptions& opts,
                         size_t max_reproducers) {
  FuzzReport rep;
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t case_seed = mix(seed, i);
    std::string pattern = gen_regex(case_seed, profile);
    std::u32string text = gen_string(case_seed, pattern, profile);
    record(rep, compare_case(pattern, text, opts, profile), pattern, text, opts, profile, max_reproducers);
  }
  return rep;
}

FuzzReport fuzz_strings(std::string_view pattern, const std::vector<std::u32string>& texts,
                        const EngineOptions& opts, const FuzzProfile& profile) {
  FuzzReport rep;
  for (const std::u32string& t : texts) {
    record(rep, compare_case(pattern, t, opts, profile), std::string(pattern), t, opts, profile, 10);
  }
  return rep;
}

std::vector<std::string> write_reproducers(const std::vector<Reproducer>& rs, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (size_t i = 0; i < rs.size(); ++i) {
    std::string path = (std::filesystem::path(dir) / ("repro_" + std::to_string(i) + ".txt")).string();
    std::ofstream f(path, std::ios::binary);
    f << rs[i].pattern << '\n' << utf8_encode(rs[i].text) << '\n';
    paths.push_back(path);
  }
  return paths;
}

}  // namespace linre
