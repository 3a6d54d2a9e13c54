// linre: match, compile, fuzz, bench and stats from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linre/backtracker.hpp"
#include "linre/bench.hpp"
#include "linre/engine.hpp"
#include "linre/fuzzer.hpp"
#include "linre/parser.hpp"
#include "linre/stats.hpp"
#include "linre/utf8.hpp"

namespace {

constexpr int kMatch = 0;
constexpr int kNoMatch = 1;
constexpr int kUsage = 2;

constexpr size_t kBacktrackStack = size_t{1} << 28;

struct MatchArgs {
  std::string pattern;
  std::string text;
  std::string engine = "linear";
  std::string store = "list";
  std::string pipeline = "auto";
  bool json = false;
  bool legacy = false;
};

linre::EngineOptions engine_options(const std::string& store, const std::string& pipeline, bool legacy) {
  linre::EngineOptions o;
  o.store = *linre::parse_store_kind(store);
  o.pipeline = *linre::parse_pipeline(pipeline);
  if (legacy) o.compile.mode = linre::CompileMode::kLegacyClearReg;
  return o;
}

int run_match(const MatchArgs& a) {
  std::u32string text = linre::utf8_decode(a.text);
  std::optional<linre::MatchResult> result;
  try {
    if (a.engine == "backtrack") {
      linre::Regex re = linre::parse(a.pattern);
      linre::run_with_stack(kBacktrackStack, [&] { result = linre::bt_match(re, text); });
    } else {
      result = linre::full_match(a.pattern, text, engine_options(a.store, a.pipeline, a.legacy));
    }
  } catch (const linre::RegexError& e) {
    std::cerr << "error: " << linre::error_code_name(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  } catch (const linre::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!result) {
    std::cout << (a.json ? "null" : "no match") << "\n";
    return kNoMatch;
  }
  std::cout << (a.json ? linre::format_result_json(*result) + "\n" : linre::format_result(*result));
  return kMatch;
}

int run_compile(const std::string& pattern, const std::string& pipeline, bool legacy, bool all) {
  try {
    linre::Engine e(pattern, engine_options("list", pipeline, legacy));
    if (!all) {
      std::cout << linre::listing(e.main_program());
      return 0;
    }
    std::cout << "; main (" << linre::pipeline_name(e.pipeline()) << ")\n" << linre::listing(e.main_program());
    const linre::Regex& re = e.regex();
    if (e.pipeline() == linre::Pipeline::kOracle) {
      for (int l = re.num_lookarounds(); l >= 1; --l) {
        std::cout << "; oracle " << l << "\n" << linre::listing(e.oracle_program(l));
      }
    }
    for (int l = 1; l <= re.num_lookarounds(); ++l) {
      if (e.lookaround_program(l)) {
        std::cout << "; lookaround " << l << "\n" << linre::listing(*e.lookaround_program(l));
      }
    }
    for (int q = 1; q <= re.num_quantifiers(); ++q) {
      if (e.plus_program(q)) std::cout << "; plus " << q << "\n" << linre::listing(*e.plus_program(q));
    }
    return 0;
  } catch (const linre::RegexError& e) {
    std::cerr << "error: " << linre::error_code_name(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  }
}

int run_fuzz(uint64_t n, uint64_t seed, const std::string& profile_path, const std::string& out_dir) {
  linre::FuzzProfile profile;
  if (!profile_path.empty()) {
    std::ifstream in(profile_path);
    if (!in) {
      std::cerr << "error: cannot read profile " << profile_path << "\n";
      return kUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      profile = linre::FuzzProfile::from_json(ss.str());
    } catch (const std::exception& e) {
      std::cerr << "error: bad profile: " << e.what() << "\n";
      return kUsage;
    }
  }
  linre::FuzzReport r = linre::fuzz_campaign(n, seed, profile);
  std::printf("cases %llu agreed %llu mismatches %llu skipped %llu rejected %llu bound_violations %llu max_run_ratio %.3f\n",
              static_cast<unsigned long long>(r.cases), static_cast<unsigned long long>(r.agreed),
              static_cast<unsigned long long>(r.mismatches), static_cast<unsigned long long>(r.skipped),
              static_cast<unsigned long long>(r.rejected), static_cast<unsigned long long>(r.bound_violations), r.max_run_ratio);
  for (const linre::Reproducer& rep : r.reproducers) {
    std::cout << "mismatch: " << rep.pattern << " on \"" << linre::utf8_encode(rep.text) << "\": " << rep.detail
              << "\n";
  }
  if (!r.reproducers.empty() && !out_dir.empty()) {
    for (const std::string& p : linre::write_reproducers(r.reproducers, out_dir)) std::cout << "wrote " << p << "\n";
  }
  return r.mismatches == 0 ? 0 : 1;
}

struct BenchArgs {
  std::string family;
  std::vector<int64_t> sizes;
  std::string metric = "instructions";
  std::string csv;
  std::string engine = "linear";
  std::string store = "list";
  bool legacy = false;
  bool expand_plus = false;
};

int run_bench(const BenchArgs& a) {
  linre::BenchConfig cfg;
  cfg.engine = a.engine == "backtrack" ? linre::BenchEngine::kBacktrack : linre::BenchEngine::kLinear;
  cfg.metric = a.metric == "wall-time" ? linre::BenchMetric::kWallTime : linre::BenchMetric::kInstructions;
  cfg.engine_options = engine_options(a.store, "auto", a.legacy);
  cfg.engine_options.compile.expand_plus = a.expand_plus;
  std::vector<linre::BenchRow> rows;
  try {
    std::vector<int64_t> sizes = a.sizes.empty() ? linre::default_sizes(a.family) : a.sizes;
    rows = linre::bench_family(a.family, sizes, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::string out = linre::bench_csv_header() + "\n";
  for (const linre::BenchRow& r : rows) out += linre::bench_csv_row(r) + "\n";
  if (a.csv.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(a.csv);
    if (!f) {
      std::cerr << "error: cannot write " << a.csv << "\n";
      return kUsage;
    }
    f << out;
  }
  return 0;
}

int run_stats(const std::string& path) {
  try {
    std::cout << linre::format_stats(linre::corpus_stats_file(path));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-time JavaScript regex matching"};
  app.require_subcommand(1);
  const std::vector<std::string> stores = {"array", "list", "tree"};
  const std::vector<std::string> pipelines = {"auto", "oracle", "streaming"};

  MatchArgs m;
  CLI::App* match = app.add_subcommand("match", "Match a pattern against a string and print group bindings");
  match->add_option("pattern", m.pattern, "Pattern, verbatim (no delimiters or flags)")->required();
  match->add_option("string", m.text, "Input string (UTF-8)")->required();
  match->add_option("--engine", m.engine)->check(CLI::IsMember({"linear", "backtrack"}));
  match->add_option("--store", m.store)->check(CLI::IsMember(stores));
  match->add_option("--pipeline", m.pipeline)->check(CLI::IsMember(pipelines));
  match->add_flag("--json", m.json, "Print one JSON object per line");
  match->add_flag("--legacy-clearreg", m.legacy, "Reset captures with ClearReg instructions");

  std::string cpattern, cpipeline = "auto";
  bool clegacy = false, call = false;
  CLI::App* compile = app.add_subcommand("compile", "Print the bytecode listing");
  compile->add_option("pattern", cpattern)->required();
  compile->add_option("--pipeline", cpipeline)->check(CLI::IsMember(pipelines));
  compile->add_flag("--legacy-clearreg", clegacy);
  compile->add_flag("--all", call, "Also print oracle and reconstruction programs");

  uint64_t fn = 1000, fseed = 0;
  std::string fprofile, fout;
  CLI::App* fuzz = app.add_subcommand("fuzz", "Differential fuzzing against the backtracker");
  fuzz->add_option("--n", fn, "Number of cases")->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", fseed);
  fuzz->add_option("--profile", fprofile, "JSON generator profile")->check(CLI::ExistingFile);
  fuzz->add_option("--out", fout, "Directory for reproducer files");

  BenchArgs b;
  CLI::App* bench = app.add_subcommand("bench", "Run a complexity family and print CSV");
  bench->add_option("--family", b.family)->required()->check(CLI::IsMember(linre::bench_families()));
  bench->add_option("--sizes", b.sizes)->delimiter(',')->check(CLI::PositiveNumber);
  bench->add_option("--metric", b.metric)->check(CLI::IsMember({"instructions", "wall-time"}));
  bench->add_option("--csv", b.csv, "Output file (default stdout)");
  bench->add_option("--engine", b.engine)->check(CLI::IsMember({"linear", "backtrack"}));
  bench->add_option("--store", b.store)->check(CLI::IsMember(stores));
  bench->add_flag("--legacy-clearreg", b.legacy);
  bench->add_flag("--expand-plus", b.expand_plus, "Compile e+ as e e* (exponential)");

  std::string corpus;
  CLI::App* stats = app.add_subcommand("stats", "Feature usage over a corpus file");
  stats->add_option("corpus", corpus, "One pattern per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  if (*match) return run_match(m);
  if (*compile) return run_compile(cpattern, cpipeline, clegacy, call);
  if (*fuzz) return run_fuzz(fn, fseed, fprofile, fout);
  if (*bench) return run_bench(b);
  if (*stats) return run_stats(corpus);
  return kUsage;
}
