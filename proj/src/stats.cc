#include "linre/stats.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "linre/common.hpp"
#include "linre/parser.hpp"

namespace linre {

const char* feature_name(Feature f) {
  switch (f) {
    case Feature::kNullableQuantifier: return "Nullable Quantifiers";
    case Feature::kCaptureInQuantifier: return "Capture in Quantifiers";
    case Feature::kNonnullablePlus: return "Nonnullable Plus (+ or +?)";
    case Feature::kNullableGreedyPlus: return "CIN and CDN greedy +";
    case Feature::kNullableLazyPlus: return "CIN and CDN lazy +?";
    case Feature::kLookaround: return "Lookarounds";
    case Feature::kCapturelessLookbehindsOnly: return "Captureless Lookbehinds";
  }
  return "?";
}

FeatureSet features_of(const Regex& re) {
  FeatureSet f{};
  auto set = [&f](Feature x) { f[static_cast<size_t>(x)] = true; };
  bool only_captureless_behinds = true;
  for (int q = 1; q <= re.num_quantifiers(); ++q) {
    const Node& n = re.node(re.quantifier_node(q));
    bool nullable = re.nullability(n.lhs) != Nullability::kNN;
    if (nullable) set(Feature::kNullableQuantifier);
    if (re.contains_group(n.lhs)) set(Feature::kCaptureInQuantifier);
    if (n.kind == NodeKind::kQuantified && n.quant == QuantKind::kPlus) {
      if (!nullable) {
        set(Feature::kNonnullablePlus);
      } else {
        set(n.greedy ? Feature::kNullableGreedyPlus : Feature::kNullableLazyPlus);
      }
    }
  }
  for (int l = 1; l <= re.num_lookarounds(); ++l) {
    const Node& n = re.node(re.lookaround_node(l));
    set(Feature::kLookaround);
    if (!is_behind(n.look) || re.contains_group(n.lhs)) only_captureless_behinds = false;
  }
  if (re.num_lookarounds() > 0 && only_captureless_behinds) set(Feature::kCapturelessLookbehindsOnly);
  return f;
}

CorpusStats corpus_stats(const std::vector<std::string>& patterns) {
  CorpusStats s;
  for (const std::string& p : patterns) {
    Regex re;
    try {
      re = parse(p);
    } catch (const RegexError&) {
      ++s.failed;
      continue;
    }
    ++s.parsed;
    FeatureSet f = features_of(re);
    for (size_t i = 0; i < kNumFeatures; ++i) s.counts[i] += f[i];
  }
  return s;
}

CorpusStats corpus_stats_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read corpus file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return corpus_stats(lines);
}

std::string format_stats(const CorpusStats& s) {
  std::string out = "parsed\t" + std::to_string(s.parsed) + "\nfailed\t" + std::to_string(s.failed) + "\n";
  for (size_t i = 0; i < kNumFeatures; ++i) {
    double pct = s.parsed ? 100.0 * static_cast<double>(s.counts[i]) / static_cast<double>(s.parsed) : 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", pct);
    out += std::string(feature_name(static_cast<Feature>(i))) + "\t" + std::to_string(s.counts[i]) + "\t" + buf + "\n";
  }
  return out;
}

}  // namespace linre
