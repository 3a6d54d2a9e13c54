// Feature usage over a corpus of patterns, one per line.

#ifndef LINRE_STATS_HPP_
#define LINRE_STATS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "linre/ast.hpp"

namespace linre {

enum class Feature : uint8_t {
  kNullableQuantifier,
  kCaptureInQuantifier,
  kNonnullablePlus,
  kNullableGreedyPlus,
  kNullableLazyPlus,
  kLookaround,
  kCapturelessLookbehindsOnly,
};
inline constexpr size_t kNumFeatures = 7;

const char* feature_name(Feature f);

using FeatureSet = std::array<bool, kNumFeatures>;
FeatureSet features_of(const Regex& re);

struct CorpusStats {
  uint64_t parsed = 0;
  uint64_t failed = 0;
  std::array<uint64_t, kNumFeatures> counts{};
};

CorpusStats corpus_stats(const std::vector<std::string>& patterns);
// Throws std::runtime_error when the file cannot be read.
CorpusStats corpus_stats_file(const std::string& path);
// One `name<TAB>count<TAB>percent%` line per feature, after parsed/failed lines.
std::string format_stats(const CorpusStats& s);

}  // namespace linre

#endif  // LINRE_STATS_HPP_
