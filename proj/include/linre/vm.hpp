// Lockstep NFA simulation of a Program.

#ifndef LINRE_VM_HPP_
#define LINRE_VM_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "linre/common.hpp"
#include "linre/program.hpp"
#include "linre/registers.hpp"

namespace linre {

// Lookaround satisfaction table: row l (1-based id), column p in [0, n].
class Oracle {
 public:
  Oracle() = default;
  Oracle(int lookarounds, size_t text_size)
      : rows_(lookarounds), cols_(text_size + 1), bits_(static_cast<size_t>(lookarounds) * cols_, 0) {}

  int rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool get(int l, Pos p) const { return bits_[(l - 1) * cols_ + p] != 0; }
  void set(int l, Pos p) { bits_[(l - 1) * cols_ + p] = 1; }
  std::vector<Pos> row_positions(int l) const;

 private:
  int rows_ = 0;
  size_t cols_ = 0;
  std::vector<uint8_t> bits_;
};

// Offsets of the bookkeeping registers that live beside the capture slots.
struct AuxLayout {
  int groups = 0;
  int quants = 0;
  int looks = 0;

  explicit AuxLayout(const Program& p)
      : groups(p.num_groups), quants(p.num_quantifiers), looks(p.num_lookarounds) {}
  size_t gclock(int g) const { return g; }
  size_t qclock(int q) const { return groups + 1 + q; }
  size_t plusnulled(int q) const { return groups + quants + 2 + q; }
  size_t lookpos(int l) const { return groups + 2 * quants + 3 + l; }
  size_t lclock(int l) const { return groups + 2 * quants + looks + 4 + l; }
  size_t size() const { return groups + 2 * quants + 2 * looks + 5; }
};

struct RunCounters {
  uint64_t instructions = 0;
  uint64_t forks = 0;
  uint64_t slot_copies = 0;      // capture slots copied by forks
  uint64_t aux_slot_copies = 0;  // clock/bookkeeping slots copied by forks
  uint64_t threads_peak = 0;
  uint64_t steps = 0;            // string positions visited
  uint64_t null_checks = 0;      // AST nodes evaluated by CheckNull

  RunCounters& operator+=(const RunCounters& o);
};

struct ThreadSnapshot {
  std::vector<Pos> caps;  // 2(G+1) slots
  std::vector<Pos> aux;   // AuxLayout
};

struct RunRequest {
  const Program* program = nullptr;
  std::u32string_view text;
  Pos start = 0;
  // Read by Check*Oracle and CheckNull, written by WriteOracle.
  Oracle* oracle = nullptr;
  StoreKind store = StoreKind::kList;
  // Stop after the first position (nothing may be consumed).
  bool empty_only = false;
  // When set, receives per-label execution counts.
  std::vector<uint64_t>* label_counts = nullptr;
};

struct RunOutcome {
  bool matched = false;
  ThreadSnapshot winner;
  RunCounters counters;
};

RunOutcome run(const RunRequest& req);

// True iff the body `node` of `re` can match empty at `pos`, consulting the
// oracle for lookarounds. Used by CheckNull and tests.
bool nullable_at(const Regex& re, NodeId node, std::u32string_view text, Pos pos, const Oracle* oracle);

// Group g of a snapshot as a forward-oriented span.
std::optional<Span> extract_group(const ThreadSnapshot& t, int g, Direction dir);

}  // namespace linre

#endif  // LINRE_VM_HPP_
