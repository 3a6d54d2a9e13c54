// Pike VM bytecode.

#ifndef LINRE_PROGRAM_HPP_
#define LINRE_PROGRAM_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "linre/ast.hpp"
#include "linre/common.hpp"

namespace linre {

enum class Opcode : uint8_t {
  kConsume,       // c: code point
  kConsumeClass,  // a: class index
  kConsumeAny,    // a: 1 excludes line terminators (`.`), 0 accepts anything
  kJump,          // a: target
  kFork,          // a: high-priority target, b: low-priority target
  kAccept,
  kSetReg,    // a: register (2g entry, 2g+1 exit)
  kClearReg,  // a: group (legacy mode)
  kBeginLoop,
  kEndLoop,
  kSetQuant,  // a: quantifier id
  kWriteOracle,     // a: lookaround id
  kCheckOracle,     // a: lookaround id
  kNegCheckOracle,  // a: lookaround id
  kWriteLB,         // a: lookaround id
  kCheckLB,         // a: lookaround id
  kNegCheckLB,      // a: lookaround id
  kSetNullPlus,     // a: quantifier id
  kCheckNull,       // a: quantifier id
  kAssertAnchor,    // a: AnchorKind
};

struct Instruction {
  Opcode op;
  int32_t a = 0;
  int32_t b = 0;
  char32_t c = 0;
  NodeId source = kNoNode;  // AST node that produced the instruction
};

enum class ProgramKind : uint8_t { kMain, kOracle, kStreaming, kLookaroundRecon, kNulledPlusRecon };

struct Program {
  ProgramKind kind = ProgramKind::kMain;
  std::vector<Instruction> code;
  Direction direction = Direction::kForward;
  // Threads start here; the first entry point is explored first.
  std::vector<int32_t> entry_points{0};
  // First label of the main automaton (streaming programs put the
  // lookbehind automata after it).
  int32_t main_begin = 0;
  int32_t main_end = 0;
  int num_groups = 0;
  int num_quantifiers = 0;
  int num_lookarounds = 0;
  // The tree the program was compiled from (reversed for backward programs).
  std::shared_ptr<const Regex> source;
  // Quantifier id -> body node, for CheckNull.
  std::vector<NodeId> quant_body;

  size_t size() const { return code.size(); }
};

// One instruction per line, `label: OPCODE operands`.
std::string listing(const Program& p);
std::string format_instruction(const Program& p, const Instruction& ins);

}  // namespace linre

#endif  // LINRE_PROGRAM_HPP_
