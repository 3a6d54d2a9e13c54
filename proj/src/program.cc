#include "linre/program.hpp"

#include <string>

#include "linre/parser.hpp"
#include "linre/utf8.hpp"

namespace linre {

namespace {

const char* opcode_name(Opcode op) {
  switch (op) {
    case Opcode::kConsume: return "Consume";
    case Opcode::kConsumeClass: return "ConsumeClass";
    case Opcode::kConsumeAny: return "ConsumeAny";
    case Opcode::kJump: return "Jump";
    case Opcode::kFork: return "Fork";
    case Opcode::kAccept: return "Accept";
    case Opcode::kSetReg: return "SetReg";
    case Opcode::kClearReg: return "ClearReg";
    case Opcode::kBeginLoop: return "BeginLoop";
    case Opcode::kEndLoop: return "EndLoop";
    case Opcode::kSetQuant: return "SetQuant";
    case Opcode::kWriteOracle: return "WriteOracle";
    case Opcode::kCheckOracle: return "CheckOracle";
    case Opcode::kNegCheckOracle: return "NegCheckOracle";
    case Opcode::kWriteLB: return "WriteLB";
    case Opcode::kCheckLB: return "CheckLB";
    case Opcode::kNegCheckLB: return "NegCheckLB";
    case Opcode::kSetNullPlus: return "SetNullPlus";
    case Opcode::kCheckNull: return "CheckNull";
    case Opcode::kAssertAnchor: return "AssertAnchor";
  }
  return "?";
}

}  // namespace

std::string format_instruction(const Program& p, const Instruction& ins) {
  std::string s = opcode_name(ins.op);
  switch (ins.op) {
    case Opcode::kConsume:
      s += ' ';
      if (ins.c == '\n') {
        s += "\\n";
      } else if (ins.c == '\r') {
        s += "\\r";
      } else {
        utf8_append(s, ins.c);
      }
      break;
    case Opcode::kConsumeClass:
      s += ' ';
      s += p.source ? class_to_pattern(p.source->char_class(ins.a)) : std::to_string(ins.a);
      break;
    case Opcode::kFork:
      s += ' ' + std::to_string(ins.a) + ' ' + std::to_string(ins.b);
      break;
    case Opcode::kSetReg:
      s += " #" + std::to_string(ins.a / 2) + (ins.a % 2 == 0 ? ":entry" : ":exit");
      break;
    case Opcode::kClearReg:
      s += " #" + std::to_string(ins.a);
      break;
    case Opcode::kAssertAnchor: {
      static const char* names[] = {"^", "$", "\\b", "\\B"};
      s += ' ';
      s += names[ins.a];
      break;
    }
    case Opcode::kJump:
    case Opcode::kSetQuant:
    case Opcode::kWriteOracle:
    case Opcode::kCheckOracle:
    case Opcode::kNegCheckOracle:
    case Opcode::kWriteLB:
    case Opcode::kCheckLB:
    case Opcode::kNegCheckLB:
    case Opcode::kSetNullPlus:
    case Opcode::kCheckNull:
      s += ' ' + std::to_string(ins.a);
      break;
    case Opcode::kConsumeAny:
    case Opcode::kAccept:
    case Opcode::kBeginLoop:
    case Opcode::kEndLoop:
      break;
  }
  return s;
}

std::string listing(const Program& p) {
  std::string out;
  for (size_t i = 0; i < p.code.size(); ++i) {
    out += std::to_string(i) + ": " + format_instruction(p, p.code[i]) + '\n';
  }
  return out;
}

}  // namespace linre
