#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "treemach/tree.hpp"

namespace treemach {

enum class InstrKind : uint8_t {
  One,        // 1: identity
  UnitCheck,  // (): defined only on (), returns ()
  Erase,      // eps: constant ()
  Proj1,      // pi1: left projection, defined on pairs
  Proj2,      // pi2: right projection, defined on pairs
  Dup,        // delta: x -> (x,x)
  Pair,       // (i,j): componentwise on pairs
};

// An element of the instruction set: the six generators closed under
// pairing. Each instruction denotes a partial function on trees.
class Instr {
 public:
  Instr() : kind_(InstrKind::One) {}

  static Instr one() { return Instr(InstrKind::One); }
  static Instr unit_check() { return Instr(InstrKind::UnitCheck); }
  static Instr erase() { return Instr(InstrKind::Erase); }
  static Instr proj1() { return Instr(InstrKind::Proj1); }
  static Instr proj2() { return Instr(InstrKind::Proj2); }
  static Instr dup() { return Instr(InstrKind::Dup); }
  static Instr pair(Instr first, Instr second);

  InstrKind kind() const { return kind_; }
  bool is_pair() const { return kind_ == InstrKind::Pair; }

  // Pre: is_pair().
  const Instr& first() const { return node_->first; }
  const Instr& second() const { return node_->second; }

  uint64_t hash() const;

  friend bool operator==(const Instr& a, const Instr& b);
  friend bool operator!=(const Instr& a, const Instr& b) { return !(a == b); }

 private:
  struct Node {
    Instr first;
    Instr second;
    uint64_t hash;
  };

  explicit Instr(InstrKind k) : kind_(k) {}

  InstrKind kind_;
  std::shared_ptr<const Node> node_;
};

// The partial-function semantics. nullopt means the instruction does not
// apply; this is a normal outcome, not a fault.
std::optional<Tree> apply_instr(const Instr& i, const Tree& t);

// Pair-nesting depth of the instruction AST; leaves have depth 0.
uint32_t instr_arity_depth(const Instr& i);

// Textual syntax shared with machine files:
//   1 | unit | eps | pi1 | pi2 | delta | pair(i,j)
std::string print_instr(const Instr& i);
Instr parse_instr(std::string_view s);  // throws ParseError

}  // namespace treemach
