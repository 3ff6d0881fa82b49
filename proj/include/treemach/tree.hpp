#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treemach/errors.hpp"

namespace treemach {

// The unlabeled binary tree datum. A machine's entire "tape" is one Tree.
// Values are immutable and share subtrees freely; equality is structural
// and is the only notion of equality used anywhere.
class Tree {
 public:
  Tree() = default;  // unit, "()"

  static Tree unit() { return Tree{}; }
  static Tree pair(Tree left, Tree right);

  bool is_unit() const { return node_ == nullptr; }
  bool is_pair() const { return node_ != nullptr; }

  // Pre: is_pair().
  const Tree& left() const { return node_->left; }
  const Tree& right() const { return node_->right; }

  uint64_t hash() const { return node_ ? node_->hash : kUnitHash; }

  // Total node count (units and pairs). Equals the Polish form's length.
  uint64_t node_count() const { return node_ ? node_->count : 1; }

  friend bool operator==(const Tree& a, const Tree& b);
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

  // Canonical order: unit < pair; pairs compare left child then right.
  static int compare(const Tree& a, const Tree& b);
  friend bool operator<(const Tree& a, const Tree& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Tree left;
    Tree right;
    uint64_t hash;
    uint64_t count;
  };

  static constexpr uint64_t kUnitHash = 0x9e3779b97f4a7c15ull;

  explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct TreeHash {
  size_t operator()(const Tree& t) const { return static_cast<size_t>(t.hash()); }
};

// Binary numeral embedding: 0 = (), 2n+1 = ((), n), 2n+2 = (((),()), n).
Tree encode_nat(uint64_t n);

// Left inverse of encode_nat; nullopt on trees outside its image.
std::optional<uint64_t> decode_nat(const Tree& t);

// Prefix serialization over the alphabet {p, u}:
// unit -> "u", (a,b) -> "p" ++ polish(a) ++ polish(b).
std::string to_polish(const Tree& t);

// Inverse of to_polish. Throws ParseError on prefix underflow, trailing
// characters, or characters outside {p, u}.
Tree from_polish(std::string_view s);

// Literal notation: "()" | "(" tree "," tree ")" with arbitrary whitespace,
// plus the sugar "#n" for encode_nat(n). Throws ParseError.
Tree parse_tree(std::string_view s);

// Canonical form: no whitespace, no sugar. With numerals=true, maximal
// subtrees equal to encode_nat(n) for some n >= 1 print as "#n".
std::string print_tree(const Tree& t, bool numerals = false);

// An ordered list of distinct symbol names; the symbol's position is its
// code and its tree is encode_nat(code).
class SymbolTable {
 public:
  SymbolTable() = default;
  explicit SymbolTable(std::vector<std::string> names);  // throws RuleError on duplicates

  size_t size() const { return names_.size(); }
  const std::string& name(size_t code) const { return names_.at(code); }
  const Tree& tree_of(size_t code) const { return trees_.at(code); }

  std::optional<size_t> code_of(std::string_view name) const;
  std::optional<size_t> code_of_tree(const Tree& t) const;

 private:
  std::vector<std::string> names_;
  std::vector<Tree> trees_;
  std::unordered_map<Tree, size_t, TreeHash> by_tree_;
};

}  // namespace treemach
