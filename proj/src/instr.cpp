#include "treemach/instr.hpp"

#include <array>
#include <cctype>

namespace treemach {

namespace {

uint64_t mix(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 31;
  return x;
}

}  // namespace

Instr Instr::pair(Instr first, Instr second) {
  Instr i(InstrKind::Pair);
  auto node = std::make_shared<Node>();
  node->hash = mix(first.hash(), second.hash());
  node->first = std::move(first);
  node->second = std::move(second);
  i.node_ = std::move(node);
  return i;
}

uint64_t Instr::hash() const {
  if (kind_ == InstrKind::Pair) return node_->hash;
  return 0x517cc1b727220a95ull * (static_cast<uint64_t>(kind_) + 1);
}

bool operator==(const Instr& a, const Instr& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != InstrKind::Pair) return true;
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return a.first() == b.first() && a.second() == b.second();
}

std::optional<Tree> apply_instr(const Instr& i, const Tree& t) {
  switch (i.kind()) {
    case InstrKind::One:
      return t;
    case InstrKind::UnitCheck:
      if (!t.is_unit()) return std::nullopt;
      return t;
    case InstrKind::Erase:
      return Tree::unit();
    case InstrKind::Proj1:
      if (!t.is_pair()) return std::nullopt;
      return t.left();
    case InstrKind::Proj2:
      if (!t.is_pair()) return std::nullopt;
      return t.right();
    case InstrKind::Dup:
      return Tree::pair(t, t);
    case InstrKind::Pair: {
      if (!t.is_pair()) return std::nullopt;
      auto l = apply_instr(i.first(), t.left());
      if (!l) return std::nullopt;
      auto r = apply_instr(i.second(), t.right());
      if (!r) return std::nullopt;
      return Tree::pair(std::move(*l), std::move(*r));
    }
  }
  return std::nullopt;
}

uint32_t instr_arity_depth(const Instr& i) {
  if (!i.is_pair()) return 0;
  return 1 + std::max(instr_arity_depth(i.first()), instr_arity_depth(i.second()));
}

std::string print_instr(const Instr& i) {
  switch (i.kind()) {
    case InstrKind::One: return "1";
    case InstrKind::UnitCheck: return "unit";
    case InstrKind::Erase: return "eps";
    case InstrKind::Proj1: return "pi1";
    case InstrKind::Proj2: return "pi2";
    case InstrKind::Dup: return "delta";
    case InstrKind::Pair:
      return "pair(" + print_instr(i.first()) + ", " + print_instr(i.second()) + ")";
  }
  return "?";
}

namespace {

class InstrParser {
 public:
  explicit InstrParser(std::string_view s) : s_(s) {}

  Instr parse_all() {
    Instr i = parse();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input after instruction", pos_);
    return i;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view word() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  Instr parse() {
    skip_ws();
    size_t at = pos_;
    std::string_view w = word();
    if (w == "1") return Instr::one();
    if (w == "unit") return Instr::unit_check();
    if (w == "eps") return Instr::erase();
    if (w == "pi1") return Instr::proj1();
    if (w == "pi2") return Instr::proj2();
    if (w == "delta") return Instr::dup();
    if (w == "pair") {
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '(') throw ParseError("expected '(' after pair", pos_);
      ++pos_;
      Instr a = parse();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ',') throw ParseError("expected ','", pos_);
      ++pos_;
      Instr b = parse();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return Instr::pair(std::move(a), std::move(b));
    }
    throw ParseError("expected instruction", at);
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Instr parse_instr(std::string_view s) { return InstrParser(s).parse_all(); }

}  // namespace treemach
