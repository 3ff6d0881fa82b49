#include "treemach/tree.hpp"

#include <cctype>

namespace treemach {

namespace {

uint64_t mix_hash(uint64_t a, uint64_t b) {
  uint64_t x = a + 0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2);
  x ^= b;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x | 1;  // keep zero free for sentinels
}

}  // namespace

Tree Tree::pair(Tree left, Tree right) {
  auto node = std::make_shared<Node>();
  node->hash = mix_hash(left.hash(), right.hash());
  node->count = 1 + left.node_count() + right.node_count();
  node->left = std::move(left);
  node->right = std::move(right);
  return Tree(std::move(node));
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.node_->hash != b.node_->hash || a.node_->count != b.node_->count) return false;
  return a.left() == b.left() && a.right() == b.right();
}

int Tree::compare(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.node_) return b.node_ ? -1 : 0;
  if (!b.node_) return 1;
  int c = compare(a.left(), b.left());
  if (c != 0) return c;
  return compare(a.right(), b.right());
}

Tree encode_nat(uint64_t n) {
  // Peel bijective-binary digits outside-in, then fold them back.
  std::vector<bool> odd_digit;
  while (n != 0) {
    if (n % 2 == 1) {
      odd_digit.push_back(true);
      n = (n - 1) / 2;
    } else {
      odd_digit.push_back(false);
      n = (n - 2) / 2;
    }
  }
  Tree t = Tree::unit();
  static const Tree kOddMark = Tree::unit();
  static const Tree kEvenMark = Tree::pair(Tree::unit(), Tree::unit());
  for (auto it = odd_digit.rbegin(); it != odd_digit.rend(); ++it) {
    t = Tree::pair(*it ? kOddMark : kEvenMark, t);
  }
  return t;
}

std::optional<uint64_t> decode_nat(const Tree& t) {
  std::vector<bool> odd_digit;
  const Tree* cur = &t;
  while (cur->is_pair()) {
    const Tree& mark = cur->left();
    if (mark.is_unit()) {
      odd_digit.push_back(true);
    } else if (mark.left().is_unit() && mark.right().is_unit()) {
      odd_digit.push_back(false);
    } else {
      return std::nullopt;
    }
    cur = &cur->right();
  }
  uint64_t n = 0;
  for (auto it = odd_digit.rbegin(); it != odd_digit.rend(); ++it) {
    uint64_t add = *it ? 1 : 2;
    if (n > (UINT64_MAX - add) / 2) return std::nullopt;  // out of range
    n = 2 * n + add;
  }
  return n;
}

std::string to_polish(const Tree& t) {
  std::string out;
  out.reserve(t.node_count());
  std::vector<const Tree*> stack{&t};
  while (!stack.empty()) {
    const Tree* cur = stack.back();
    stack.pop_back();
    if (cur->is_unit()) {
      out.push_back('u');
    } else {
      out.push_back('p');
      stack.push_back(&cur->right());
      stack.push_back(&cur->left());
    }
  }
  return out;
}

Tree from_polish(std::string_view s) {
  // Frames hold a finished left child awaiting its sibling; nullopt marks a
  // pair whose left child is still being read.
  std::vector<std::optional<Tree>> frames;
  size_t i = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    Tree done;
    if (c == 'p') {
      frames.emplace_back(std::nullopt);
      continue;
    } else if (c == 'u') {
      done = Tree::unit();
    } else {
      throw ParseError("expected 'p' or 'u'", i);
    }
    while (true) {
      if (frames.empty()) {
        if (i + 1 != s.size()) throw ParseError("trailing characters after tree", i + 1);
        return done;
      }
      if (!frames.back().has_value()) {
        frames.back() = std::move(done);
        break;
      }
      Tree left = std::move(*frames.back());
      frames.pop_back();
      done = Tree::pair(std::move(left), std::move(done));
    }
  }
  throw ParseError("incomplete tree", s.size());
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view s) : s_(s) {}

  Tree parse_all() {
    Tree t = parse();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input after tree", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Tree parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected tree", pos_);
    char c = s_[pos_];
    if (c == '#') {
      ++pos_;
      return parse_numeral();
    }
    if (c != '(') throw ParseError("expected '(' or '#'", pos_);
    ++pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ')') {
      ++pos_;
      return Tree::unit();
    }
    Tree left = parse();
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ',') throw ParseError("expected ','", pos_);
    ++pos_;
    Tree right = parse();
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return Tree::pair(std::move(left), std::move(right));
  }

  Tree parse_numeral() {
    size_t start = pos_;
    uint64_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      uint64_t d = static_cast<uint64_t>(s_[pos_] - '0');
      if (n > (UINT64_MAX - d) / 10) throw ParseError("numeral out of range", start);
      n = 10 * n + d;
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected digits after '#'", pos_);
    return encode_nat(n);
  }

  std::string_view s_;
  size_t pos_ = 0;
};

void print_rec(const Tree& t, bool numerals, std::string& out) {
  if (numerals && t.is_pair()) {
    if (auto n = decode_nat(t); n.has_value() && *n >= 1) {
      out += '#';
      out += std::to_string(*n);
      return;
    }
  }
  if (t.is_unit()) {
    out += "()";
    return;
  }
  out += '(';
  print_rec(t.left(), numerals, out);
  out += ',';
  print_rec(t.right(), numerals, out);
  out += ')';
}

}  // namespace

Tree parse_tree(std::string_view s) { return TreeParser(s).parse_all(); }

std::string print_tree(const Tree& t, bool numerals) {
  std::string out;
  print_rec(t, numerals, out);
  return out;
}

SymbolTable::SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
  trees_.reserve(names_.size());
  for (size_t i = 0; i < names_.size(); ++i) {
    trees_.push_back(encode_nat(i));
    if (!by_tree_.emplace(trees_.back(), i).second) {
      throw RuleError("duplicate symbol tree");  // unreachable: encode_nat is injective
    }
  }
  for (size_t i = 0; i < names_.size(); ++i) {
    for (size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) throw RuleError("duplicate symbol name: " + names_[i]);
    }
  }
}

std::optional<size_t> SymbolTable::code_of(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<size_t> SymbolTable::code_of_tree(const Tree& t) const {
  auto it = by_tree_.find(t);
  if (it == by_tree_.end()) return std::nullopt;
  return it->second;
}

}  // namespace treemach
