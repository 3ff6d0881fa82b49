#include "treemach/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace treemach {

Pattern Pattern::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Pattern(std::move(n));
}

Pattern Pattern::wildcard() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Wildcard;
  return Pattern(std::move(n));
}

Pattern Pattern::unit() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  return Pattern(std::move(n));
}

Pattern Pattern::pair(Pattern left, Pattern right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->depth = 1 + std::max(left.depth(), right.depth());
  n->left = std::move(left);
  n->right = std::move(right);
  return Pattern(std::move(n));
}

Pattern Pattern::of_tree(const Tree& t) {
  if (t.is_unit()) return unit();
  return pair(of_tree(t.left()), of_tree(t.right()));
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Pattern::Kind::Var: return a.name() == b.name();
    case Pattern::Kind::Wildcard:
    case Pattern::Kind::Unit: return true;
    case Pattern::Kind::Pair: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

ActionTemplate ActionTemplate::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return ActionTemplate(std::move(n));
}

ActionTemplate ActionTemplate::unit() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  return ActionTemplate(std::move(n));
}

ActionTemplate ActionTemplate::pair(ActionTemplate left, ActionTemplate right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->depth = 1 + std::max(left.depth(), right.depth());
  n->left = std::move(left);
  n->right = std::move(right);
  return ActionTemplate(std::move(n));
}

ActionTemplate ActionTemplate::of_tree(const Tree& t) {
  if (t.is_unit()) return unit();
  return pair(of_tree(t.left()), of_tree(t.right()));
}

bool operator==(const ActionTemplate& a, const ActionTemplate& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ActionTemplate::Kind::Var: return a.name() == b.name();
    case ActionTemplate::Kind::Unit: return true;
    case ActionTemplate::Kind::Pair: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

void collect_guard_vars(const Pattern& p, std::vector<std::string>& out) {
  switch (p.kind()) {
    case Pattern::Kind::Var: out.push_back(p.name()); break;
    case Pattern::Kind::Pair:
      collect_guard_vars(p.left(), out);
      collect_guard_vars(p.right(), out);
      break;
    default: break;
  }
}

std::optional<RuleIssue> check_action_bound(const ActionTemplate& a,
                                            const std::vector<std::string>& bound) {
  switch (a.kind()) {
    case ActionTemplate::Kind::Var:
      if (std::find(bound.begin(), bound.end(), a.name()) == bound.end()) {
        return RuleIssue{RuleIssue::Kind::UnboundActionVar, a.name()};
      }
      return std::nullopt;
    case ActionTemplate::Kind::Pair: {
      if (auto issue = check_action_bound(a.left(), bound)) return issue;
      return check_action_bound(a.right(), bound);
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<RuleIssue> validate_rule(const Pattern& guard, const ActionTemplate& action) {
  std::vector<std::string> vars;
  collect_guard_vars(guard, vars);
  for (size_t i = 0; i < vars.size(); ++i) {
    for (size_t j = i + 1; j < vars.size(); ++j) {
      if (vars[i] == vars[j]) return RuleIssue{RuleIssue::Kind::NonlinearGuard, vars[i]};
    }
  }
  return check_action_bound(action, vars);
}

// Action with variables resolved to match-slot indices.
struct Rule::Slotted {
  enum class Kind : uint8_t { Slot, Unit, Pair };
  Kind kind = Kind::Unit;
  size_t slot = 0;
  std::unique_ptr<Slotted> left, right;
};

namespace {

std::unique_ptr<Rule::Slotted> resolve_action(const ActionTemplate& a,
                                              const std::vector<std::string>& order) {
  auto s = std::make_unique<Rule::Slotted>();
  switch (a.kind()) {
    case ActionTemplate::Kind::Var:
      s->kind = Rule::Slotted::Kind::Slot;
      s->slot = static_cast<size_t>(
          std::find(order.begin(), order.end(), a.name()) - order.begin());
      break;
    case ActionTemplate::Kind::Unit:
      s->kind = Rule::Slotted::Kind::Unit;
      break;
    case ActionTemplate::Kind::Pair:
      s->kind = Rule::Slotted::Kind::Pair;
      s->left = resolve_action(a.left(), order);
      s->right = resolve_action(a.right(), order);
      break;
  }
  return s;
}

bool match_slots(const Pattern& p, const Tree& t, std::vector<Tree>& slots, size_t& next) {
  switch (p.kind()) {
    case Pattern::Kind::Var:
      slots[next++] = t;
      return true;
    case Pattern::Kind::Wildcard:
      return true;
    case Pattern::Kind::Unit:
      return t.is_unit();
    case Pattern::Kind::Pair:
      if (!t.is_pair()) return false;
      return match_slots(p.left(), t.left(), slots, next) &&
             match_slots(p.right(), t.right(), slots, next);
  }
  return false;
}

Tree build_slotted(const Rule::Slotted& s, const std::vector<Tree>& slots) {
  switch (s.kind) {
    case Rule::Slotted::Kind::Slot: return slots[s.slot];
    case Rule::Slotted::Kind::Unit: return Tree::unit();
    case Rule::Slotted::Kind::Pair:
      return Tree::pair(build_slotted(*s.left, slots), build_slotted(*s.right, slots));
  }
  return Tree::unit();
}

}  // namespace

Rule::Rule(Pattern guard, ActionTemplate action)
    : guard_(std::move(guard)), action_(std::move(action)) {
  if (auto issue = validate_rule(guard_, action_)) {
    const char* what = issue->kind == RuleIssue::Kind::NonlinearGuard
                           ? "nonlinear guard variable: "
                           : "unbound action variable: ";
    throw RuleError(what + issue->var);
  }
  collect_guard_vars(guard_, var_order_);
  slotted_ = resolve_action(action_, var_order_);
}

std::optional<Tree> Rule::apply(const Tree& t) const {
  std::vector<Tree> slots(var_order_.size());
  size_t next = 0;
  if (!match_slots(guard_, t, slots, next)) return std::nullopt;
  return build_slotted(*slotted_, slots);
}

uint32_t Rule::depth() const { return std::max(guard_.depth(), action_.depth()); }

bool operator==(const Rule& a, const Rule& b) {
  return a.guard_ == b.guard_ && a.action_ == b.action_;
}

std::optional<Binding> match_guard(const Pattern& guard, const Tree& t) {
  struct Walk {
    Binding binding;
    bool go(const Pattern& p, const Tree& t) {
      switch (p.kind()) {
        case Pattern::Kind::Var:
          binding.emplace(p.name(), t);
          return true;
        case Pattern::Kind::Wildcard: return true;
        case Pattern::Kind::Unit: return t.is_unit();
        case Pattern::Kind::Pair:
          return t.is_pair() && go(p.left(), t.left()) && go(p.right(), t.right());
      }
      return false;
    }
  } walk;
  if (!walk.go(guard, t)) return std::nullopt;
  return std::move(walk.binding);
}

std::optional<Tree> apply_rule(const Rule& r, const Tree& t) { return r.apply(t); }

bool unifiable(const Pattern& a, const Pattern& b) {
  // Linear, renamed-apart patterns: a variable or wildcard meets anything.
  if (a.kind() == Pattern::Kind::Var || a.kind() == Pattern::Kind::Wildcard) return true;
  if (b.kind() == Pattern::Kind::Var || b.kind() == Pattern::Kind::Wildcard) return true;
  if (a.kind() == Pattern::Kind::Unit && b.kind() == Pattern::Kind::Unit) return true;
  if (a.kind() == Pattern::Kind::Pair && b.kind() == Pattern::Kind::Pair) {
    return unifiable(a.left(), b.left()) && unifiable(a.right(), b.right());
  }
  return false;
}

RuleSet::RuleSet(Rule r, std::string name)
    : RuleSet(std::vector<Rule>{std::move(r)}, std::move(name), false) {}

RuleSet RuleSet::disjoint(std::vector<Rule> clauses, std::string name) {
  return RuleSet(std::move(clauses), std::move(name), true);
}

RuleSet::RuleSet(std::vector<Rule> clauses, std::string name, bool check)
    : clauses_(std::move(clauses)), name_(std::move(name)) {
  if (clauses_.empty()) throw RuleError("empty clause list");
  if (check) {
    for (size_t i = 0; i < clauses_.size(); ++i) {
      for (size_t j = i + 1; j < clauses_.size(); ++j) {
        if (unifiable(clauses_[i].guard(), clauses_[j].guard())) {
          throw RuleError("overlapping guards: clauses " + std::to_string(i) + " and " +
                          std::to_string(j));
        }
      }
    }
  }
  for (const Rule& r : clauses_) depth_ = std::max(depth_, 1 + r.depth());
}

std::optional<Tree> RuleSet::apply(const Tree& t) const {
  for (const Rule& r : clauses_) {
    if (auto out = r.apply(t)) return out;
  }
  return std::nullopt;
}

bool operator==(const RuleSet& a, const RuleSet& b) { return a.clauses_ == b.clauses_; }

namespace {

class RuleParser {
 public:
  RuleParser(std::string_view s, const SymbolTable* symbols) : s_(s), symbols_(symbols) {}

  std::vector<Rule> parse_clauses() {
    std::vector<Rule> out;
    while (true) {
      Pattern g = parse_pattern();
      skip_ws();
      if (pos_ + 1 >= s_.size() || s_[pos_] != '=' || s_[pos_ + 1] != '>') {
        throw ParseError("expected '=>'", pos_);
      }
      pos_ += 2;
      ActionTemplate a = parse_action();
      out.emplace_back(std::move(g), std::move(a));
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '|') {
        ++pos_;
        continue;
      }
      break;
    }
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("trailing input after rule", pos_);
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  Tree parse_numeral_tree() {
    size_t start = pos_;
    uint64_t n = 0;
    bool any = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = 10 * n + static_cast<uint64_t>(s_[pos_] - '0');
      ++pos_;
      any = true;
    }
    if (!any) throw ParseError("expected digits after '#'", start);
    return encode_nat(n);
  }

  Pattern parse_pattern() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected pattern", pos_);
    char c = s_[pos_];
    if (c == '#') {
      ++pos_;
      return Pattern::of_tree(parse_numeral_tree());
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return Pattern::unit();
      }
      Pattern l = parse_pattern();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ',') throw ParseError("expected ','", pos_);
      ++pos_;
      Pattern r = parse_pattern();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return Pattern::pair(std::move(l), std::move(r));
    }
    size_t at = pos_;
    std::string_view w = ident();
    if (w.empty()) throw ParseError("expected pattern", at);
    if (w == "_") return Pattern::wildcard();
    if (symbols_) {
      if (auto code = symbols_->code_of(w)) return Pattern::of_tree(symbols_->tree_of(*code));
    }
    return Pattern::var(std::string(w));
  }

  ActionTemplate parse_action() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected action", pos_);
    char c = s_[pos_];
    if (c == '#') {
      ++pos_;
      return ActionTemplate::of_tree(parse_numeral_tree());
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return ActionTemplate::unit();
      }
      ActionTemplate l = parse_action();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ',') throw ParseError("expected ','", pos_);
      ++pos_;
      ActionTemplate r = parse_action();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return ActionTemplate::pair(std::move(l), std::move(r));
    }
    size_t at = pos_;
    std::string_view w = ident();
    if (w.empty() || w == "_") throw ParseError("expected action", at);
    if (symbols_) {
      if (auto code = symbols_->code_of(w)) {
        return ActionTemplate::of_tree(symbols_->tree_of(*code));
      }
    }
    return ActionTemplate::var(std::string(w));
  }

  std::string_view s_;
  const SymbolTable* symbols_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<Rule> parse_rule_clauses(std::string_view s, const SymbolTable* symbols) {
  return RuleParser(s, symbols).parse_clauses();
}

std::string print_pattern(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Var: return p.name();
    case Pattern::Kind::Wildcard: return "_";
    case Pattern::Kind::Unit: return "()";
    case Pattern::Kind::Pair:
      return "(" + print_pattern(p.left()) + "," + print_pattern(p.right()) + ")";
  }
  return "?";
}

std::string print_action(const ActionTemplate& a) {
  switch (a.kind()) {
    case ActionTemplate::Kind::Var: return a.name();
    case ActionTemplate::Kind::Unit: return "()";
    case ActionTemplate::Kind::Pair:
      return "(" + print_action(a.left()) + "," + print_action(a.right()) + ")";
  }
  return "?";
}

std::string print_rule(const Rule& r) {
  return print_pattern(r.guard()) + " => " + print_action(r.action());
}

std::string print_rule_set(const RuleSet& rs) {
  std::string out;
  for (size_t i = 0; i < rs.clauses().size(); ++i) {
    if (i > 0) out += " | ";
    out += print_rule(rs.clauses()[i]);
  }
  return out;
}

}  // namespace treemach
