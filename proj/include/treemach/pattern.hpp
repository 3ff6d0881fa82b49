#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treemach/tree.hpp"

namespace treemach {

class MachineExpr;

// A guard: a tree with variables. Within one guard every named variable
// occurs at most once.
class Pattern {
 public:
  enum class Kind : uint8_t { Var, Wildcard, Unit, Pair };

  Pattern() : Pattern(unit()) {}

  static Pattern var(std::string name);
  static Pattern wildcard();
  static Pattern unit();
  static Pattern pair(Pattern left, Pattern right);
  static Pattern of_tree(const Tree& t);  // ground pattern

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }   // pre: Var
  const Pattern& left() const { return node_->left; }       // pre: Pair
  const Pattern& right() const { return node_->right; }     // pre: Pair

  uint32_t depth() const { return node_->depth; }

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    uint32_t depth = 0;
    std::string name;
    Pattern left, right;
    Node() : kind(Kind::Unit) {}
  };
  explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// An action: a tree with variables; every variable must be bound by the
// companion guard (repeats are allowed).
class ActionTemplate {
 public:
  enum class Kind : uint8_t { Var, Unit, Pair };

  ActionTemplate() : ActionTemplate(unit()) {}

  static ActionTemplate var(std::string name);
  static ActionTemplate unit();
  static ActionTemplate pair(ActionTemplate left, ActionTemplate right);
  static ActionTemplate of_tree(const Tree& t);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const ActionTemplate& left() const { return node_->left; }
  const ActionTemplate& right() const { return node_->right; }

  uint32_t depth() const { return node_->depth; }

  friend bool operator==(const ActionTemplate& a, const ActionTemplate& b);
  friend bool operator!=(const ActionTemplate& a, const ActionTemplate& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    uint32_t depth = 0;
    std::string name;
    ActionTemplate left, right;
    Node() : kind(Kind::Unit) {}
  };
  explicit ActionTemplate(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct RuleIssue {
  enum class Kind { NonlinearGuard, UnboundActionVar };
  Kind kind;
  std::string var;
};

// nullopt means the rule is well formed.
std::optional<RuleIssue> validate_rule(const Pattern& guard, const ActionTemplate& action);

// A validated guard => action pair denoting a partial function on trees.
class Rule {
 public:
  Rule(Pattern guard, ActionTemplate action);  // throws RuleError if invalid

  const Pattern& guard() const { return guard_; }
  const ActionTemplate& action() const { return action_; }

  // Match-and-instantiate; nullopt when the guard does not match.
  std::optional<Tree> apply(const Tree& t) const;

  uint32_t depth() const;  // max of guard/action depth

  friend bool operator==(const Rule& a, const Rule& b);
  friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }

 private:
  struct Slotted;  // action with variables resolved to guard slots
  Pattern guard_;
  ActionTemplate action_;
  std::vector<std::string> var_order_;
  std::shared_ptr<const Slotted> slotted_;
};

using Binding = std::map<std::string, Tree>;

// Structural matching; on success the binding maps each named guard
// variable to the matched subtree.
std::optional<Binding> match_guard(const Pattern& guard, const Tree& t);

std::optional<Tree> apply_rule(const Rule& r, const Tree& t);

// True iff some tree matches both guards. Variable namespaces are treated
// as disjoint, so with linear patterns this is a pure shape check.
bool unifiable(const Pattern& a, const Pattern& b);

// A clause list denoting the union of its rules. The `disjoint` factory
// implements the "|" combinator and rejects overlapping guards.
class RuleSet {
 public:
  explicit RuleSet(Rule r, std::string name = "");
  static RuleSet disjoint(std::vector<Rule> clauses, std::string name = "");

  const std::vector<Rule>& clauses() const { return clauses_; }
  const std::string& name() const { return name_; }
  uint32_t depth() const { return depth_; }

  std::optional<Tree> apply(const Tree& t) const;

  friend bool operator==(const RuleSet& a, const RuleSet& b);
  friend bool operator!=(const RuleSet& a, const RuleSet& b) { return !(a == b); }

 private:
  RuleSet(std::vector<Rule> clauses, std::string name, bool check);
  std::vector<Rule> clauses_;
  std::string name_;
  uint32_t depth_ = 1;
};

// Translation into plain instruction expressions. The result is star-free
// and union-free: sequences, componentwise pairs, and primitives only.
MachineExpr compile_rule(const Rule& r);

// Union of per-rule compilations; throws RuleError when any two guards are
// unifiable.
MachineExpr compile_union(const std::vector<Rule>& rules);

// Text syntax: `pattern => action` clauses separated by `|`, with
//   pattern := "_" | ident | "()" | "(" pattern "," pattern ")" | "#" digits
// Idents found in `symbols` denote their encoded trees; all other idents are
// variables. Actions use the same syntax minus "_".
std::vector<Rule> parse_rule_clauses(std::string_view s, const SymbolTable* symbols = nullptr);

std::string print_pattern(const Pattern& p);
std::string print_action(const ActionTemplate& a);
std::string print_rule(const Rule& r);
std::string print_rule_set(const RuleSet& rs);

}  // namespace treemach
