#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treemach/instr.hpp"
#include "treemach/pattern.hpp"
#include "treemach/tree.hpp"

namespace treemach {

// A regular expression over instruction-like atoms. Atoms are primitive
// instructions and rule sets; `pair_c` is the componentwise combinator on
// whole expressions (on (y,z), run the first component's relation on y and
// the second's on z).
class MachineExpr {
 public:
  enum class Kind : uint8_t { Zero, Prim, Rules, PairC, Seq, Alt, Star, Named };

  MachineExpr() = default;  // Zero, the empty relation

  static MachineExpr zero() { return MachineExpr(); }
  static MachineExpr prim(Instr i);
  static MachineExpr rules(RuleSet rs);
  static MachineExpr pair_c(MachineExpr first, MachineExpr second);
  static MachineExpr seq(MachineExpr a, MachineExpr b);
  static MachineExpr alt(MachineExpr a, MachineExpr b);
  static MachineExpr star(MachineExpr body);
  static MachineExpr named(std::string name, MachineExpr definition);

  // Left-nested folds; empty input yields Prim(One) for seq and Zero for alt.
  static MachineExpr seq_all(std::vector<MachineExpr> parts);
  static MachineExpr alt_all(std::vector<MachineExpr> parts);

  Kind kind() const { return node_ ? node_->kind : Kind::Zero; }

  const Instr& prim_instr() const { return node_->instr; }       // pre: Prim
  const RuleSet& rule_set() const { return *node_->rules; }      // pre: Rules
  const MachineExpr& first() const { return node_->a; }          // pre: binary/Star
  const MachineExpr& second() const { return node_->b; }         // pre: binary
  const MachineExpr& body() const { return node_->a; }           // pre: Star
  const std::string& name() const { return node_->name; }        // pre: Named
  const MachineExpr& definition() const { return node_->a; }     // pre: Named

  friend bool operator==(const MachineExpr& a, const MachineExpr& b);
  friend bool operator!=(const MachineExpr& a, const MachineExpr& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Instr instr;
    std::shared_ptr<const RuleSet> rules;
    MachineExpr a, b;
    std::string name;
  };
  explicit MachineExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Budget {
  uint64_t max_steps = 1'000'000;
  uint64_t max_configs = 100'000;
};

enum class CostMode : uint8_t {
  PerInstruction,  // every Prim/Rules application costs 1
  DepthWeighted,   // costs 1 + pair-nesting depth of the applied atom
};

struct RunStats {
  uint64_t steps = 0;            // accumulated cost under the active mode
  uint64_t applications = 0;     // raw count of atom applications
  uint64_t configs_visited = 0;  // configurations explored by the top-level run
  bool truncated = false;
  std::string reason;
};

struct RunResult {
  std::vector<Tree> outputs;  // duplicate-free, canonically ordered
  RunStats stats;
};

class MachineGraph;

struct EpsilonLabel {};

struct PairRelLabel {
  std::shared_ptr<const MachineGraph> first;
  std::shared_ptr<const MachineGraph> second;
  std::string text;  // printable form of the originating expression
};

using EdgeLabel = std::variant<EpsilonLabel, Instr, RuleSet, PairRelLabel>;

// A finite state graph with relation-labelled edges. Epsilon edges are
// closure-compressed when the graph is built; they cost nothing to cross.
class MachineGraph {
 public:
  struct Edge {
    uint32_t from;
    EdgeLabel label;
    uint32_t to;
  };

  MachineGraph(uint32_t num_states, std::vector<uint32_t> initial, std::vector<uint32_t> finals,
               std::vector<Edge> edges);

  uint32_t num_states() const { return num_states_; }
  const std::vector<uint32_t>& initial() const { return initial_; }
  const std::vector<uint32_t>& finals() const { return finals_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool final_via_closure(uint32_t state) const { return final_closure_[state]; }
  // Non-epsilon edges reachable from `state` through epsilon moves.
  const std::vector<uint32_t>& expansion(uint32_t state) const { return expansion_[state]; }

 private:
  uint32_t num_states_;
  std::vector<uint32_t> initial_;
  std::vector<uint32_t> finals_;
  std::vector<Edge> edges_;
  std::vector<bool> final_closure_;
  std::vector<std::vector<uint32_t>> expansion_;  // edge indices
};

// Standard regex-to-automaton construction; the graph computes the same
// relation as the expression.
MachineGraph graph_of_expr(const MachineExpr& e);

// Breadth-first exploration of (state, tree) configurations with
// deduplication. Truncation is data, not failure: `max_steps` bounds the
// total cost across nested sub-runs, `max_configs` bounds each run's
// visited set.
RunResult run(const MachineGraph& m, const Tree& input, const Budget& budget = {},
              CostMode mode = CostMode::PerInstruction);

struct TraceStep {
  std::string label;
  uint32_t state;  // state after the step
  Tree tree;       // tree after the step
};

struct TracePath {
  uint32_t start_state;
  Tree input;
  Tree output;
  std::vector<TraceStep> steps;
};

// One witnessing path (the breadth-first shortest) per distinct output.
std::vector<TracePath> trace(const MachineGraph& m, const Tree& input, const Budget& budget = {},
                             CostMode mode = CostMode::PerInstruction);

struct EqCheck {
  bool equal = false;
  bool inconclusive = false;  // some run truncated
  std::optional<Tree> counterexample;
};

EqCheck relation_equal_on(const MachineGraph& m1, const MachineGraph& m2,
                          const std::vector<Tree>& tests, const Budget& budget = {});

// Kleene state elimination. The result computes the same relation as the
// graph; epsilon edges come back as the identity instruction, so path costs
// are not preserved.
MachineExpr graph_to_expr(const MachineGraph& m);

std::string print_label(const EdgeLabel& label);

}  // namespace treemach
