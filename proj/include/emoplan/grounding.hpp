#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "emoplan/pddl/ast.hpp"

namespace emoplan {

// Interned ground atom and ground fluent handles, valid within one Task.
struct FactId {
  std::uint32_t value = 0;
  bool operator==(const FactId&) const = default;
  auto operator<=>(const FactId&) const = default;
};

struct FluentId {
  std::uint32_t value = 0;
  bool operator==(const FluentId&) const = default;
  auto operator<=>(const FluentId&) const = default;
};

// Ground numeric expression; only `?duration` may remain symbolic.
struct GroundExpr {
  using Kind = pddl::NumericExpr::Kind;

  Kind kind = Kind::Constant;
  double value = 0.0;
  FluentId fluent;
  pddl::BinaryOp op = pddl::BinaryOp::Add;
  std::vector<GroundExpr> operands;

  bool operator==(const GroundExpr&) const;
};

struct GroundLiteral {
  FactId fact;
  bool positive = true;
  bool operator==(const GroundLiteral&) const = default;
};

struct GroundComparison {
  pddl::CompareOp op = pddl::CompareOp::Less;
  GroundExpr lhs;
  GroundExpr rhs;
  bool operator==(const GroundComparison&) const = default;
};

using GroundCondition = std::variant<GroundLiteral, GroundComparison>;

struct GroundNumericEffect {
  pddl::AssignOp op = pddl::AssignOp::Increase;
  FluentId fluent;
  GroundExpr amount;
  bool operator==(const GroundNumericEffect&) const = default;
};

using GroundEffect = std::variant<GroundLiteral, GroundNumericEffect>;

struct GroundTimedCondition {
  pddl::TimeSpec when = pddl::TimeSpec::AtStart;
  GroundCondition condition;
  bool operator==(const GroundTimedCondition&) const = default;
};

struct GroundTimedEffect {
  pddl::TimeSpec when = pddl::TimeSpec::AtStart;
  GroundEffect effect;
  bool operator==(const GroundTimedEffect&) const = default;
};

struct GroundAction {
  std::string schema_name;
  std::vector<std::string> bound_args;
  pddl::DurationConstraint duration;
  std::vector<GroundTimedCondition> conditions;
  std::vector<GroundTimedEffect> effects;

  // "(name arg1 arg2)" as it appears in plan files.
  std::string signature() const;

  bool operator==(const GroundAction&) const = default;
};

/// The grounded planning task: every type-correct action instance plus the
/// interning tables that give meaning to FactId and FluentId.
///
/// Facts and fluents are interned on first mention (init, goal, or any ground
/// action), so the tables are complete for everything the task can touch.
/// PAD fluents (`pleasure`, `arousal`, `dominance`) are flagged for clamping.
class Task {
 public:
  const std::vector<GroundAction>& actions() const { return actions_; }
  const GroundAction& action(std::size_t index) const { return actions_.at(index); }
  std::optional<std::size_t> find_action(const std::string& name,
                                         const std::vector<std::string>& args) const;

  std::size_t fact_count() const { return facts_.size(); }
  std::size_t fluent_count() const { return fluents_.size(); }
  const pddl::Atom& atom(FactId id) const { return facts_.at(id.value); }
  const pddl::FluentRef& fluent(FluentId id) const { return fluents_.at(id.value); }
  std::optional<FactId> find_fact(const pddl::Atom& atom) const;
  std::optional<FluentId> find_fluent(const pddl::FluentRef& fluent) const;
  bool is_pad(FluentId id) const { return pad_.at(id.value); }

  const std::vector<FactId>& init_facts() const { return init_facts_; }
  const std::vector<std::pair<FluentId, double>>& init_fluents() const {
    return init_fluents_;
  }
  const std::vector<GroundCondition>& goal() const { return goal_; }

  // Objects of type `child` (or a subtype), sorted by name.
  const std::vector<std::string>& children() const { return children_; }
  // Objects and domain constants of the given type, in declaration order.
  std::vector<std::string> objects_of_type(const std::string& type) const;

  pddl::Condition to_ast(const GroundCondition& c) const;
  pddl::NumericExpr to_ast(const GroundExpr& e) const;

  const pddl::Domain& domain() const { return domain_; }
  const pddl::Problem& problem() const { return problem_; }

 private:
  friend class TaskBuilder;

  pddl::Domain domain_;
  pddl::Problem problem_;
  std::vector<GroundAction> actions_;
  std::map<std::pair<std::string, std::vector<std::string>>, std::size_t> action_index_;
  std::vector<pddl::Atom> facts_;
  std::map<pddl::Atom, FactId> fact_index_;
  std::vector<pddl::FluentRef> fluents_;
  std::map<pddl::FluentRef, FluentId> fluent_index_;
  std::vector<bool> pad_;
  std::vector<FactId> init_facts_;
  std::vector<std::pair<FluentId, double>> init_fluents_;
  std::vector<GroundCondition> goal_;
  std::vector<std::string> children_;
  std::vector<pddl::TypedName> universe_;
};

bool is_pad_function(const std::string& function);

/// Instantiates every action schema over all type-compatible object tuples,
/// ordered by schema name then argument names. No reachability pruning.
Task ground(const pddl::Domain& domain, const pddl::Problem& problem);

// Number of ground instances per schema, without building the task.
std::map<std::string, std::size_t> count_groundings(const pddl::Domain& domain,
                                                    const pddl::Problem& problem);

}  // namespace emoplan
