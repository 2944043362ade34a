#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace emoplan::pddl {

// A name with its declared type, used for parameters, constants and objects.
struct TypedName {
  std::string name;
  std::string type;

  bool operator==(const TypedName&) const = default;
};

// `parent` is empty for types hanging directly off the implicit root.
struct TypeDecl {
  std::string name;
  std::string parent;

  bool operator==(const TypeDecl&) const = default;
};

// Predicate or numeric function signature.
struct Signature {
  std::string name;
  std::vector<TypedName> params;

  bool operator==(const Signature&) const = default;
};

// Arguments are variables (`?x`) or object/constant names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

struct FluentRef {
  std::string function;
  std::vector<std::string> args;

  bool operator==(const FluentRef&) const = default;
  auto operator<=>(const FluentRef&) const = default;
};

enum class BinaryOp { Add, Subtract, Multiply, Divide };

/// Numeric expression tree: a constant, a fluent, the `?duration` variable,
/// or a binary arithmetic node with exactly two operands.
struct NumericExpr {
  enum class Kind { Constant, Fluent, Duration, Binary };

  Kind kind = Kind::Constant;
  double value = 0.0;
  FluentRef fluent;
  BinaryOp op = BinaryOp::Add;
  std::vector<NumericExpr> operands;

  static NumericExpr constant(double v);
  static NumericExpr fluent_ref(FluentRef ref);
  static NumericExpr duration();
  static NumericExpr binary(BinaryOp op, NumericExpr lhs, NumericExpr rhs);

  bool contains_duration() const;

  bool operator==(const NumericExpr& other) const;
};

struct Literal {
  Atom atom;
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

enum class CompareOp { Less, LessEqual, Greater, GreaterEqual, Equal };

struct NumericComparison {
  CompareOp op = CompareOp::Less;
  NumericExpr lhs;
  NumericExpr rhs;

  bool operator==(const NumericComparison&) const = default;
};

using Condition = std::variant<Literal, NumericComparison>;

enum class AssignOp { Increase, Decrease, Assign };

struct NumericEffect {
  AssignOp op = AssignOp::Increase;
  FluentRef fluent;
  NumericExpr amount;

  bool operator==(const NumericEffect&) const = default;
};

// A positive Literal adds its atom, a negative one deletes it.
using Effect = std::variant<Literal, NumericEffect>;

enum class TimeSpec { AtStart, AtEnd, OverAll };

struct TimedCondition {
  TimeSpec when = TimeSpec::AtStart;
  Condition condition;

  bool operator==(const TimedCondition&) const = default;
};

// `when` is never OverAll for effects.
struct TimedEffect {
  TimeSpec when = TimeSpec::AtStart;
  Effect effect;

  bool operator==(const TimedEffect&) const = default;
};

struct DurationConstraint {
  enum class Kind { Fixed, UpperBounded };

  Kind kind = Kind::Fixed;
  double value = 1.0;  // seconds; the bound for UpperBounded

  static DurationConstraint fixed(double seconds) { return {Kind::Fixed, seconds}; }
  static DurationConstraint at_most(double seconds) { return {Kind::UpperBounded, seconds}; }

  bool admits(double duration, double tolerance = 1e-9) const;

  bool operator==(const DurationConstraint&) const = default;
};

struct DurativeAction {
  std::string name;
  std::vector<TypedName> parameters;
  DurationConstraint duration;
  std::vector<TimedCondition> conditions;
  std::vector<TimedEffect> effects;

  bool operator==(const DurativeAction&) const = default;
};

struct Domain {
  std::string name;
  std::vector<TypeDecl> types;
  std::vector<TypedName> constants;
  std::vector<Signature> predicates;
  std::vector<Signature> functions;
  std::vector<DurativeAction> actions;

  const DurativeAction* find_action(const std::string& action_name) const;
  const Signature* find_predicate(const std::string& predicate_name) const;
  const Signature* find_function(const std::string& function_name) const;

  bool operator==(const Domain&) const = default;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init_facts;
  std::vector<std::pair<FluentRef, double>> init_fluents;
  std::vector<Condition> goal;

  bool operator==(const Problem&) const = default;
};

const char* to_string(BinaryOp op);
const char* to_string(CompareOp op);
const char* to_string(AssignOp op);
const char* to_string(TimeSpec when);

bool compare(CompareOp op, double lhs, double rhs);

}  // namespace emoplan::pddl
