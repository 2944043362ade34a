#include "emoplan/pddl/ast.hpp"

#include <algorithm>
#include <cmath>

#include "emoplan/pddl/types.hpp"

namespace emoplan::pddl {

NumericExpr NumericExpr::constant(double v) {
  NumericExpr e;
  e.kind = Kind::Constant;
  e.value = v;
  return e;
}

NumericExpr NumericExpr::fluent_ref(FluentRef ref) {
  NumericExpr e;
  e.kind = Kind::Fluent;
  e.fluent = std::move(ref);
  return e;
}

NumericExpr NumericExpr::duration() {
  NumericExpr e;
  e.kind = Kind::Duration;
  return e;
}

NumericExpr NumericExpr::binary(BinaryOp op, NumericExpr lhs, NumericExpr rhs) {
  NumericExpr e;
  e.kind = Kind::Binary;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

bool NumericExpr::contains_duration() const {
  if (kind == Kind::Duration) return true;
  return std::any_of(operands.begin(), operands.end(),
                     [](const NumericExpr& e) { return e.contains_duration(); });
}

bool NumericExpr::operator==(const NumericExpr& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Constant:
      return value == other.value;
    case Kind::Fluent:
      return fluent == other.fluent;
    case Kind::Duration:
      return true;
    case Kind::Binary:
      return op == other.op && operands == other.operands;
  }
  return false;
}

bool DurationConstraint::admits(double duration, double tolerance) const {
  if (!(duration > 0.0)) return false;
  if (kind == Kind::Fixed) return std::fabs(duration - value) <= tolerance;
  return duration <= value + tolerance;
}

const DurativeAction* Domain::find_action(const std::string& action_name) const {
  for (const auto& a : actions) {
    if (a.name == action_name) return &a;
  }
  return nullptr;
}

const Signature* Domain::find_predicate(const std::string& predicate_name) const {
  for (const auto& p : predicates) {
    if (p.name == predicate_name) return &p;
  }
  return nullptr;
}

const Signature* Domain::find_function(const std::string& function_name) const {
  for (const auto& f : functions) {
    if (f.name == function_name) return &f;
  }
  return nullptr;
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
  }
  return "?";
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Less: return "<";
    case CompareOp::LessEqual: return "<=";
    case CompareOp::Greater: return ">";
    case CompareOp::GreaterEqual: return ">=";
    case CompareOp::Equal: return "=";
  }
  return "?";
}

const char* to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Increase: return "increase";
    case AssignOp::Decrease: return "decrease";
    case AssignOp::Assign: return "assign";
  }
  return "?";
}

const char* to_string(TimeSpec when) {
  switch (when) {
    case TimeSpec::AtStart: return "at start";
    case TimeSpec::AtEnd: return "at end";
    case TimeSpec::OverAll: return "over all";
  }
  return "?";
}

bool compare(CompareOp op, double lhs, double rhs) {
  switch (op) {
    case CompareOp::Less: return lhs < rhs;
    case CompareOp::LessEqual: return lhs <= rhs;
    case CompareOp::Greater: return lhs > rhs;
    case CompareOp::GreaterEqual: return lhs >= rhs;
    case CompareOp::Equal: return lhs == rhs;
  }
  return false;
}

TypeHierarchy::TypeHierarchy(const Domain& domain) {
  parent_["object"] = "";
  for (const auto& t : domain.types) parent_[t.name] = t.parent;
}

bool TypeHierarchy::is_declared(const std::string& type) const {
  return parent_.count(type) != 0;
}

bool TypeHierarchy::is_subtype(const std::string& type,
                               const std::string& ancestor) const {
  std::string current = type;
  // Bounded walk guards against cyclic declarations.
  for (std::size_t steps = 0; steps <= parent_.size(); ++steps) {
    if (current == ancestor) return true;
    auto it = parent_.find(current);
    if (it == parent_.end() || it->second.empty()) return false;
    current = it->second;
  }
  return false;
}

}  // namespace emoplan::pddl
