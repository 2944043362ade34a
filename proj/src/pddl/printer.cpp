#include <charconv>
#include <sstream>

#include "emoplan/pddl/parser.hpp"

namespace emoplan::pddl {
namespace {

// Consecutive names sharing a type print as one `a b - t` group.
void print_typed_list(std::ostream& os, const std::vector<TypedName>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) os << ' ';
    os << names[i].name;
    if (i + 1 == names.size() || names[i + 1].type != names[i].type) {
      os << " - " << names[i].type;
    }
  }
}

void print_effect(std::ostream& os, const Effect& e) {
  if (const auto* lit = std::get_if<Literal>(&e)) {
    if (lit->positive) {
      os << print_atom(lit->atom);
    } else {
      os << "(not " << print_atom(lit->atom) << ")";
    }
    return;
  }
  const auto& ne = std::get<NumericEffect>(e);
  os << "(" << to_string(ne.op) << " " << print_fluent(ne.fluent) << " "
     << print_expr(ne.amount) << ")";
}

std::string requirements(const Domain& d) {
  std::string req;
  bool typed = !d.types.empty();
  if (!d.predicates.empty() || !d.constants.empty()) typed = true;
  if (typed) req += " :typing";
  if (!d.functions.empty()) req += " :fluents";
  if (!d.actions.empty()) req += " :durative-actions";
  return req;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

std::string print_atom(const Atom& atom) {
  std::string out = "(" + atom.predicate;
  for (const auto& a : atom.args) out += " " + a;
  return out + ")";
}

std::string print_fluent(const FluentRef& fluent) {
  std::string out = "(" + fluent.function;
  for (const auto& a : fluent.args) out += " " + a;
  return out + ")";
}

std::string print_expr(const NumericExpr& expr) {
  switch (expr.kind) {
    case NumericExpr::Kind::Constant:
      return format_number(expr.value);
    case NumericExpr::Kind::Duration:
      return "?duration";
    case NumericExpr::Kind::Fluent:
      return print_fluent(expr.fluent);
    case NumericExpr::Kind::Binary:
      return std::string("(") + to_string(expr.op) + " " + print_expr(expr.operands.at(0)) +
             " " + print_expr(expr.operands.at(1)) + ")";
  }
  return {};
}

std::string print_condition(const Condition& condition) {
  if (const auto* lit = std::get_if<Literal>(&condition)) {
    return lit->positive ? print_atom(lit->atom) : "(not " + print_atom(lit->atom) + ")";
  }
  const auto& nc = std::get<NumericComparison>(condition);
  return std::string("(") + to_string(nc.op) + " " + print_expr(nc.lhs) + " " +
         print_expr(nc.rhs) + ")";
}

std::string print_domain(const Domain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (auto req = requirements(d); !req.empty()) os << "  (:requirements" << req << ")\n";

  if (!d.types.empty()) {
    os << "  (:types";
    for (std::size_t i = 0; i < d.types.size(); ++i) {
      os << ' ' << d.types[i].name;
      const bool group_ends =
          i + 1 == d.types.size() || d.types[i + 1].parent != d.types[i].parent;
      if (group_ends && !d.types[i].parent.empty()) os << " - " << d.types[i].parent;
    }
    os << ")\n";
  }
  if (!d.constants.empty()) {
    os << "  (:constants ";
    print_typed_list(os, d.constants);
    os << ")\n";
  }
  auto print_signatures = [&](const char* section, const std::vector<Signature>& sigs) {
    if (sigs.empty()) return;
    os << "  (" << section << "\n";
    for (const auto& s : sigs) {
      os << "    (" << s.name;
      if (!s.params.empty()) {
        os << ' ';
        print_typed_list(os, s.params);
      }
      os << ")\n";
    }
    os << "  )\n";
  };
  print_signatures(":predicates", d.predicates);
  print_signatures(":functions", d.functions);

  for (const auto& a : d.actions) {
    os << "\n  (:durative-action " << a.name << "\n";
    os << "    :parameters (";
    print_typed_list(os, a.parameters);
    os << ")\n";
    os << "    :duration ("
       << (a.duration.kind == DurationConstraint::Kind::Fixed ? "=" : "<=")
       << " ?duration " << format_number(a.duration.value) << ")\n";
    os << "    :condition (and\n";
    for (const auto& tc : a.conditions) {
      os << "      (" << to_string(tc.when) << " " << print_condition(tc.condition) << ")\n";
    }
    os << "    )\n";
    os << "    :effect (and\n";
    for (const auto& te : a.effects) {
      os << "      (" << to_string(te.when) << " ";
      print_effect(os, te.effect);
      os << ")\n";
    }
    os << "    )\n";
    os << "  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string print_problem(const Problem& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";
  os << "  (:objects";
  // One line per type group, as in hand-written problem files.
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    if (i == 0 || p.objects[i - 1].type != p.objects[i].type) os << "\n    ";
    else os << ' ';
    os << p.objects[i].name;
    if (i + 1 == p.objects.size() || p.objects[i + 1].type != p.objects[i].type) {
      os << " - " << p.objects[i].type;
    }
  }
  os << "\n  )\n";
  os << "  (:init\n";
  for (const auto& f : p.init_facts) os << "    " << print_atom(f) << "\n";
  if (!p.init_facts.empty() && !p.init_fluents.empty()) os << "\n";
  for (const auto& [f, v] : p.init_fluents) {
    os << "    (= " << print_fluent(f) << " " << format_number(v) << ")\n";
  }
  os << "  )\n";
  os << "  (:goal (and\n";
  for (const auto& g : p.goal) os << "    " << print_condition(g) << "\n";
  os << "  ))\n";
  os << ")\n";
  return os.str();
}

}  // namespace emoplan::pddl
