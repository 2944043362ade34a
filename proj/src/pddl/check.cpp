#include <map>
#include <set>

#include "emoplan/pddl/parser.hpp"
#include "emoplan/pddl/types.hpp"

namespace emoplan::pddl {
namespace {

bool is_variable(const std::string& s) { return !s.empty() && s.front() == '?'; }

// Resolves argument types inside one scope: action parameters, domain
// constants, and (for problems) objects.
class Scope {
 public:
  Scope(const Domain& domain, const TypeHierarchy& types, std::string context)
      : domain_(domain), types_(types), context_(std::move(context)) {
    for (const auto& c : domain.constants) names_[c.name] = c.type;
  }

  void add_variable(const TypedName& v) { variables_[v.name] = v.type; }
  void add_object(const TypedName& o) { names_[o.name] = o.type; }
  void set_ground_only(bool ground) { ground_only_ = ground; }

  void check_args(const std::string& what, const Signature& sig,
                  const std::vector<std::string>& args) const {
    if (args.size() != sig.params.size()) {
      fail(what + " '" + sig.name + "' expects " + std::to_string(sig.params.size()) +
           " arguments, got " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string type = type_of(args[i]);
      if (!types_.is_subtype(type, sig.params[i].type)) {
        fail("argument '" + args[i] + "' of " + what + " '" + sig.name + "' has type '" +
             type + "', expected '" + sig.params[i].type + "'");
      }
    }
  }

  void check_atom(const Atom& atom) const {
    const Signature* sig = domain_.find_predicate(atom.predicate);
    if (!sig) fail("undeclared predicate '" + atom.predicate + "'");
    check_args("predicate", *sig, atom.args);
  }

  void check_fluent(const FluentRef& f) const {
    const Signature* sig = domain_.find_function(f.function);
    if (!sig) fail("undeclared function '" + f.function + "'");
    check_args("function", *sig, f.args);
  }

  void check_expr(const NumericExpr& e, bool duration_allowed) const {
    switch (e.kind) {
      case NumericExpr::Kind::Constant:
        return;
      case NumericExpr::Kind::Duration:
        if (!duration_allowed) fail("?duration used outside a numeric effect");
        return;
      case NumericExpr::Kind::Fluent:
        check_fluent(e.fluent);
        return;
      case NumericExpr::Kind::Binary:
        if (e.operands.size() != 2) fail("binary expression needs two operands");
        if (e.op == BinaryOp::Divide &&
            e.operands[1].kind == NumericExpr::Kind::Constant &&
            e.operands[1].value == 0.0) {
          fail("division by the constant zero");
        }
        check_expr(e.operands[0], duration_allowed);
        check_expr(e.operands[1], duration_allowed);
        return;
    }
  }

  void check_condition(const Condition& c) const {
    if (const auto* lit = std::get_if<Literal>(&c)) {
      check_atom(lit->atom);
    } else {
      const auto& nc = std::get<NumericComparison>(c);
      check_expr(nc.lhs, false);
      check_expr(nc.rhs, false);
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SemanticError(context_ + ": " + msg);
  }

 private:
  std::string type_of(const std::string& arg) const {
    if (is_variable(arg)) {
      if (ground_only_) fail("non-ground argument '" + arg + "'");
      if (arg == "?duration") fail("?duration used as a term");
      auto it = variables_.find(arg);
      if (it == variables_.end()) fail("undeclared variable '" + arg + "'");
      return it->second;
    }
    auto it = names_.find(arg);
    if (it == names_.end()) fail("unknown object or constant '" + arg + "'");
    return it->second;
  }

  const Domain& domain_;
  const TypeHierarchy& types_;
  std::string context_;
  std::map<std::string, std::string> variables_;
  std::map<std::string, std::string> names_;
  bool ground_only_ = false;
};

void check_signatures(const std::vector<Signature>& sigs, const TypeHierarchy& types,
                      const std::string& what) {
  std::set<std::string> seen;
  for (const auto& s : sigs) {
    if (!seen.insert(s.name).second) {
      throw SemanticError("duplicate " + what + " '" + s.name + "'");
    }
    std::set<std::string> vars;
    for (const auto& p : s.params) {
      if (!is_variable(p.name) || !vars.insert(p.name).second) {
        throw SemanticError(what + " '" + s.name + "': bad or repeated parameter '" +
                            p.name + "'");
      }
      if (!types.is_declared(p.type)) {
        throw SemanticError(what + " '" + s.name + "': undeclared type '" + p.type + "'");
      }
    }
  }
}

void check_action(const DurativeAction& a, const Domain& d, const TypeHierarchy& types) {
  Scope scope(d, types, "action '" + a.name + "'");
  std::set<std::string> seen;
  for (const auto& p : a.parameters) {
    if (!is_variable(p.name) || p.name == "?duration" || !seen.insert(p.name).second) {
      scope.fail("bad or repeated parameter '" + p.name + "'");
    }
    if (!types.is_declared(p.type)) scope.fail("undeclared type '" + p.type + "'");
    scope.add_variable(p);
  }
  if (!(a.duration.value > 0.0)) scope.fail("duration bound must be strictly positive");

  for (const auto& tc : a.conditions) scope.check_condition(tc.condition);

  // (time, atom) -> polarity, to reject contradictory simultaneous effects.
  std::map<std::pair<TimeSpec, Atom>, bool> literal_effects;
  for (const auto& te : a.effects) {
    if (te.when == TimeSpec::OverAll) scope.fail("'over all' cannot annotate an effect");
    if (const auto* lit = std::get_if<Literal>(&te.effect)) {
      scope.check_atom(lit->atom);
      auto [it, inserted] = literal_effects.emplace(std::make_pair(te.when, lit->atom),
                                                    lit->positive);
      if (!inserted && it->second != lit->positive) {
        scope.fail("adds and deletes " + print_atom(lit->atom) + " at the same time");
      }
    } else {
      const auto& ne = std::get<NumericEffect>(te.effect);
      scope.check_fluent(ne.fluent);
      scope.check_expr(ne.amount, /*duration_allowed=*/true);
    }
  }
}

}  // namespace

void check_domain(const Domain& d) {
  std::set<std::string> type_names{"object"};
  bool object_redeclared = false;
  for (const auto& t : d.types) {
    if (t.name == "object" && !object_redeclared) {
      object_redeclared = true;
      continue;
    }
    if (!type_names.insert(t.name).second) {
      throw SemanticError("duplicate type '" + t.name + "'");
    }
  }
  TypeHierarchy types(d);
  for (const auto& t : d.types) {
    if (!t.parent.empty() && !types.is_declared(t.parent)) {
      throw SemanticError("type '" + t.name + "' has undeclared parent '" + t.parent + "'");
    }
    if (!t.parent.empty() && types.is_subtype(t.parent, t.name)) {
      throw SemanticError("cyclic type declaration involving '" + t.name + "'");
    }
  }
  std::set<std::string> constants;
  for (const auto& c : d.constants) {
    if (!constants.insert(c.name).second) {
      throw SemanticError("duplicate constant '" + c.name + "'");
    }
    if (!types.is_declared(c.type)) {
      throw SemanticError("constant '" + c.name + "' has undeclared type '" + c.type + "'");
    }
  }
  check_signatures(d.predicates, types, "predicate");
  check_signatures(d.functions, types, "function");
  std::set<std::string> actions;
  for (const auto& a : d.actions) {
    if (!actions.insert(a.name).second) {
      throw SemanticError("duplicate action '" + a.name + "'");
    }
    check_action(a, d, types);
  }
}

void check_problem(const Problem& p, const Domain& d) {
  if (p.domain_name != d.name) {
    throw SemanticError("problem '" + p.name + "' is for domain '" + p.domain_name +
                        "', not '" + d.name + "'");
  }
  TypeHierarchy types(d);
  Scope scope(d, types, "problem '" + p.name + "'");
  scope.set_ground_only(true);
  std::set<std::string> names;
  for (const auto& c : d.constants) names.insert(c.name);
  for (const auto& o : p.objects) {
    if (!names.insert(o.name).second) scope.fail("duplicate object '" + o.name + "'");
    if (!types.is_declared(o.type)) {
      scope.fail("object '" + o.name + "' has unknown type '" + o.type + "'");
    }
    scope.add_object(o);
  }
  for (const auto& f : p.init_facts) scope.check_atom(f);
  std::set<FluentRef> assigned;
  for (const auto& [f, v] : p.init_fluents) {
    scope.check_fluent(f);
    if (!assigned.insert(f).second) {
      scope.fail("fluent " + print_fluent(f) + " assigned more than once");
    }
  }
  for (const auto& g : p.goal) scope.check_condition(g);
}

}  // namespace emoplan::pddl
