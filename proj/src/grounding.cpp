#include "emoplan/grounding.hpp"

#include <algorithm>

#include "emoplan/pddl/types.hpp"

namespace emoplan {

bool GroundExpr::operator==(const GroundExpr& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Constant: return value == other.value;
    case Kind::Fluent: return fluent == other.fluent;
    case Kind::Duration: return true;
    case Kind::Binary: return op == other.op && operands == other.operands;
  }
  return false;
}

std::string GroundAction::signature() const {
  std::string out = "(" + schema_name;
  for (const auto& a : bound_args) out += " " + a;
  return out + ")";
}

bool is_pad_function(const std::string& function) {
  return function == "pleasure" || function == "arousal" || function == "dominance";
}

std::optional<std::size_t> Task::find_action(const std::string& name,
                                             const std::vector<std::string>& args) const {
  auto it = action_index_.find({name, args});
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FactId> Task::find_fact(const pddl::Atom& atom) const {
  auto it = fact_index_.find(atom);
  if (it == fact_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FluentId> Task::find_fluent(const pddl::FluentRef& fluent) const {
  auto it = fluent_index_.find(fluent);
  if (it == fluent_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Task::objects_of_type(const std::string& type) const {
  pddl::TypeHierarchy types(domain_);
  std::vector<std::string> out;
  for (const auto& o : universe_) {
    if (types.is_subtype(o.type, type)) out.push_back(o.name);
  }
  return out;
}

pddl::NumericExpr Task::to_ast(const GroundExpr& e) const {
  switch (e.kind) {
    case GroundExpr::Kind::Constant: return pddl::NumericExpr::constant(e.value);
    case GroundExpr::Kind::Duration: return pddl::NumericExpr::duration();
    case GroundExpr::Kind::Fluent: return pddl::NumericExpr::fluent_ref(fluent(e.fluent));
    case GroundExpr::Kind::Binary:
      return pddl::NumericExpr::binary(e.op, to_ast(e.operands.at(0)), to_ast(e.operands.at(1)));
  }
  return {};
}

pddl::Condition Task::to_ast(const GroundCondition& c) const {
  if (const auto* lit = std::get_if<GroundLiteral>(&c)) {
    return pddl::Literal{atom(lit->fact), lit->positive};
  }
  const auto& cmp = std::get<GroundComparison>(c);
  return pddl::NumericComparison{cmp.op, to_ast(cmp.lhs), to_ast(cmp.rhs)};
}

class TaskBuilder {
 public:
  TaskBuilder(const pddl::Domain& domain, const pddl::Problem& problem) {
    task_.domain_ = domain;
    task_.problem_ = problem;
    for (const auto& c : domain.constants) task_.universe_.push_back(c);
    for (const auto& o : problem.objects) task_.universe_.push_back(o);
  }

  Task build() {
    for (const auto& atom : task_.problem_.init_facts) {
      task_.init_facts_.push_back(intern(atom));
    }
    for (const auto& [ref, value] : task_.problem_.init_fluents) {
      task_.init_fluents_.emplace_back(intern(ref), value);
    }
    const Binding no_binding;
    for (const auto& g : task_.problem_.goal) {
      task_.goal_.push_back(ground_condition(g, no_binding));
    }

    for (const auto& schema : task_.domain_.actions) {
      std::vector<std::vector<std::string>> candidates;
      for (const auto& p : schema.parameters) {
        auto objs = task_.objects_of_type(p.type);
        std::sort(objs.begin(), objs.end());
        candidates.push_back(std::move(objs));
      }
      enumerate(schema, candidates);
    }
    std::stable_sort(task_.actions_.begin(), task_.actions_.end(),
                     [](const GroundAction& a, const GroundAction& b) {
                       if (a.schema_name != b.schema_name) return a.schema_name < b.schema_name;
                       return a.bound_args < b.bound_args;
                     });
    for (std::size_t i = 0; i < task_.actions_.size(); ++i) {
      const auto& a = task_.actions_[i];
      task_.action_index_.emplace(std::make_pair(a.schema_name, a.bound_args), i);
    }

    task_.children_ = task_.objects_of_type("child");
    std::sort(task_.children_.begin(), task_.children_.end());
    return std::move(task_);
  }

  static std::map<std::string, std::size_t> count(const pddl::Domain& domain,
                                                  const pddl::Problem& problem) {
    TaskBuilder b(domain, problem);
    std::map<std::string, std::size_t> out;
    for (const auto& schema : domain.actions) {
      std::size_t n = 1;
      for (const auto& p : schema.parameters) n *= b.task_.objects_of_type(p.type).size();
      out[schema.name] = n;
    }
    return out;
  }

 private:
  using Binding = std::map<std::string, std::string>;

  FactId intern(const pddl::Atom& atom) {
    auto [it, inserted] =
        task_.fact_index_.emplace(atom, FactId{static_cast<std::uint32_t>(task_.facts_.size())});
    if (inserted) task_.facts_.push_back(atom);
    return it->second;
  }

  FluentId intern(const pddl::FluentRef& ref) {
    auto [it, inserted] = task_.fluent_index_.emplace(
        ref, FluentId{static_cast<std::uint32_t>(task_.fluents_.size())});
    if (inserted) {
      task_.fluents_.push_back(ref);
      task_.pad_.push_back(is_pad_function(ref.function));
    }
    return it->second;
  }

  static std::vector<std::string> substitute(const std::vector<std::string>& args,
                                             const Binding& binding) {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const auto& a : args) {
      auto it = binding.find(a);
      out.push_back(it == binding.end() ? a : it->second);
    }
    return out;
  }

  GroundExpr ground_expr(const pddl::NumericExpr& e, const Binding& binding) {
    GroundExpr g;
    g.kind = e.kind;
    switch (e.kind) {
      case pddl::NumericExpr::Kind::Constant:
        g.value = e.value;
        break;
      case pddl::NumericExpr::Kind::Duration:
        break;
      case pddl::NumericExpr::Kind::Fluent:
        g.fluent = intern(pddl::FluentRef{e.fluent.function, substitute(e.fluent.args, binding)});
        break;
      case pddl::NumericExpr::Kind::Binary:
        g.op = e.op;
        for (const auto& o : e.operands) g.operands.push_back(ground_expr(o, binding));
        break;
    }
    return g;
  }

  GroundCondition ground_condition(const pddl::Condition& c, const Binding& binding) {
    if (const auto* lit = std::get_if<pddl::Literal>(&c)) {
      return GroundLiteral{
          intern(pddl::Atom{lit->atom.predicate, substitute(lit->atom.args, binding)}),
          lit->positive};
    }
    const auto& nc = std::get<pddl::NumericComparison>(c);
    return GroundComparison{nc.op, ground_expr(nc.lhs, binding), ground_expr(nc.rhs, binding)};
  }

  void instantiate(const pddl::DurativeAction& schema, const std::vector<std::string>& args) {
    Binding binding;
    for (std::size_t i = 0; i < args.size(); ++i) binding[schema.parameters[i].name] = args[i];
    GroundAction a;
    a.schema_name = schema.name;
    a.bound_args = args;
    a.duration = schema.duration;
    for (const auto& tc : schema.conditions) {
      a.conditions.push_back({tc.when, ground_condition(tc.condition, binding)});
    }
    for (const auto& te : schema.effects) {
      if (const auto* lit = std::get_if<pddl::Literal>(&te.effect)) {
        a.effects.push_back(
            {te.when, GroundLiteral{intern(pddl::Atom{lit->atom.predicate,
                                                      substitute(lit->atom.args, binding)}),
                                    lit->positive}});
      } else {
        const auto& ne = std::get<pddl::NumericEffect>(te.effect);
        a.effects.push_back(
            {te.when,
             GroundNumericEffect{
                 ne.op, intern(pddl::FluentRef{ne.fluent.function, substitute(ne.fluent.args, binding)}),
                 ground_expr(ne.amount, binding)}});
      }
    }
    task_.actions_.push_back(std::move(a));
  }

  // Odometer over the per-parameter candidate lists.
  void enumerate(const pddl::DurativeAction& schema,
                 const std::vector<std::vector<std::string>>& candidates) {
    for (const auto& c : candidates) {
      if (c.empty()) return;
    }
    std::vector<std::size_t> idx(candidates.size(), 0);
    std::vector<std::string> args(candidates.size());
    while (true) {
      for (std::size_t i = 0; i < idx.size(); ++i) args[i] = candidates[i][idx[i]];
      instantiate(schema, args);
      std::size_t k = idx.size();
      while (k > 0) {
        --k;
        if (++idx[k] < candidates[k].size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (idx.empty()) return;
    }
  }

  Task task_;
};

Task ground(const pddl::Domain& domain, const pddl::Problem& problem) {
  return TaskBuilder(domain, problem).build();
}

std::map<std::string, std::size_t> count_groundings(const pddl::Domain& domain,
                                                    const pddl::Problem& problem) {
  return TaskBuilder::count(domain, problem);
}

}  // namespace emoplan
