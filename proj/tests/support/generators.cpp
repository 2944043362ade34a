#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "emoplan/emotion.hpp"
#include "emoplan/planner.hpp"
#include "emoplan/validator.hpp"

namespace gen {

using namespace emoplan::pddl;

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string ident(Rng& rng, const std::string& stem, int i) {
  static const std::vector<std::string> decorations{"", "_x", "-y", "Z"};
  return stem + std::to_string(i) + pick(rng, decorations);
}

double number(Rng& rng) {
  // Hundredths round-trip exactly through shortest decimal printing.
  const int k = uniform(rng, -400, 400);
  return k == 0 ? 0.0 : k / 100.0;
}

struct TypeInfo {
  std::map<std::string, std::string> parent;

  bool is_subtype(std::string t, const std::string& of) const {
    for (int guard = 0; guard < 64; ++guard) {
      if (t == of) return true;
      auto it = parent.find(t);
      if (it == parent.end() || it->second.empty()) return false;
      t = it->second;
    }
    return false;
  }
};

TypeInfo type_info(const Domain& d) {
  TypeInfo info;
  for (const auto& t : d.types) info.parent[t.name] = t.parent;
  return info;
}

std::vector<std::string> all_types(const Domain& d) {
  std::vector<std::string> out{"object"};
  for (const auto& t : d.types) out.push_back(t.name);
  return out;
}

// Terms usable where `type` is expected.
std::vector<std::string> candidates(const TypeInfo& info, const std::vector<TypedName>& scope,
                                    const std::string& type) {
  std::vector<std::string> out;
  for (const auto& n : scope) {
    if (info.is_subtype(n.type, type)) out.push_back(n.name);
  }
  return out;
}

std::optional<std::vector<std::string>> args_for(Rng& rng, const TypeInfo& info,
                                                 const std::vector<TypedName>& scope,
                                                 const Signature& sig) {
  std::vector<std::string> args;
  for (const auto& p : sig.params) {
    auto c = candidates(info, scope, p.type);
    if (c.empty()) return std::nullopt;
    args.push_back(pick(rng, c));
  }
  return args;
}

std::optional<FluentRef> random_fluent(Rng& rng, const Domain& d, const TypeInfo& info,
                                       const std::vector<TypedName>& scope) {
  if (d.functions.empty()) return std::nullopt;
  const Signature& sig = pick(rng, d.functions);
  auto args = args_for(rng, info, scope, sig);
  if (!args) return std::nullopt;
  return FluentRef{sig.name, *args};
}

NumericExpr random_expr(Rng& rng, const Domain& d, const TypeInfo& info,
                        const std::vector<TypedName>& scope, bool allow_duration, int depth) {
  const int choice = uniform(rng, 0, depth > 0 ? 3 : 2);
  if (choice == 1) {
    if (auto f = random_fluent(rng, d, info, scope)) return NumericExpr::fluent_ref(*f);
  }
  if (choice == 2 && allow_duration) return NumericExpr::duration();
  if (choice == 3) {
    const auto op = static_cast<BinaryOp>(uniform(rng, 0, 3));
    NumericExpr lhs = random_expr(rng, d, info, scope, allow_duration, depth - 1);
    NumericExpr rhs = random_expr(rng, d, info, scope, allow_duration, depth - 1);
    if (op == BinaryOp::Divide && rhs.kind == NumericExpr::Kind::Constant && rhs.value == 0.0) {
      rhs = NumericExpr::constant(1.5);
    }
    return NumericExpr::binary(op, std::move(lhs), std::move(rhs));
  }
  return NumericExpr::constant(number(rng));
}

std::optional<Condition> random_condition(Rng& rng, const Domain& d, const TypeInfo& info,
                                          const std::vector<TypedName>& scope) {
  if (coin(rng, 0.6) && !d.predicates.empty()) {
    const Signature& sig = pick(rng, d.predicates);
    auto args = args_for(rng, info, scope, sig);
    if (!args) return std::nullopt;
    return Condition{Literal{Atom{sig.name, *args}, coin(rng, 0.7)}};
  }
  if (d.functions.empty()) return std::nullopt;
  return Condition{NumericComparison{static_cast<CompareOp>(uniform(rng, 0, 4)),
                                     random_expr(rng, d, info, scope, false, 2),
                                     random_expr(rng, d, info, scope, false, 1)}};
}

}  // namespace

Domain random_domain(Rng& rng) {
  Domain d;
  d.name = ident(rng, "dom", uniform(rng, 0, 99));

  const int n_types = uniform(rng, 0, 4);
  for (int i = 0; i < n_types; ++i) {
    std::vector<std::string> parents{"", "object"};
    for (const auto& t : d.types) parents.push_back(t.name);
    d.types.push_back(TypeDecl{ident(rng, "T", i), pick(rng, parents)});
  }
  std::stable_partition(d.types.begin(), d.types.end(),
                        [](const TypeDecl& t) { return !t.parent.empty(); });
  const TypeInfo info = type_info(d);
  const auto types = all_types(d);

  const int n_constants = uniform(rng, 0, 3);
  for (int i = 0; i < n_constants; ++i) {
    d.constants.push_back(TypedName{ident(rng, "k", i), pick(rng, types)});
  }
  auto signature = [&](const std::string& name) {
    Signature s{name, {}};
    const int arity = uniform(rng, 0, 3);
    for (int j = 0; j < arity; ++j) {
      s.params.push_back(TypedName{"?a" + std::to_string(j), pick(rng, types)});
    }
    return s;
  };
  const int n_predicates = uniform(rng, 0, 4);
  for (int i = 0; i < n_predicates; ++i) d.predicates.push_back(signature(ident(rng, "p", i)));
  const int n_functions = uniform(rng, 0, 3);
  for (int i = 0; i < n_functions; ++i) d.functions.push_back(signature(ident(rng, "f", i)));

  const int n_actions = uniform(rng, 0, 3);
  for (int i = 0; i < n_actions; ++i) {
    DurativeAction a;
    a.name = ident(rng, "act", i);
    const int arity = uniform(rng, 0, 3);
    for (int j = 0; j < arity; ++j) {
      a.parameters.push_back(TypedName{"?v" + std::to_string(j), pick(rng, types)});
    }
    const double bound = uniform(rng, 1, 200) / 4.0;
    a.duration = coin(rng) ? DurationConstraint::fixed(bound) : DurationConstraint::at_most(bound);

    std::vector<TypedName> scope = a.parameters;
    scope.insert(scope.end(), d.constants.begin(), d.constants.end());
    const int n_cond = uniform(rng, 0, 4);
    for (int j = 0; j < n_cond; ++j) {
      if (auto c = random_condition(rng, d, info, scope)) {
        a.conditions.push_back(TimedCondition{static_cast<TimeSpec>(uniform(rng, 0, 2)), *c});
      }
    }
    std::set<std::pair<TimeSpec, Atom>> touched;
    const int n_eff = uniform(rng, 0, 4);
    for (int j = 0; j < n_eff; ++j) {
      const TimeSpec when = coin(rng) ? TimeSpec::AtStart : TimeSpec::AtEnd;
      if (coin(rng, 0.6) && !d.predicates.empty()) {
        const Signature& sig = pick(rng, d.predicates);
        auto args = args_for(rng, info, scope, sig);
        if (!args) continue;
        Atom atom{sig.name, *args};
        if (!touched.insert({when, atom}).second) continue;
        a.effects.push_back(TimedEffect{when, Literal{atom, coin(rng)}});
      } else if (auto f = random_fluent(rng, d, info, scope)) {
        a.effects.push_back(TimedEffect{
            when, NumericEffect{static_cast<AssignOp>(uniform(rng, 0, 2)), *f,
                                random_expr(rng, d, info, scope, true, 2)}});
      }
    }
    d.actions.push_back(std::move(a));
  }
  return d;
}

Problem random_problem(const Domain& d, Rng& rng) {
  Problem p;
  p.name = ident(rng, "prob", uniform(rng, 0, 99));
  p.domain_name = d.name;
  const TypeInfo info = type_info(d);
  const auto types = all_types(d);
  const int n_objects = uniform(rng, 0, 5);
  for (int i = 0; i < n_objects; ++i) {
    p.objects.push_back(TypedName{ident(rng, "o", i), pick(rng, types)});
  }
  std::vector<TypedName> scope = p.objects;
  scope.insert(scope.end(), d.constants.begin(), d.constants.end());

  const int n_facts = uniform(rng, 0, 5);
  for (int i = 0; i < n_facts && !d.predicates.empty(); ++i) {
    const Signature& sig = pick(rng, d.predicates);
    if (auto args = args_for(rng, info, scope, sig)) p.init_facts.push_back(Atom{sig.name, *args});
  }
  std::set<FluentRef> assigned;
  const int n_fluents = uniform(rng, 0, 4);
  for (int i = 0; i < n_fluents; ++i) {
    auto f = random_fluent(rng, d, info, scope);
    if (f && assigned.insert(*f).second) p.init_fluents.emplace_back(*f, number(rng));
  }
  const int n_goal = uniform(rng, 0, 3);
  for (int i = 0; i < n_goal; ++i) {
    if (auto c = random_condition(rng, d, info, scope)) p.goal.push_back(*c);
  }
  return p;
}

Instance random_instance(Rng& rng, bool blocked) {
  namespace em = emoplan::emotion;
  Instance inst;
  inst.children = uniform(rng, 1, 3);
  inst.toys = blocked ? uniform(rng, 1, 2) : uniform(rng, 1, 4);
  inst.blocked = blocked;

  em::DomainConfig dc;
  dc.children = inst.children;
  em::ProblemConfig pc;
  pc.children = inst.children;
  pc.toys = inst.toys;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] { return std::round(unit(rng) * 100.0) / 100.0; };
  for (int i = 0; i < inst.children; ++i) pc.init_pads.push_back({draw(), draw(), draw()});

  inst.domain = em::synthesize_domain(dc);
  inst.problem = em::synthesize_problem(pc);
  if (blocked) {
    inst.problem.objects.push_back(TypedName{"box2", "box"});
    inst.problem.goal.push_back(Literal{Atom{"in_box", {"box2", "toy1"}}, true});
  }
  return inst;
}

const char* to_string(Mutation m) {
  switch (m) {
    case Mutation::DropAction: return "drop";
    case Mutation::Reorder: return "reorder";
    case Mutation::ShrinkDuration: return "shrink";
    case Mutation::PerturbStart: return "perturb";
  }
  return "?";
}

std::vector<Mutant> mutations(const emoplan::Task& task, const emoplan::Plan& plan,
                              double epsilon) {
  using emoplan::Plan;
  std::vector<Mutant> out;
  const auto& acts = plan.actions;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    Plan p = plan;
    p.actions.erase(p.actions.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back({Mutation::DropAction, i, std::move(p)});
  }

  emoplan::ValidationOptions opts;
  opts.epsilon = epsilon;
  for (std::size_t i = 0; i + 1 < acts.size(); ++i) {
    const auto a = task.find_action(acts[i].name, acts[i].args);
    const auto b = task.find_action(acts[i + 1].name, acts[i + 1].args);
    if (!a || !b) continue;
    Plan prefix;
    prefix.actions.assign(acts.begin(), acts.begin() + static_cast<std::ptrdiff_t>(i));
    const auto before = emoplan::validate(task, prefix, opts).final_state;
    bool linked = false;
    for (const auto& tc : task.action(*b).conditions) {
      if (tc.when != TimeSpec::AtStart) continue;
      const auto* need = std::get_if<emoplan::GroundLiteral>(&tc.condition);
      if (!need || !need->positive || before.facts.contains(need->fact)) continue;
      for (const auto& te : task.action(*a).effects) {
        const auto* add = std::get_if<emoplan::GroundLiteral>(&te.effect);
        if (add && add->positive && add->fact == need->fact) linked = true;
      }
    }
    if (!linked) continue;
    std::vector<emoplan::TimedAction> order = acts;
    std::swap(order[i], order[i + 1]);
    out.push_back({Mutation::Reorder, i, emoplan::sequential_schedule(order, epsilon)});
  }

  for (std::size_t i = 0; i < acts.size(); ++i) {
    const auto idx = task.find_action(acts[i].name, acts[i].args);
    if (!idx || task.action(*idx).duration.kind != DurationConstraint::Kind::Fixed) continue;
    Plan p = plan;
    p.actions[i].duration /= 2.0;
    out.push_back({Mutation::ShrinkDuration, i, std::move(p)});
  }

  for (std::size_t i = 0; i < acts.size(); ++i) {
    Plan p = plan;
    p.actions[i].start -= epsilon / 2.0;
    out.push_back({Mutation::PerturbStart, i, std::move(p)});
  }
  return out;
}

}  // namespace gen
