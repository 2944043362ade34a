#include "emoplan/temporal_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "emoplan/pddl/parser.hpp"

namespace emoplan {

void FactSet::insert(FactId f) {
  const auto w = f.value / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (f.value % 64);
}

void FactSet::erase(FactId f) {
  const auto w = f.value / 64;
  if (w < words_.size()) words_[w] &= ~(std::uint64_t{1} << (f.value % 64));
}

std::size_t FactSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<FactId> FactSet::to_vector() const {
  std::vector<FactId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (unsigned b = 0; b < 64; ++b) {
      if ((words_[w] >> b) & 1u) out.push_back(FactId{static_cast<std::uint32_t>(w * 64 + b)});
    }
  }
  return out;
}

double FluentValuation::get(FluentId f, const Task* task) const {
  if (!has(f)) {
    throw MissingFluent(task ? pddl::print_fluent(task->fluent(f))
                             : "#" + std::to_string(f.value));
  }
  return values_[f.value];
}

void FluentValuation::set(FluentId f, double value) {
  if (f.value >= values_.size()) {
    values_.resize(f.value + 1, 0.0);
    assigned_.resize(f.value + 1, false);
  }
  values_[f.value] = value;
  assigned_[f.value] = true;
}

double clamp_pad(double value) { return std::clamp(value, kPadMin, kPadMax); }

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::UnsatisfiedAtStart: return "UnsatisfiedAtStart";
    case Violation::Kind::UnsatisfiedAtEnd: return "UnsatisfiedAtEnd";
    case Violation::Kind::UnsatisfiedOverAll: return "UnsatisfiedOverAll";
    case Violation::Kind::EpsilonViolation: return "EpsilonViolation";
    case Violation::Kind::GoalUnsatisfied: return "GoalUnsatisfied";
    case Violation::Kind::DurationOutOfBounds: return "DurationOutOfBounds";
    case Violation::Kind::UnknownAction: return "UnknownAction";
  }
  return "?";
}

std::string Violation::describe(const Task& task) const {
  char when[32];
  std::snprintf(when, sizeof(when), "%.3f", time);
  std::string out = std::string(to_string(kind)) + " at " + when;
  if (action) out += ": " + task.action(*action).signature();
  if (condition) out += " condition " + pddl::print_condition(task.to_ast(*condition));
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

TimedState initial_state(const Task& task) {
  TimedState s;
  s.facts = FactSet(task.fact_count());
  s.fluents = FluentValuation(task.fluent_count());
  for (FactId f : task.init_facts()) s.facts.insert(f);
  for (const auto& [f, v] : task.init_fluents()) s.fluents.set(f, v);
  return s;
}

double evaluate(const GroundExpr& expr, const FluentValuation& fluents,
                std::optional<double> duration, const Task* task) {
  switch (expr.kind) {
    case GroundExpr::Kind::Constant:
      return expr.value;
    case GroundExpr::Kind::Fluent:
      return fluents.get(expr.fluent, task);
    case GroundExpr::Kind::Duration:
      if (!duration) throw EvaluationError("?duration evaluated without a duration");
      return *duration;
    case GroundExpr::Kind::Binary: {
      const double lhs = evaluate(expr.operands.at(0), fluents, duration, task);
      const double rhs = evaluate(expr.operands.at(1), fluents, duration, task);
      switch (expr.op) {
        case pddl::BinaryOp::Add: return lhs + rhs;
        case pddl::BinaryOp::Subtract: return lhs - rhs;
        case pddl::BinaryOp::Multiply: return lhs * rhs;
        case pddl::BinaryOp::Divide:
          if (rhs == 0.0) throw DivisionByZero();
          return lhs / rhs;
      }
    }
  }
  return 0.0;
}

bool holds(const GroundCondition& condition, const TimedState& state, const Task* task) {
  if (const auto* lit = std::get_if<GroundLiteral>(&condition)) {
    return state.facts.contains(lit->fact) == lit->positive;
  }
  const auto& cmp = std::get<GroundComparison>(condition);
  return pddl::compare(cmp.op, evaluate(cmp.lhs, state.fluents, std::nullopt, task),
                       evaluate(cmp.rhs, state.fluents, std::nullopt, task));
}

bool goal_holds(const Task& task, const TimedState& state) {
  return std::all_of(task.goal().begin(), task.goal().end(),
                     [&](const GroundCondition& g) { return holds(g, state, &task); });
}

PadState pad_of(const Task& task, const TimedState& state, const std::string& child) {
  auto read = [&](const char* fn) {
    auto id = task.find_fluent(pddl::FluentRef{fn, {child}});
    if (!id) throw MissingFluent("(" + std::string(fn) + " " + child + ")");
    return state.fluents.get(*id, &task);
  };
  return PadState{read("pleasure"), read("arousal"), read("dominance")};
}

TimedState wait_until(const TimedState& state, double time) {
  if (time < state.time) throw std::logic_error("wait_until: time moves backwards");
  if (!state.agenda.empty() && state.agenda.front().end_time < time) {
    throw std::logic_error("wait_until: would skip a pending action end");
  }
  TimedState next = state;
  next.time = time;
  return next;
}

namespace {

std::optional<GroundCondition> first_failure(const Task& task, const GroundAction& action,
                                             pddl::TimeSpec when, const TimedState& state) {
  for (const auto& tc : action.conditions) {
    if (tc.when == when && !holds(tc.condition, state, &task)) return tc.condition;
  }
  return std::nullopt;
}

// All effects at one time point read the pre-state: numeric amounts are
// evaluated first, then deletes, adds, and numeric updates are applied.
void apply_effects(const Task& task, const GroundAction& action, pddl::TimeSpec when,
                   double duration, TimedState& state) {
  std::vector<double> amounts;
  for (const auto& te : action.effects) {
    if (te.when != when) continue;
    if (const auto* ne = std::get_if<GroundNumericEffect>(&te.effect)) {
      amounts.push_back(evaluate(ne->amount, state.fluents, duration, &task));
    }
  }
  for (const auto& te : action.effects) {
    if (te.when != when) continue;
    if (const auto* lit = std::get_if<GroundLiteral>(&te.effect); lit && !lit->positive) {
      state.facts.erase(lit->fact);
    }
  }
  for (const auto& te : action.effects) {
    if (te.when != when) continue;
    if (const auto* lit = std::get_if<GroundLiteral>(&te.effect); lit && lit->positive) {
      state.facts.insert(lit->fact);
    }
  }
  std::size_t k = 0;
  for (const auto& te : action.effects) {
    if (te.when != when) continue;
    const auto* ne = std::get_if<GroundNumericEffect>(&te.effect);
    if (!ne) continue;
    const double amount = amounts[k++];
    double value = 0.0;
    switch (ne->op) {
      case pddl::AssignOp::Increase: value = state.fluents.get(ne->fluent, &task) + amount; break;
      case pddl::AssignOp::Decrease: value = state.fluents.get(ne->fluent, &task) - amount; break;
      case pddl::AssignOp::Assign: value = amount; break;
    }
    if (task.is_pad(ne->fluent)) value = clamp_pad(value);
    state.fluents.set(ne->fluent, value);
  }
}

// Over-all conditions of actions whose open interval contains state.time.
std::optional<Violation> check_running(const Task& task, const TimedState& state) {
  for (const auto& pending : state.agenda) {
    if (!(pending.start_time < state.time && pending.end_time > state.time)) continue;
    const auto& running = task.action(pending.action);
    if (auto failed = first_failure(task, running, pddl::TimeSpec::OverAll, state)) {
      return Violation{Violation::Kind::UnsatisfiedOverAll, state.time, pending.action, failed,
                       "invariant broken while running"};
    }
  }
  return std::nullopt;
}

}  // namespace

StartResult apply_start(const Task& task, const TimedState& state, std::size_t index,
                        double duration) {
  const GroundAction& action = task.action(index);
  if (!action.duration.admits(duration)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "duration %.3f", duration);
    return Violation{Violation::Kind::DurationOutOfBounds, state.time, index, std::nullopt, buf};
  }
  if (auto failed = first_failure(task, action, pddl::TimeSpec::AtStart, state)) {
    return Violation{Violation::Kind::UnsatisfiedAtStart, state.time, index, failed, {}};
  }
  if (auto failed = first_failure(task, action, pddl::TimeSpec::OverAll, state)) {
    return Violation{Violation::Kind::UnsatisfiedOverAll, state.time, index, failed, {}};
  }

  TimedState next = state;
  apply_effects(task, action, pddl::TimeSpec::AtStart, duration, next);
  next.last_event_time = next.time;
  if (auto v = check_running(task, next)) return *v;

  PendingEnd pending{next.time + duration, index, duration, next.time, next.next_sequence++};
  auto pos = std::upper_bound(next.agenda.begin(), next.agenda.end(), pending,
                              [](const PendingEnd& a, const PendingEnd& b) {
                                if (a.end_time != b.end_time) return a.end_time < b.end_time;
                                return a.sequence < b.sequence;
                              });
  next.agenda.insert(pos, pending);
  return next;
}

EndResult advance_to_next_end(const Task& task, const TimedState& state) {
  if (state.agenda.empty()) {
    throw std::logic_error("advance_to_next_end: no action is running");
  }
  TimedState next = state;
  const PendingEnd pending = next.agenda.front();
  next.agenda.erase(next.agenda.begin());
  next.time = std::max(next.time, pending.end_time);
  const GroundAction& action = task.action(pending.action);

  if (auto failed = first_failure(task, action, pddl::TimeSpec::OverAll, next)) {
    return Violation{Violation::Kind::UnsatisfiedOverAll, next.time, pending.action, failed, {}};
  }
  if (auto failed = first_failure(task, action, pddl::TimeSpec::AtEnd, next)) {
    return Violation{Violation::Kind::UnsatisfiedAtEnd, next.time, pending.action, failed, {}};
  }
  apply_effects(task, action, pddl::TimeSpec::AtEnd, pending.duration, next);
  next.last_event_time = next.time;
  if (auto v = check_running(task, next)) return *v;
  return EndEvent{std::move(next), pending.action};
}

}  // namespace emoplan
