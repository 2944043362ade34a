#include "emoplan/validator.hpp"

#include <algorithm>

#include "replay.hpp"

namespace emoplan {
namespace detail {

namespace {

bool has_effects_at(const GroundAction& a, pddl::TimeSpec when) {
  return std::any_of(a.effects.begin(), a.effects.end(),
                     [&](const GroundTimedEffect& e) { return e.when == when; });
}

}  // namespace

ValidationReport replay(const Task& task, const Plan& plan, const ValidationOptions& opts,
                        const EventCallback& on_event) {
  ValidationReport report;
  report.makespan = plan.makespan();
  TimedState state = initial_state(task);

  std::vector<TimedAction> steps = plan.actions;
  std::stable_sort(steps.begin(), steps.end(),
                   [](const TimedAction& a, const TimedAction& b) { return a.start < b.start; });

  auto fail = [&](Violation v) {
    report.violations.push_back(std::move(v));
    return !opts.all_violations;
  };

  // Returns true when replay must stop.
  auto process_end = [&]() {
    auto result = advance_to_next_end(task, state);
    if (auto* ev = std::get_if<EndEvent>(&result)) {
      state = std::move(ev->state);
      if (on_event && has_effects_at(task.action(ev->ended), pddl::TimeSpec::AtEnd)) {
        on_event(state);
      }
      return false;
    }
    // Diagnostic mode: drop the failed end's effects but keep the clock.
    const PendingEnd pending = state.agenda.front();
    state.agenda.erase(state.agenda.begin());
    state.time = std::max(state.time, pending.end_time);
    state.last_event_time = state.time;
    return fail(std::get<Violation>(std::move(result)));
  };

  for (const auto& step : steps) {
    while (!state.agenda.empty() &&
           state.agenda.front().end_time <= step.start + kTimeTolerance) {
      if (process_end()) {
        report.final_state = state;
        return report;
      }
    }

    auto index = task.find_action(step.name, step.args);
    if (!index) {
      if (fail(Violation{Violation::Kind::UnknownAction, step.start, std::nullopt, std::nullopt,
                         "no ground action " + step.signature()})) {
        report.final_state = state;
        return report;
      }
      continue;
    }
    const bool too_early =
        step.start < -kTimeTolerance ||
        (state.last_event_time &&
         step.start < *state.last_event_time + opts.epsilon - kTimeTolerance);
    if (too_early) {
      if (fail(Violation{Violation::Kind::EpsilonViolation, step.start, index, std::nullopt,
                         "start closer than epsilon to the previous event"})) {
        report.final_state = state;
        return report;
      }
      continue;
    }

    TimedState at_start = wait_until(state, std::max(state.time, step.start));
    auto result = apply_start(task, at_start, *index, step.duration);
    if (auto* next = std::get_if<TimedState>(&result)) {
      state = std::move(*next);
      if (on_event && has_effects_at(task.action(*index), pddl::TimeSpec::AtStart)) {
        on_event(state);
      }
    } else if (fail(std::get<Violation>(std::move(result)))) {
      report.final_state = at_start;
      return report;
    }
  }

  while (!state.agenda.empty()) {
    if (process_end()) {
      report.final_state = state;
      return report;
    }
  }

  report.final_state = state;
  if (!goal_holds(task, state)) {
    std::optional<GroundCondition> failed;
    for (const auto& g : task.goal()) {
      if (!holds(g, state, &task)) {
        failed = g;
        break;
      }
    }
    report.violations.push_back(Violation{Violation::Kind::GoalUnsatisfied, state.time,
                                          std::nullopt, failed, "goal not reached"});
  }
  report.verdict = report.violations.empty() ? ValidationReport::Verdict::Valid
                                             : ValidationReport::Verdict::Invalid;
  return report;
}

}  // namespace detail

ValidationReport validate(const Task& task, const Plan& plan, const ValidationOptions& opts) {
  return detail::replay(task, plan, opts, nullptr);
}

}  // namespace emoplan
