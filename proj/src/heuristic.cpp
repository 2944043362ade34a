#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "emoplan/planner.hpp"

namespace emoplan {

Heuristic::Heuristic(const Task& task, HeuristicWeights weights, emotion::Thresholds th)
    : task_(task), weights_(weights), thresholds_(th) {
  consumers_.resize(task.fact_count());
  relaxed_.reserve(task.actions().size());
  for (std::size_t i = 0; i < task.actions().size(); ++i) {
    const GroundAction& a = task.action(i);
    RelaxedAction ra;
    std::vector<std::uint32_t> start_adds;
    for (const auto& te : a.effects) {
      if (const auto* lit = std::get_if<GroundLiteral>(&te.effect); lit && lit->positive) {
        ra.add.push_back(lit->fact.value);
        if (te.when == pddl::TimeSpec::AtStart) start_adds.push_back(lit->fact.value);
      }
    }
    for (const auto& tc : a.conditions) {
      const auto* lit = std::get_if<GroundLiteral>(&tc.condition);
      if (!lit || !lit->positive) continue;
      // An at-end condition supplied by the action's own start needs nothing.
      if (tc.when == pddl::TimeSpec::AtEnd &&
          std::find(start_adds.begin(), start_adds.end(), lit->fact.value) != start_adds.end()) {
        continue;
      }
      ra.pre.push_back(lit->fact.value);
    }
    std::sort(ra.pre.begin(), ra.pre.end());
    ra.pre.erase(std::unique(ra.pre.begin(), ra.pre.end()), ra.pre.end());
    for (auto f : ra.pre) consumers_[f].push_back(i);
    relaxed_.push_back(std::move(ra));
  }
  for (const auto& g : task.goal()) {
    if (const auto* lit = std::get_if<GroundLiteral>(&g); lit && lit->positive) {
      goal_facts_.push_back(lit->fact.value);
    }
  }
  for (const auto& child : task.children()) {
    std::array<std::optional<FluentId>, 3> ids;
    const char* names[] = {"pleasure", "arousal", "dominance"};
    for (int k = 0; k < 3; ++k) ids[k] = task.find_fluent(pddl::FluentRef{names[k], {child}});
    child_pad_.push_back(ids);
  }
}

std::size_t Heuristic::unsatisfied_goals(const TimedState& state) const {
  std::size_t n = 0;
  for (const auto& g : task_.goal()) {
    if (!holds(g, state, &task_)) ++n;
  }
  return n;
}

double Heuristic::emotional_deficit(const TimedState& state) const {
  double total = 0.0;
  for (const auto& ids : child_pad_) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& id : ids) {
      if (id && state.fluents.has(*id)) lowest = std::min(lowest, state.fluents.get(*id));
    }
    if (std::isfinite(lowest)) total += std::max(0.0, thresholds_.low_high_cut - lowest);
  }
  return total;
}

long Heuristic::relaxed_plan_size(const TimedState& state) const {
  constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n_facts = task_.fact_count();
  std::vector<std::uint32_t> level(n_facts, kUnreached);
  std::vector<std::int64_t> supporter(n_facts, -1);
  std::vector<std::uint32_t> missing(relaxed_.size());
  std::deque<std::uint32_t> queue;

  auto reach = [&](std::uint32_t f, std::uint32_t lvl, std::int64_t by) {
    if (level[f] != kUnreached) return;
    level[f] = lvl;
    supporter[f] = by;
    queue.push_back(f);
  };
  for (FactId f : state.facts.to_vector()) {
    if (f.value < n_facts) reach(f.value, 0, -1);
  }
  // Pending ends count as already achieved.
  for (const auto& pending : state.agenda) {
    for (auto f : relaxed_[pending.action].add) reach(f, 0, -1);
  }

  auto fire = [&](std::size_t a, std::uint32_t lvl) {
    for (auto g : relaxed_[a].add) reach(g, lvl + 1, static_cast<std::int64_t>(a));
  };
  for (std::size_t a = 0; a < relaxed_.size(); ++a) {
    missing[a] = static_cast<std::uint32_t>(relaxed_[a].pre.size());
    if (missing[a] == 0) fire(a, 0);
  }
  while (!queue.empty()) {
    const std::uint32_t f = queue.front();
    queue.pop_front();
    for (auto a : consumers_[f]) {
      if (--missing[a] == 0) fire(a, level[f]);
    }
  }

  std::vector<bool> chosen(relaxed_.size(), false);
  std::vector<bool> visited(n_facts, false);
  std::vector<std::uint32_t> stack;
  long size = 0;
  for (auto g : goal_facts_) {
    if (level[g] == kUnreached) return -1;
    stack.push_back(g);
  }
  while (!stack.empty()) {
    const auto f = stack.back();
    stack.pop_back();
    if (visited[f]) continue;
    visited[f] = true;
    if (supporter[f] < 0) continue;
    const auto a = static_cast<std::size_t>(supporter[f]);
    if (chosen[a]) continue;
    chosen[a] = true;
    ++size;
    for (auto p : relaxed_[a].pre) stack.push_back(p);
  }
  return size;
}

double Heuristic::operator()(const TimedState& state) const {
  const std::size_t unsat = unsatisfied_goals(state);
  if (unsat == 0) return 0.0;
  const long rp = relaxed_plan_size(state);
  if (rp < 0) return kDeadEnd;
  return weights_.unsatisfied_goal * static_cast<double>(unsat) +
         weights_.relaxed_plan * static_cast<double>(rp) +
         weights_.emotional_deficit * emotional_deficit(state);
}

}  // namespace emoplan
