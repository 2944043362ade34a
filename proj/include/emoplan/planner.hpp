#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "emoplan/emotion.hpp"
#include "emoplan/grounding.hpp"
#include "emoplan/plan.hpp"
#include "emoplan/temporal_state.hpp"

namespace emoplan {

struct HeuristicWeights {
  double unsatisfied_goal = 10.0;  // per unsatisfied goal conjunct
  double relaxed_plan = 1.0;       // per action in the delete-relaxed plan
  double emotional_deficit = 1.0;  // per unit of PAD below the cut
};

struct PlannerConfig {
  double epsilon = 0.001;
  double timeout = 60.0;             // seconds of wall clock
  double duration_grid_step = 5.0;   // seconds
  std::uint64_t seed = 0;            // open-list tie-break
  std::size_t max_expansions = std::numeric_limits<std::size_t>::max();
  // Expansions before the first restart; doubles after each. 0 disables.
  std::size_t restart_expansions = 50000;
  HeuristicWeights weights;
  emotion::Thresholds thresholds;
  // Drop actions whose removal leaves the plan valid.
  bool eliminate_redundant_actions = true;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;
  std::size_t pruned_dead_ends = 0;
  std::size_t restarts = 0;
  double seconds = 0.0;
};

struct PlanResult {
  enum class Status { Solved, Unsolvable, Timeout };

  Status status = Status::Unsolvable;
  Plan plan;
  SearchStats stats;
  std::string reason;

  bool solved() const { return status == Status::Solved; }
};

const char* to_string(PlanResult::Status status);

inline constexpr double kDeadEnd = std::numeric_limits<double>::infinity();

/// Greedy best-first state evaluator.
///
/// h = 0 when the goal holds. Otherwise
///   w_goal * (unsatisfied goal conjuncts)
/// + w_rp   * (size of a delete-relaxed plan over the propositional part)
/// + w_emo  * sum over children of max(0, cut - min(P, A, D)).
/// Returns kDeadEnd when some propositional goal is unreachable even with
/// delete effects and numeric conditions ignored.
class Heuristic {
 public:
  Heuristic(const Task& task, HeuristicWeights weights = {}, emotion::Thresholds th = {});

  double operator()(const TimedState& state) const;

  std::size_t unsatisfied_goals(const TimedState& state) const;
  double emotional_deficit(const TimedState& state) const;
  // Number of actions in the relaxed plan, or -1 if a goal is unreachable.
  long relaxed_plan_size(const TimedState& state) const;

 private:
  struct RelaxedAction {
    std::vector<std::uint32_t> pre;
    std::vector<std::uint32_t> add;
  };

  const Task& task_;
  HeuristicWeights weights_;
  emotion::Thresholds thresholds_;
  std::vector<RelaxedAction> relaxed_;
  std::vector<std::vector<std::size_t>> consumers_;  // fact -> relaxed actions
  std::vector<std::uint32_t> goal_facts_;
  std::vector<std::array<std::optional<FluentId>, 3>> child_pad_;
};

// Fixed(d) -> [d]; UpperBounded(m) -> {step, 2 step, ...} <= m, plus m.
std::vector<double> candidate_durations(const GroundAction& action, const TimedState& state,
                                        const PlannerConfig& cfg);

/// Forward decision-epoch search. Successors either start an applicable
/// ground action epsilon after the last event (once per candidate duration)
/// or advance to the earliest pending end. Nodes are ordered by h, then by
/// makespan so far, then by a seeded hash. States are deduplicated on facts,
/// agenda and fluent values. Runs out of expansion budget restart with a
/// new tie-break seed and twice the budget.
PlanResult plan(const Task& task, const PlannerConfig& cfg = {});

// Runs `k` searches with seeds cfg.seed .. cfg.seed + k - 1 on separate
// threads and keeps the solved plan with the smallest makespan.
PlanResult plan_portfolio(const Task& task, const PlannerConfig& cfg, int k);

// Removes actions one at a time (re-timing the rest) while the plan stays
// valid.
Plan eliminate_redundant_actions(const Task& task, const Plan& plan, double epsilon);

// Re-times a sequence of actions back to back, each starting epsilon after the
// previous end.
Plan sequential_schedule(const std::vector<TimedAction>& actions, double epsilon);

}  // namespace emoplan
