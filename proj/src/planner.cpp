#include "emoplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <future>
#include <queue>
#include <unordered_set>

#include "emoplan/validator.hpp"

namespace emoplan {

const char* to_string(PlanResult::Status status) {
  switch (status) {
    case PlanResult::Status::Solved: return "solved";
    case PlanResult::Status::Unsolvable: return "unsolvable";
    case PlanResult::Status::Timeout: return "timeout";
  }
  return "?";
}

std::vector<double> candidate_durations(const GroundAction& action, const TimedState&,
                                        const PlannerConfig& cfg) {
  const auto& dc = action.duration;
  if (dc.kind == pddl::DurationConstraint::Kind::Fixed) return {dc.value};
  std::vector<double> out;
  if (cfg.duration_grid_step > 0.0) {
    for (int k = 1;; ++k) {
      const double d = k * cfg.duration_grid_step;
      if (d > dc.value + kTimeTolerance) break;
      out.push_back(d);
    }
  }
  if (out.empty() || std::abs(out.back() - dc.value) > kTimeTolerance) out.push_back(dc.value);
  return out;
}

Plan sequential_schedule(const std::vector<TimedAction>& actions, double epsilon) {
  Plan out;
  double t = 0.0;
  bool first = true;
  for (auto a : actions) {
    a.start = first ? 0.0 : t + epsilon;
    first = false;
    t = a.end();
    out.actions.push_back(std::move(a));
  }
  return out;
}

namespace {

bool is_sequential(const Plan& plan) {
  for (std::size_t i = 1; i < plan.actions.size(); ++i) {
    if (plan.actions[i].start < plan.actions[i - 1].end()) return false;
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <class T>
void append_bytes(std::string& key, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  key.append(buf, sizeof(T));
}

std::string state_key(const TimedState& s) {
  std::string key;
  for (auto w : s.facts.words()) append_bytes(key, w);
  for (std::uint32_t i = 0; i < s.fluents.size(); ++i) {
    const FluentId id{i};
    const std::int64_t v =
        s.fluents.has(id) ? std::llround(s.fluents.get(id) * 1e9) : INT64_MIN;
    append_bytes(key, v);
  }
  for (const auto& p : s.agenda) {
    append_bytes(key, static_cast<std::uint64_t>(p.action));
    append_bytes(key, std::llround((p.end_time - s.time) * 1e6));
    append_bytes(key, std::llround(p.duration * 1e6));
  }
  return key;
}

// Cheap at-start literal filter applied before the full transition.
struct StartFilter {
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;

  bool passes(const FactSet& facts) const {
    for (auto f : pos) {
      if (!facts.contains(FactId{f})) return false;
    }
    for (auto f : neg) {
      if (facts.contains(FactId{f})) return false;
    }
    return true;
  }
};

struct Node {
  TimedState state;
  std::int64_t parent = -1;
  bool is_start = false;
  std::size_t action = 0;
  double duration = 0.0;
};

struct OpenEntry {
  double h;
  double g;
  std::uint64_t tie;
  std::size_t node;

  bool operator>(const OpenEntry& o) const {
    if (h != o.h) return h > o.h;
    if (g != o.g) return g > o.g;
    if (tie != o.tie) return tie > o.tie;
    return node > o.node;
  }
};

Plan extract(const Task& task, const std::vector<Node>& nodes, std::size_t leaf) {
  Plan plan;
  for (std::int64_t i = static_cast<std::int64_t>(leaf); i >= 0; i = nodes[i].parent) {
    const Node& n = nodes[i];
    if (!n.is_start) continue;
    const GroundAction& a = task.action(n.action);
    plan.actions.push_back(TimedAction{n.state.time, a.schema_name, a.bound_args, n.duration});
  }
  std::reverse(plan.actions.begin(), plan.actions.end());
  std::stable_sort(plan.actions.begin(), plan.actions.end(),
                   [](const TimedAction& a, const TimedAction& b) { return a.start < b.start; });
  return plan;
}

}  // namespace

Plan eliminate_redundant_actions(const Task& task, const Plan& plan, double epsilon) {
  ValidationOptions opts;
  opts.epsilon = epsilon;
  Plan current = plan;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = current.actions.size(); i-- > 0;) {
      std::vector<TimedAction> rest = current.actions;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      Plan candidate;
      if (is_sequential(current)) {
        candidate = sequential_schedule(rest, epsilon);
      } else {
        candidate.actions = std::move(rest);
      }
      if (validate(task, candidate, opts).valid()) {
        current = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return current;
}

namespace {

using Clock = std::chrono::steady_clock;

struct SearchContext {
  const Task& task;
  const PlannerConfig& cfg;
  const Heuristic& heuristic;
  const std::vector<StartFilter>& filters;
  const std::vector<std::vector<double>>& durations;
  const TimedState& init;
  Clock::time_point t0;

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

enum class Attempt { Solved, Exhausted, BudgetSpent, TimeUp };

// One greedy best-first run with its own open list, bounded by `budget`
// expansions. Counters accumulate into `result`.
Attempt search(const SearchContext& ctx, std::uint64_t seed, std::size_t budget,
               PlanResult& result) {
  const Task& task = ctx.task;
  const PlannerConfig& cfg = ctx.cfg;
  const auto& heuristic = ctx.heuristic;
  const auto& filters = ctx.filters;
  const auto& durations = ctx.durations;
  std::size_t expanded = 0;

  std::vector<Node> nodes;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<>> open;
  std::unordered_set<std::string> seen;

  // Returns true if `state` is a goal state.
  auto push = [&](Node node) -> bool {
    ++result.stats.generated;
    if (!seen.insert(state_key(node.state)).second) return false;
    const bool goal = node.state.agenda.empty() && goal_holds(task, node.state);
    double h = 0.0;
    if (!goal) {
      h = heuristic(node.state);
      if (h == kDeadEnd) {
        ++result.stats.pruned_dead_ends;
        return false;
      }
    }
    const double g = node.state.time;
    const std::size_t id = nodes.size();
    nodes.push_back(std::move(node));
    if (!goal) open.push(OpenEntry{h, g, splitmix64(seed ^ splitmix64(id)), id});
    return goal;
  };

  auto solved = [&](std::size_t leaf) {
    result.plan = extract(task, nodes, leaf);
    return Attempt::Solved;
  };

  push(Node{ctx.init});
  while (!open.empty()) {
    if (expanded >= budget) return Attempt::BudgetSpent;
    if ((expanded & 255u) == 0 && ctx.elapsed() > cfg.timeout) return Attempt::TimeUp;
    const OpenEntry top = open.top();
    open.pop();
    ++expanded;
    ++result.stats.expanded;
    const std::int64_t parent = static_cast<std::int64_t>(top.node);

    const TimedState& cur = nodes[top.node].state;
    const double start_at = cur.last_event_time ? *cur.last_event_time + cfg.epsilon : 0.0;
    const bool can_start =
        cur.agenda.empty() || start_at < cur.agenda.front().end_time - kTimeTolerance;
    // Copies: pushing may reallocate `nodes`.
    std::optional<TimedState> end_from;
    if (!cur.agenda.empty()) end_from = cur;
    if (can_start) {
      const TimedState waiting = wait_until(cur, std::max(cur.time, start_at));
      for (std::size_t a = 0; a < task.actions().size(); ++a) {
        if (!filters[a].passes(waiting.facts)) continue;
        for (double d : durations[a]) {
          StartResult r;
          try {
            r = apply_start(task, waiting, a, d);
          } catch (const EvaluationError&) {
            continue;
          }
          auto* next = std::get_if<TimedState>(&r);
          if (!next) continue;
          if (push(Node{std::move(*next), parent, true, a, d})) return solved(nodes.size() - 1);
        }
      }
    }
    if (end_from) {
      EndResult r;
      try {
        r = advance_to_next_end(task, *end_from);
      } catch (const EvaluationError&) {
        continue;
      }
      if (auto* ev = std::get_if<EndEvent>(&r)) {
        if (push(Node{std::move(ev->state), parent})) return solved(nodes.size() - 1);
      }
    }
  }
  return Attempt::Exhausted;
}

}  // namespace

PlanResult plan(const Task& task, const PlannerConfig& cfg) {
  PlanResult result;
  const Heuristic heuristic(task, cfg.weights, cfg.thresholds);

  std::vector<StartFilter> filters(task.actions().size());
  std::vector<std::vector<double>> durations(task.actions().size());
  const TimedState init = initial_state(task);
  for (std::size_t i = 0; i < task.actions().size(); ++i) {
    const GroundAction& a = task.action(i);
    for (const auto& tc : a.conditions) {
      if (tc.when != pddl::TimeSpec::AtStart && tc.when != pddl::TimeSpec::OverAll) continue;
      if (const auto* lit = std::get_if<GroundLiteral>(&tc.condition)) {
        (lit->positive ? filters[i].pos : filters[i].neg).push_back(lit->fact.value);
      }
    }
    durations[i] = candidate_durations(a, init, cfg);
  }
  const SearchContext ctx{task, cfg, heuristic, filters, durations, init, Clock::now()};

  auto finish = [&](PlanResult::Status status, std::string reason) {
    result.status = status;
    result.reason = std::move(reason);
    result.stats.seconds = ctx.elapsed();
    return result;
  };

  if (goal_holds(task, init)) return finish(PlanResult::Status::Solved, "");

  // Restarts with a doubling expansion budget and a fresh tie-break seed cut
  // off the long plateaus some random instances produce.
  std::size_t budget = cfg.restart_expansions == 0 ? cfg.max_expansions : cfg.restart_expansions;
  for (std::uint64_t round = 0;; ++round) {
    const std::size_t left = cfg.max_expansions - result.stats.expanded;
    const std::size_t allowed = std::min(budget, left);
    const std::uint64_t seed = round == 0 ? cfg.seed : splitmix64(cfg.seed + round);
    switch (search(ctx, seed, allowed, result)) {
      case Attempt::Solved:
        if (cfg.eliminate_redundant_actions) {
          result.plan = eliminate_redundant_actions(task, result.plan, cfg.epsilon);
        }
        return finish(PlanResult::Status::Solved, "");
      case Attempt::Exhausted:
        return finish(PlanResult::Status::Unsolvable, "search space exhausted");
      case Attempt::TimeUp:
        return finish(PlanResult::Status::Timeout, "time limit reached");
      case Attempt::BudgetSpent:
        break;
    }
    if (result.stats.expanded >= cfg.max_expansions) {
      return finish(PlanResult::Status::Timeout, "expansion limit reached");
    }
    ++result.stats.restarts;
    budget = budget > std::numeric_limits<std::size_t>::max() / 2 ? budget : budget * 2;
  }
}

PlanResult plan_portfolio(const Task& task, const PlannerConfig& cfg, int k) {
  if (k <= 1) return plan(task, cfg);
  std::vector<std::future<PlanResult>> runs;
  for (int i = 0; i < k; ++i) {
    PlannerConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(i);
    runs.push_back(std::async(std::launch::async, [&task, c] { return plan(task, c); }));
  }
  std::vector<PlanResult> results;
  for (auto& f : runs) results.push_back(f.get());

  std::optional<std::size_t> best;
  bool any_timeout = false;
  SearchStats total;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    total.expanded += r.stats.expanded;
    total.generated += r.stats.generated;
    total.pruned_dead_ends += r.stats.pruned_dead_ends;
    total.restarts += r.stats.restarts;
    total.seconds = std::max(total.seconds, r.stats.seconds);
    if (r.status == PlanResult::Status::Timeout) any_timeout = true;
    if (r.solved() && (!best || r.plan.makespan() < results[*best].plan.makespan())) best = i;
  }
  PlanResult out;
  if (best) {
    out = results[*best];
  } else {
    // One exhausted search proves unsolvability regardless of the others.
    const bool proven = std::any_of(results.begin(), results.end(), [](const PlanResult& r) {
      return r.status == PlanResult::Status::Unsolvable;
    });
    out = results.front();
    out.status = proven || !any_timeout ? PlanResult::Status::Unsolvable
                                        : PlanResult::Status::Timeout;
  }
  out.stats = total;
  return out;
}

}  // namespace emoplan
