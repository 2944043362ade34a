#include <doctest.h>

#include <chrono>

#include "emoplan/emotion.hpp"
#include "emoplan/pddl/parser.hpp"
#include "emoplan/planner.hpp"
#include "emoplan/validator.hpp"
#include "files.hpp"

using namespace emoplan;

namespace {

struct Benchmark {
  pddl::Domain domain = pddl::parse_domain(files::data("squirrel_domain.pddl"));
  pddl::Problem problem = pddl::parse_problem(files::data("squirrel_problem.pddl"), domain);
};

const Task& benchmark_task() {
  static const Task task = [] {
    Benchmark b;
    return ground(b.domain, b.problem);
  }();
  return task;
}

FactId fact(const Task& t, const std::string& pred, std::vector<std::string> args) {
  auto f = t.find_fact({pred, std::move(args)});
  REQUIRE(f);
  return *f;
}

}  // namespace

TEST_CASE("heuristic") {
  const Task& t = benchmark_task();
  const Heuristic h(t);
  const TimedState init = initial_state(t);
  CHECK(h(init) > 0.0);
  CHECK(h.unsatisfied_goals(init) == 3);
  CHECK(h(init) == h(init));

  TimedState two = init;
  for (const char* toy : {"toy1", "toy2"}) {
    two.facts.erase(fact(t, "object_at", {toy, std::string(toy) + "_wp"}));
    two.facts.insert(fact(t, "in_box", {"box1", toy}));
  }
  CHECK(h.unsatisfied_goals(two) == 1);
  CHECK(h(two) < h(init));

  TimedState done = two;
  done.facts.erase(fact(t, "object_at", {"toy3", "toy3_wp"}));
  done.facts.insert(fact(t, "in_box", {"box1", "toy3"}));
  CHECK(h(done) == 0.0);
}

TEST_CASE("emotional deficit term") {
  const Task& t = benchmark_task();
  const Heuristic h(t);
  // c1 is the only child below the cut: 0.5 - 0.4.
  CHECK(h.emotional_deficit(initial_state(t)) == doctest::Approx(0.1));
}

TEST_CASE("candidate durations") {
  const Task& t = benchmark_task();
  const TimedState s = initial_state(t);
  PlannerConfig cfg;
  const auto give = *t.find_action("kid_give", {"c1", "kenny", "toy1", "toy1_wp", "toy1_wp"});
  CHECK(candidate_durations(t.action(give), s, cfg) == std::vector<double>{60});
  const auto acc = *t.find_action("accommodate-distress", {"c1"});
  CHECK(candidate_durations(t.action(acc), s, cfg) == std::vector<double>{5, 10, 15, 20, 25, 30});
  GroundAction seven;
  seven.duration = pddl::DurationConstraint::at_most(7);
  CHECK(candidate_durations(seven, s, cfg) == std::vector<double>{5, 7});
  seven.duration = pddl::DurationConstraint::at_most(3);
  CHECK(candidate_durations(seven, s, cfg) == std::vector<double>{3});
}

TEST_CASE("benchmark is solved with a valid epsilon-separated plan") {
  const Task& t = benchmark_task();
  const PlanResult r = plan(t);
  REQUIRE(r.solved());
  const ValidationReport report = validate(t, r.plan);
  CHECK(report.valid());
  CHECK(r.plan.makespan() <= 775.0);
  for (const char* toy : {"toy1", "toy2", "toy3"}) {
    CHECK(report.final_state.facts.contains(fact(t, "in_box", {"box1", toy})));
  }
  // Every start comes at least epsilon after every earlier event.
  std::vector<double> events;
  for (const auto& a : r.plan.actions) {
    for (double e : events) {
      if (e <= a.start) CHECK(a.start - e >= 0.001 - 1e-9);
    }
    events.push_back(a.start);
    events.push_back(a.end());
  }
  CHECK(r.plan.actions.front().start == 0.0);
}

TEST_CASE("planning is deterministic for a fixed seed") {
  const Task& t = benchmark_task();
  PlannerConfig cfg;
  cfg.seed = 5;
  CHECK(print_plan(plan(t, cfg).plan) == print_plan(plan(t, cfg).plan));
}

TEST_CASE("portfolio keeps the best solved plan") {
  const Task& t = benchmark_task();
  PlannerConfig cfg;
  const PlanResult single = plan(t, cfg);
  const PlanResult best = plan_portfolio(t, cfg, 3);
  REQUIRE(best.solved());
  CHECK(best.plan.makespan() <= single.plan.makespan());
  CHECK(validate(t, best.plan).valid());
}

TEST_CASE("goal true at init gives the empty plan") {
  Benchmark b;
  b.problem.goal = {pddl::Literal{{"not_busy", {}}, true}};
  const Task t = ground(b.domain, b.problem);
  const PlanResult r = plan(t);
  REQUIRE(r.solved());
  CHECK(r.plan.actions.empty());
  CHECK(r.plan.makespan() == 0.0);
}

TEST_CASE("type-invalid goal is rejected at parse time") {
  const Benchmark b;
  std::string text = files::data("squirrel_problem.pddl");
  const auto pos = text.find("(in_box box1 toy3)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 18, "(in_box box1 kenny_wp)");
  CHECK_THROWS_AS(pddl::parse_problem(text, b.domain), pddl::SemanticError);
}

TEST_CASE("toy bound for a box that is nowhere is unsolvable") {
  Benchmark b;
  b.problem.objects.push_back({"box2", "box"});
  b.problem.goal.push_back(pddl::Literal{{"in_box", {"box2", "toy1"}}, true});
  const Task t = ground(b.domain, b.problem);
  const PlanResult r = plan(t);
  CHECK(r.status == PlanResult::Status::Unsolvable);
}

TEST_CASE("budget exhaustion reports a timeout") {
  const Task& t = benchmark_task();
  PlannerConfig cfg;
  cfg.timeout = 0.0;
  CHECK(plan(t, cfg).status == PlanResult::Status::Timeout);
  cfg.timeout = 60.0;
  cfg.max_expansions = 2;
  CHECK(plan(t, cfg).status == PlanResult::Status::Timeout);
}

TEST_CASE("restarts keep plans valid and deterministic") {
  const Task& t = benchmark_task();
  PlannerConfig cfg;
  cfg.restart_expansions = 20;
  const PlanResult r = plan(t, cfg);
  REQUIRE(r.solved());
  CHECK(r.stats.restarts > 0);
  CHECK(validate(t, r.plan).valid());
  CHECK(print_plan(plan(t, cfg).plan) == print_plan(r.plan));

  Benchmark b;
  b.problem.objects.push_back({"box2", "box"});
  b.problem.goal.push_back(pddl::Literal{{"in_box", {"box2", "toy1"}}, true});
  CHECK(plan(ground(b.domain, b.problem), cfg).status == PlanResult::Status::Unsolvable);
}

TEST_CASE("without emotions the task is classical and quick") {
  emotion::DomainConfig dc;
  dc.degradation_rate = 0.0;
  pddl::Domain d = emotion::synthesize_domain(dc);
  std::erase_if(d.actions, [](const pddl::DurativeAction& a) {
    return a.name != "move" && a.name != "classify" && a.name != "pickup" && a.name != "tidy";
  });
  for (auto& a : d.actions) {
    std::erase_if(a.conditions, [](const pddl::TimedCondition& c) {
      return std::holds_alternative<pddl::NumericComparison>(c.condition);
    });
    std::erase_if(a.effects, [](const pddl::TimedEffect& e) {
      return std::holds_alternative<pddl::NumericEffect>(e.effect);
    });
  }
  emotion::ProblemConfig pc;
  pc.toys = 1;
  pc.init_pads = emotion::benchmark_pads();
  const Task t = ground(d, emotion::synthesize_problem(pc));
  const auto t0 = std::chrono::steady_clock::now();
  const PlanResult r = plan(t);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(r.solved());
  CHECK(secs < 1.0);
  CHECK(validate(t, r.plan).valid());
  // move, classify, pickup, move, tidy
  CHECK(r.plan.actions.size() == 5);
}

TEST_CASE("redundant actions are removed") {
  const Task& t = benchmark_task();
  const PlanResult r = plan(t);
  REQUIRE(r.solved());
  std::vector<TimedAction> padded{TimedAction{0, "maintain-happiness", {"c2"}, 10}};
  padded.insert(padded.end(), r.plan.actions.begin(), r.plan.actions.end());
  const Plan longer = sequential_schedule(padded, 0.001);
  REQUIRE(validate(t, longer).valid());
  const Plan trimmed = eliminate_redundant_actions(t, longer, 0.001);
  CHECK(trimmed.actions.size() == r.plan.actions.size());
  CHECK(validate(t, trimmed).valid());
}

TEST_CASE("sequential schedule") {
  const Plan p = sequential_schedule(
      {TimedAction{7, "a", {}, 10}, TimedAction{0, "b", {}, 60}, TimedAction{0, "c", {}, 5}}, 0.001);
  CHECK(p.actions[0].start == 0.0);
  CHECK(p.actions[1].start == doctest::Approx(10.001));
  CHECK(p.actions[2].start == doctest::Approx(70.002));
}
