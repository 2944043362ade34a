#include <cmath>
#include <random>

#include "emoplan/emotion.hpp"

namespace emoplan::emotion {
namespace {

using pddl::Atom;
using pddl::CompareOp;
using pddl::Condition;
using pddl::DurativeAction;
using pddl::FluentRef;
using pddl::Literal;
using pddl::NumericComparison;
using pddl::NumericEffect;
using pddl::NumericExpr;
using pddl::TimeSpec;

const char* const kPad[] = {"pleasure", "arousal", "dominance"};

Literal lit(std::string pred, std::vector<std::string> args, bool positive = true) {
  return Literal{Atom{std::move(pred), std::move(args)}, positive};
}

NumericComparison cmp(CompareOp op, const std::string& fn, const std::string& arg,
                      double value) {
  return NumericComparison{op, NumericExpr::fluent_ref(FluentRef{fn, {arg}}),
                           NumericExpr::constant(value)};
}

// (increase|decrease (fn arg) (* ?duration |rate|)) for a signed rate.
NumericEffect rate_effect(const std::string& fn, const std::string& arg, double rate) {
  return NumericEffect{rate >= 0 ? pddl::AssignOp::Increase : pddl::AssignOp::Decrease,
                       FluentRef{fn, {arg}},
                       NumericExpr::binary(pddl::BinaryOp::Multiply, NumericExpr::duration(),
                                           NumericExpr::constant(std::fabs(rate)))};
}

void busy_toggle(DurativeAction& a) {
  a.conditions.push_back({TimeSpec::AtStart, lit("not_busy", {})});
  a.effects.push_back({TimeSpec::AtStart, lit("not_busy", {}, false)});
  a.effects.push_back({TimeSpec::AtEnd, lit("not_busy", {})});
}

DurativeAction strategy_schema(const StrategyAction& s, const Thresholds& th) {
  DurativeAction a;
  a.name = s.name();
  a.parameters = {{"?c", "child"}};
  a.duration = s.duration;
  if (s.strategy == Strategy::Accommodate && s.target == EmotionLabel::Distress) {
    a.conditions.push_back({TimeSpec::OverAll, cmp(CompareOp::Less, "pleasure", "?c", 1)});
  }
  // Table pattern of the target emotion; Happiness leaves arousal free.
  const double cut = th.low_high_cut;
  const bool low[4][3] = {{true, false, false}, {true, true, false}, {true, true, true},
                          {false, false, false}};
  const int row = static_cast<int>(s.target);
  for (int k = 0; k < 3; ++k) {
    if (s.target == EmotionLabel::Happiness && k == 1) continue;
    a.conditions.push_back({TimeSpec::AtStart, cmp(low[row][k] ? CompareOp::Less
                                                                : CompareOp::Greater,
                                                   kPad[k], "?c", cut)});
  }
  busy_toggle(a);
  const RateVector r = strategy_rates(s.strategy, s.target);
  const double rates[3] = {r.dp, r.da, r.dd};
  for (int k = 0; k < 3; ++k) {
    if (rates[k] != 0.0) a.effects.push_back({TimeSpec::AtEnd, rate_effect(kPad[k], "?c", rates[k])});
  }
  return a;
}

DurativeAction kid_give() {
  DurativeAction a;
  a.name = "kid_give";
  a.parameters = {{"?c", "child"},
                  {"?v", "robot"},
                  {"?o", "object"},
                  {"?robot_wp", "waypoint"},
                  {"?object_wp", "waypoint"}};
  a.duration = pddl::DurationConstraint::fixed(60);
  a.conditions = {
      {TimeSpec::OverAll, lit("robot_at", {"?v", "?robot_wp"})},
      {TimeSpec::AtStart, lit("gripper_empty", {"?v"})},
      {TimeSpec::AtStart, lit("object_at", {"?o", "?object_wp"})},
      {TimeSpec::AtStart, lit("not_busy", {})},
      {TimeSpec::OverAll, cmp(CompareOp::LessEqual, "pleasure", "?c", 1)},
      {TimeSpec::OverAll, cmp(CompareOp::LessEqual, "arousal", "?c", 1)},
      {TimeSpec::OverAll, cmp(CompareOp::LessEqual, "dominance", "?c", 1)},
  };
  a.effects = {
      {TimeSpec::AtStart, lit("not_busy", {}, false)},
      {TimeSpec::AtEnd, lit("not_busy", {})},
      {TimeSpec::AtStart, lit("gripper_empty", {"?v"}, false)},
      {TimeSpec::AtEnd, lit("holding", {"?v", "?o"})},
      {TimeSpec::AtStart, lit("object_at", {"?o", "?object_wp"}, false)},
  };
  for (const char* fn : kPad) {
    a.effects.push_back({TimeSpec::AtEnd, rate_effect(fn, "?c", kKidGiveRate)});
  }
  return a;
}

// Emotional guard and per-second degradation shared by the task actions.
void task_effects_on_children(DurativeAction& a, const DomainConfig& cfg) {
  for (int i = 0; i < cfg.children; ++i) {
    for (const char* fn : kPad) {
      a.conditions.push_back({TimeSpec::OverAll, cmp(CompareOp::GreaterEqual, fn, child_name(i),
                                                     cfg.thresholds.hard_floor)});
    }
  }
  if (cfg.degradation_rate == 0.0) return;
  for (int i = 0; i < cfg.children; ++i) {
    a.effects.push_back(
        {TimeSpec::AtEnd, rate_effect("pleasure", child_name(i), -cfg.degradation_rate)});
    a.effects.push_back(
        {TimeSpec::AtEnd, rate_effect("arousal", child_name(i), -cfg.degradation_rate)});
  }
}

DurativeAction move(const DomainConfig& cfg) {
  DurativeAction a;
  a.name = "move";
  a.parameters = {{"?v", "robot"}, {"?from", "waypoint"}, {"?to", "waypoint"}};
  a.duration = pddl::DurationConstraint::fixed(10);
  a.conditions.push_back({TimeSpec::AtStart, lit("robot_at", {"?v", "?from"})});
  busy_toggle(a);
  a.effects.push_back({TimeSpec::AtStart, lit("robot_at", {"?v", "?from"}, false)});
  a.effects.push_back({TimeSpec::AtEnd, lit("robot_at", {"?v", "?to"})});
  task_effects_on_children(a, cfg);
  return a;
}

DurativeAction classify_action(const DomainConfig& cfg) {
  DurativeAction a;
  a.name = "classify";
  a.parameters = {{"?v", "robot"}, {"?o", "object"}, {"?wp", "waypoint"}};
  a.duration = pddl::DurationConstraint::fixed(60);
  a.conditions.push_back({TimeSpec::OverAll, lit("robot_at", {"?v", "?wp"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("object_at", {"?o", "?wp"})});
  busy_toggle(a);
  a.effects.push_back({TimeSpec::AtEnd, lit("classified", {"?o"})});
  task_effects_on_children(a, cfg);
  return a;
}

DurativeAction pickup(const DomainConfig& cfg) {
  DurativeAction a;
  a.name = "pickup";
  a.parameters = {{"?v", "robot"}, {"?o", "object"}, {"?wp", "waypoint"}};
  a.duration = pddl::DurationConstraint::fixed(60);
  a.conditions.push_back({TimeSpec::OverAll, lit("robot_at", {"?v", "?wp"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("object_at", {"?o", "?wp"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("gripper_empty", {"?v"})});
  busy_toggle(a);
  a.effects.push_back({TimeSpec::AtStart, lit("object_at", {"?o", "?wp"}, false)});
  a.effects.push_back({TimeSpec::AtStart, lit("gripper_empty", {"?v"}, false)});
  a.effects.push_back({TimeSpec::AtEnd, lit("holding", {"?v", "?o"})});
  task_effects_on_children(a, cfg);
  return a;
}

DurativeAction tidy(const DomainConfig& cfg) {
  DurativeAction a;
  a.name = "tidy";
  a.parameters = {{"?v", "robot"}, {"?o", "object"}, {"?b", "box"}, {"?wp", "waypoint"}};
  a.duration = pddl::DurationConstraint::fixed(30);
  a.conditions.push_back({TimeSpec::OverAll, lit("robot_at", {"?v", "?wp"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("box_at", {"?b", "?wp"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("holding", {"?v", "?o"})});
  a.conditions.push_back({TimeSpec::AtStart, lit("classified", {"?o"})});
  busy_toggle(a);
  a.effects.push_back({TimeSpec::AtStart, lit("holding", {"?v", "?o"}, false)});
  a.effects.push_back({TimeSpec::AtEnd, lit("in_box", {"?b", "?o"})});
  a.effects.push_back({TimeSpec::AtEnd, lit("gripper_empty", {"?v"})});
  task_effects_on_children(a, cfg);
  return a;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

std::string child_name(int index) { return "c" + std::to_string(index + 1); }

std::vector<PadState> benchmark_pads() {
  return {{0.4, 0.4, 0.45}, {1.0, 1.0, 1.0}, {0.83, 0.98, 0.6}};
}

std::vector<PadState> default_pads(int children, std::uint64_t seed) {
  std::vector<PadState> pads = benchmark_pads();
  pads.resize(std::min<std::size_t>(pads.size(), static_cast<std::size_t>(std::max(children, 0))));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(pads.size()) < children) {
    const double p = round2(unit(rng));
    const double a = round2(unit(rng));
    const double d = round2(unit(rng));
    pads.push_back({p, a, d});
  }
  return pads;
}

pddl::Domain synthesize_domain(const DomainConfig& cfg) {
  if (cfg.children < 1) throw std::invalid_argument("synthesize_domain: need at least one child");
  pddl::Domain d;
  d.name = "squirrel_emotion";
  d.types = {{"robot", ""}, {"child", ""}, {"waypoint", ""}, {"box", ""}, {"object", ""}};
  for (int i = 0; i < cfg.children; ++i) d.constants.push_back({child_name(i), "child"});
  d.predicates = {
      {"robot_at", {{"?v", "robot"}, {"?wp", "waypoint"}}},
      {"object_at", {{"?o", "object"}, {"?wp", "waypoint"}}},
      {"box_at", {{"?b", "box"}, {"?wp", "waypoint"}}},
      {"classified", {{"?o", "object"}}},
      {"in_box", {{"?b", "box"}, {"?o", "object"}}},
      {"holding", {{"?v", "robot"}, {"?o", "object"}}},
      {"gripper_empty", {{"?v", "robot"}}},
      {"not_busy", {}},
  };
  for (const char* fn : kPad) d.functions.push_back({fn, {{"?c", "child"}}});
  for (const auto& s : strategy_actions()) d.actions.push_back(strategy_schema(s, cfg.thresholds));
  d.actions.push_back(kid_give());
  d.actions.push_back(move(cfg));
  d.actions.push_back(classify_action(cfg));
  d.actions.push_back(pickup(cfg));
  d.actions.push_back(tidy(cfg));
  return d;
}

pddl::Problem synthesize_problem(const ProblemConfig& cfg) {
  if (cfg.children < 1) throw std::invalid_argument("synthesize_problem: need at least one child");
  if (cfg.toys < 1) throw std::invalid_argument("synthesize_problem: need at least one toy");
  if (static_cast<int>(cfg.init_pads.size()) != cfg.children) {
    throw std::invalid_argument("synthesize_problem: one PAD triple per child required");
  }
  pddl::Problem p;
  p.name = "squirrel_emotion_problem";
  p.domain_name = "squirrel_emotion";
  auto toy = [](int k) { return "toy" + std::to_string(k + 1); };
  for (int k = 0; k < cfg.toys; ++k) p.objects.push_back({toy(k), "object"});
  p.objects.push_back({"box1", "box"});
  p.objects.push_back({"kenny", "robot"});
  p.objects.push_back({"kenny_wp", "waypoint"});
  for (int k = 0; k < cfg.toys; ++k) p.objects.push_back({toy(k) + "_wp", "waypoint"});
  p.objects.push_back({"box1_wp", "waypoint"});

  p.init_facts.push_back({"not_busy", {}});
  p.init_facts.push_back({"robot_at", {"kenny", "kenny_wp"}});
  p.init_facts.push_back({"box_at", {"box1", "box1_wp"}});
  for (int k = 0; k < cfg.toys; ++k) p.init_facts.push_back({"object_at", {toy(k), toy(k) + "_wp"}});
  p.init_facts.push_back({"gripper_empty", {"kenny"}});

  for (int i = 0; i < cfg.children; ++i) {
    const PadState& pad = cfg.init_pads[static_cast<std::size_t>(i)];
    for (double v : {pad.pleasure, pad.arousal, pad.dominance}) {
      if (v < kPadMin || v > kPadMax) {
        throw std::invalid_argument("synthesize_problem: PAD values must lie in [-1, 1]");
      }
    }
    p.init_fluents.push_back({FluentRef{"pleasure", {child_name(i)}}, pad.pleasure});
    p.init_fluents.push_back({FluentRef{"arousal", {child_name(i)}}, pad.arousal});
    p.init_fluents.push_back({FluentRef{"dominance", {child_name(i)}}, pad.dominance});
  }
  for (int k = 0; k < cfg.toys; ++k) {
    p.goal.push_back(lit("in_box", {"box1", toy(k)}));
  }
  return p;
}

}  // namespace emoplan::emotion
