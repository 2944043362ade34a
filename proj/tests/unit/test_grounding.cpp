#include <doctest.h>

#include "emoplan/emotion.hpp"
#include "emoplan/grounding.hpp"
#include "emoplan/pddl/parser.hpp"
#include "files.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace emoplan;

namespace {

struct Benchmark {
  pddl::Domain domain = pddl::parse_domain(files::data("squirrel_domain.pddl"));
  pddl::Problem problem = pddl::parse_problem(files::data("squirrel_problem.pddl"), domain);
};

}  // namespace

TEST_CASE("benchmark grounding counts") {
  const Benchmark b;
  const auto counts = count_groundings(b.domain, b.problem);
  CHECK(counts.at("move") == 25);
  CHECK(counts.at("kid_give") == 225);
  CHECK(counts.at("accommodate-distress") == 3);
  for (const auto& a : b.domain.actions) {
    CHECK_MESSAGE(counts.at(a.name) == oracle::enumerate_groundings(b.domain, b.problem, a.name),
                  a.name);
  }
  const Task task = ground(b.domain, b.problem);
  std::size_t total = 0;
  for (const auto& [name, n] : counts) total += n;
  CHECK(task.actions().size() == total);
}

TEST_CASE("ground actions are ordered by schema then arguments") {
  const Benchmark b;
  const Task task = ground(b.domain, b.problem);
  for (std::size_t i = 1; i < task.actions().size(); ++i) {
    const auto& x = task.action(i - 1);
    const auto& y = task.action(i);
    CHECK(std::tie(x.schema_name, x.bound_args) < std::tie(y.schema_name, y.bound_args));
  }
  const auto idx = task.find_action("kid_give", {"c1", "kenny", "toy1", "toy1_wp", "toy1_wp"});
  REQUIRE(idx);
  CHECK(task.action(*idx).signature() == "(kid_give c1 kenny toy1 toy1_wp toy1_wp)");
  CHECK_FALSE(task.find_action("kid_give", {"c1", "kenny", "box1", "toy1_wp", "toy1_wp"}));
}

TEST_CASE("grounding is deterministic") {
  const Benchmark b;
  const Task t1 = ground(b.domain, b.problem);
  const Task t2 = ground(b.domain, b.problem);
  CHECK(t1.actions() == t2.actions());
}

TEST_CASE("no free variables remain") {
  const Benchmark b;
  const Task task = ground(b.domain, b.problem);
  for (std::size_t f = 0; f < task.fact_count(); ++f) {
    for (const auto& arg : task.atom(FactId{static_cast<std::uint32_t>(f)}).args) {
      CHECK(arg.front() != '?');
    }
  }
  for (std::size_t f = 0; f < task.fluent_count(); ++f) {
    for (const auto& arg : task.fluent(FluentId{static_cast<std::uint32_t>(f)}).args) {
      CHECK(arg.front() != '?');
    }
  }
}

TEST_CASE("pad fluents are flagged") {
  const Benchmark b;
  const Task task = ground(b.domain, b.problem);
  const auto p = task.find_fluent({"pleasure", {"c2"}});
  REQUIRE(p);
  CHECK(task.is_pad(*p));
  CHECK(task.children() == std::vector<std::string>{"c1", "c2", "c3"});
}

TEST_CASE("one child and one toy gives one instance per strategy schema") {
  emotion::DomainConfig dc;
  dc.children = 1;
  emotion::ProblemConfig pc;
  pc.children = 1;
  pc.toys = 1;
  pc.init_pads = emotion::default_pads(1, 0);
  const auto counts =
      count_groundings(emotion::synthesize_domain(dc), emotion::synthesize_problem(pc));
  for (const auto& s : emotion::strategy_actions()) CHECK(counts.at(s.name()) == 1);
}

TEST_CASE("counts match the enumeration oracle on generated domains") {
  gen::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto d = gen::random_domain(rng);
    const auto p = gen::random_problem(d, rng);
    const auto counts = count_groundings(d, p);
    for (const auto& a : d.actions) {
      CHECK(counts.at(a.name) == oracle::enumerate_groundings(d, p, a.name));
    }
    CHECK(ground(d, p).actions().size() ==
          [&] {
            std::size_t n = 0;
            for (const auto& [k, v] : counts) n += v;
            return n;
          }());
  }
}

TEST_CASE("empty ground set is legal") {
  const auto d = pddl::parse_domain(
      "(define (domain d) (:types t) (:durative-action a :parameters (?x - t) "
      ":duration (= ?duration 1) :condition () :effect ()))");
  const auto p = pddl::parse_problem("(define (problem q) (:domain d) (:init) (:goal (and)))", d);
  CHECK(ground(d, p).actions().empty());
}
