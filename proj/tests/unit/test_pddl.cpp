#include <doctest.h>

#include <algorithm>

#include "emoplan/emotion.hpp"
#include "emoplan/pddl/parser.hpp"
#include "files.hpp"
#include "generators.hpp"

using namespace emoplan::pddl;

namespace {

Domain bundled_domain() { return parse_domain(files::data("squirrel_domain.pddl")); }

std::size_t count_objects(const Problem& p, const std::string& type) {
  return static_cast<std::size_t>(std::count_if(p.objects.begin(), p.objects.end(),
                                                [&](const TypedName& o) { return o.type == type; }));
}

}  // namespace

TEST_CASE("bundled domain has the twelve listed actions") {
  const Domain d = bundled_domain();
  CHECK(d.name == "squirrel_emotion");
  REQUIRE(d.actions.size() == 12);
  const std::vector<std::string> expected{
      "accommodate-distress", "improve-distress", "accommodate-sadness", "improve-sadness",
      "improve-boredom",      "maintain-happiness", "improve-introvert", "kid_give",
      "move",                 "classify",           "pickup",            "tidy"};
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(d.actions[i].name == expected[i]);
  CHECK(emoplan::emotion::unmodelled_strategy_actions(d) ==
        std::vector<std::string>{"improve-introvert"});
  CHECK(d.constants.size() == 3);
  CHECK(d.predicates.size() == 8);
  CHECK(d.functions.size() == 3);
}

TEST_CASE("accommodate-distress body") {
  const Domain d = bundled_domain();
  const DurativeAction* a = d.find_action("accommodate-distress");
  REQUIRE(a);
  CHECK(a->duration == DurationConstraint::at_most(30));
  CHECK(a->parameters == std::vector<TypedName>{{"?c", "child"}});
  const TimedCondition first{
      TimeSpec::AtStart,
      NumericComparison{CompareOp::Less, NumericExpr::fluent_ref({"pleasure", {"?c"}}),
                        NumericExpr::constant(0.5)}};
  CHECK(std::find(a->conditions.begin(), a->conditions.end(), first) != a->conditions.end());
  const TimedEffect inc{
      TimeSpec::AtEnd,
      NumericEffect{AssignOp::Increase,
                    {"pleasure", {"?c"}},
                    NumericExpr::binary(BinaryOp::Multiply, NumericExpr::duration(),
                                        NumericExpr::constant(0.01))}};
  CHECK(std::find(a->effects.begin(), a->effects.end(), inc) != a->effects.end());
}

TEST_CASE("empty domain") {
  const Domain d = parse_domain("(define (domain d0))");
  CHECK(d.name == "d0");
  CHECK(d.actions.empty());
  CHECK(d.predicates.empty());
  std::string printed = print_domain(d);
  printed.erase(std::remove_if(printed.begin(), printed.end(), ::isspace), printed.end());
  CHECK(printed == "(define(domaind0))");
}

TEST_CASE("unbalanced parenthesis reports its line") {
  const std::string text =
      "(define (domain d0)\n"   // 1
      "  (:types a b)\n"        // 2
      "  (:predicates\n"        // 3
      "    (p ?x - a)\n"        // 4
      "  )\n"                   // 5
      "  (:functions (f))\n"    // 6
      "  ))\n"                  // 7
      ")\n";                    // 8
  try {
    parse_domain(text);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 7);
  }
}

TEST_CASE("missing close parenthesis is a syntax error at end of input") {
  CHECK_THROWS_AS(parse_domain("(define (domain d0)\n(:types a)\n"), SyntaxError);
}

TEST_CASE("benchmark problem contents") {
  const Domain d = bundled_domain();
  const Problem p = parse_problem(files::data("squirrel_problem.pddl"), d);
  CHECK(p.name == "squirrel_emotion_problem");
  CHECK(count_objects(p, "object") == 3);
  CHECK(count_objects(p, "box") == 1);
  CHECK(count_objects(p, "robot") == 1);
  CHECK(count_objects(p, "waypoint") == 5);
  CHECK(p.init_fluents.size() == 9);
  CHECK(p.goal.size() == 3);
  const std::pair<FluentRef, double> c1{{"pleasure", {"c1"}}, 0.4};
  CHECK(std::find(p.init_fluents.begin(), p.init_fluents.end(), c1) != p.init_fluents.end());
}

TEST_CASE("problem for another domain is rejected") {
  const Domain d = bundled_domain();
  std::string text = files::data("squirrel_problem.pddl");
  const auto pos = text.find("(:domain squirrel_emotion)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 26, "(:domain other_domain)");
  CHECK_THROWS_AS(parse_problem(text, d), SemanticError);
}

TEST_CASE("semantic errors") {
  SUBCASE("undeclared predicate") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:durative-action a :parameters () "
                                 ":duration (= ?duration 1) :condition (at start (q)) "
                                 ":effect ()))"),
                    SemanticError);
  }
  SUBCASE("undeclared type") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p ?x - thing)))"),
                    SemanticError);
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p ?x)) "
                                 "(:durative-action a :parameters (?y) "
                                 ":duration (= ?duration 1) :condition (at start (p ?y ?y)) "
                                 ":effect ()))"),
                    SemanticError);
  }
  SUBCASE("duplicate predicate") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p) (p)))"), SemanticError);
  }
  SUBCASE("duration variable in a condition") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:functions (f)) "
                                 "(:durative-action a :parameters () "
                                 ":duration (= ?duration 1) "
                                 ":condition (at start (< (f) ?duration)) :effect ()))"),
                    SemanticError);
  }
  SUBCASE("division by literal zero") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:functions (f)) "
                                 "(:durative-action a :parameters () "
                                 ":duration (= ?duration 1) :condition () "
                                 ":effect (at end (increase (f) (/ 1 0)))))"),
                    SemanticError);
  }
  SUBCASE("non-ground init") {
    const Domain d = parse_domain("(define (domain d) (:predicates (p ?x)))");
    CHECK_THROWS_AS(parse_problem("(define (problem q) (:domain d) (:init (p ?x)) "
                                  "(:goal (and)))",
                                  d),
                    SemanticError);
  }
  SUBCASE("fluent assigned twice") {
    const Domain d = parse_domain("(define (domain d) (:functions (f)))");
    CHECK_THROWS_AS(parse_problem("(define (problem q) (:domain d) "
                                  "(:init (= (f) 1) (= (f) 2)) (:goal (and)))",
                                  d),
                    SemanticError);
  }
}

TEST_CASE("time specifiers in the wrong position") {
  SUBCASE("over all on an effect") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p)) "
                                 "(:durative-action a :parameters () "
                                 ":duration (= ?duration 1) :condition () "
                                 ":effect (over all (p))))"),
                    SyntaxError);
  }
  SUBCASE("bare condition without a time specifier") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p)) "
                                 "(:durative-action a :parameters () "
                                 ":duration (= ?duration 1) :condition (p) :effect ()))"),
                    SyntaxError);
  }
}

TEST_CASE("keywords are case-insensitive, identifiers keep their case") {
  const Domain d = parse_domain(
      "(DEFINE (Domain MyDom) ; comment\n"
      "  (:TYPES Robot)\n"
      "  (:Predicates (At ?r - Robot))\n"
      "  (:DURATIVE-ACTION Go :PARAMETERS (?r - Robot)\n"
      "    :DURATION (= ?duration 2)\n"
      "    :CONDITION (AND (AT START (At ?r)))\n"
      "    :EFFECT (AND (AT END (NOT (At ?r))))))");
  CHECK(d.name == "MyDom");
  CHECK(d.types == std::vector<TypeDecl>{{"Robot", ""}});
  REQUIRE(d.actions.size() == 1);
  CHECK(d.actions[0].name == "Go");
  CHECK(d.actions[0].conditions[0].when == TimeSpec::AtStart);
}

TEST_CASE("bundled files round-trip") {
  const Domain d = bundled_domain();
  const Domain d2 = parse_domain(print_domain(d));
  CHECK(d2 == d);
  CHECK(print_domain(d2) == print_domain(d));
  const Problem p = parse_problem(files::data("squirrel_problem.pddl"), d);
  CHECK(parse_problem(print_problem(p), d) == p);
}

TEST_CASE("generated ASTs round-trip") {
  gen::Rng rng(20261016);
  for (int i = 0; i < 200; ++i) {
    const Domain d = gen::random_domain(rng);
    const Problem p = gen::random_problem(d, rng);
    INFO(print_domain(d));
    INFO(print_problem(p));
    REQUIRE_NOTHROW(check_domain(d));
    REQUIRE_NOTHROW(check_problem(p, d));
    const Domain d2 = parse_domain(print_domain(d));
    CHECK(d2 == d);
    CHECK(parse_problem(print_problem(p), d2) == p);
  }
}
