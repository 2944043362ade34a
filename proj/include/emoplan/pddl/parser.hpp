#pragma once

#include <string>
#include <string_view>

#include "emoplan/pddl/ast.hpp"
#include "emoplan/pddl/errors.hpp"

namespace emoplan::pddl {

// Parses the durative-action fragment: typing, numeric fluents, constants,
// conjunctive at-start/at-end/over-all conditions and discrete effects.
// `(:requirements ...)` is accepted and discarded. Throws SyntaxError or
// SemanticError.
Domain parse_domain(std::string_view text);

// `domain` must be the domain named by the problem's `(:domain ...)` clause.
Problem parse_problem(std::string_view text, const Domain& domain);

// Semantic checks shared by the parser and in-memory constructors.
void check_domain(const Domain& domain);
void check_problem(const Problem& problem, const Domain& domain);

// Canonical printers; the output re-parses to an equal AST.
std::string print_domain(const Domain& domain);
std::string print_problem(const Problem& problem);

std::string print_condition(const Condition& condition);
std::string print_expr(const NumericExpr& expr);
std::string print_atom(const Atom& atom);
std::string print_fluent(const FluentRef& fluent);
std::string format_number(double value);

}  // namespace emoplan::pddl
