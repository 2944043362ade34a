#include "emoplan/pddl/parser.hpp"

#include <charconv>
#include <optional>

#include "lexer.hpp"

namespace emoplan::pddl {
namespace {

using detail::lowercase;
using detail::Token;

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

bool is_variable(const std::string& s) { return !s.empty() && s.front() == '?'; }

bool is_duration_var(const std::string& s) { return lowercase(s) == "?duration"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(detail::tokenize(text)) {}

  Domain domain() {
    Domain d;
    expect_open();
    expect_keyword("define");
    expect_open();
    expect_keyword("domain");
    d.name = expect_name("domain name");
    expect_close();
    while (peek_open()) {
      expect_open();
      const Token& head = expect_symbol("domain section keyword");
      const std::string key = lowercase(head.text);
      if (key == ":requirements") {
        skip_to_close();
      } else if (key == ":types") {
        for (auto& [name, type] : typed_list(/*default_type=*/"")) {
          d.types.push_back({name, type});
        }
        expect_close();
      } else if (key == ":constants") {
        for (auto& [name, type] : typed_list("object")) d.constants.push_back({name, type});
        expect_close();
      } else if (key == ":predicates") {
        while (peek_open()) d.predicates.push_back(signature());
        expect_close();
      } else if (key == ":functions") {
        while (peek_open()) {
          d.functions.push_back(signature());
          // Optional `- number` result type.
          if (peek_symbol("-")) {
            next();
            const Token& t = expect_symbol("function type 'number'");
            if (lowercase(t.text) != "number") fail(t, "function type 'number'");
          }
        }
        expect_close();
      } else if (key == ":durative-action") {
        d.actions.push_back(durative_action());
      } else {
        fail(head, "one of :requirements, :types, :constants, :predicates, "
                   ":functions, :durative-action");
      }
    }
    expect_close();
    expect_end();
    check_domain(d);
    return d;
  }

  Problem problem(const Domain& dom) {
    Problem p;
    expect_open();
    expect_keyword("define");
    expect_open();
    expect_keyword("problem");
    p.name = expect_name("problem name");
    expect_close();
    bool saw_goal = false;
    while (peek_open()) {
      expect_open();
      const Token& head = expect_symbol("problem section keyword");
      const std::string key = lowercase(head.text);
      if (key == ":domain") {
        p.domain_name = expect_name("domain name");
        expect_close();
      } else if (key == ":requirements") {
        skip_to_close();
      } else if (key == ":objects") {
        for (auto& [name, type] : typed_list("object")) p.objects.push_back({name, type});
        expect_close();
      } else if (key == ":init") {
        while (peek_open()) init_element(p);
        expect_close();
      } else if (key == ":goal") {
        p.goal = goal();
        saw_goal = true;
        expect_close();
      } else {
        fail(head, "one of :domain, :requirements, :objects, :init, :goal");
      }
    }
    expect_close();
    expect_end();
    if (!saw_goal) throw SemanticError("problem '" + p.name + "' has no :goal");
    check_problem(p, dom);
    return p;
  }

 private:
  // --- token plumbing -----------------------------------------------------

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }
  bool peek_open() const { return peek().kind == Token::Kind::Open; }
  bool peek_close() const { return peek().kind == Token::Kind::Close; }
  bool peek_symbol(std::string_view lowered) const {
    return peek().kind == Token::Kind::Symbol && lowercase(peek().text) == lowered;
  }
  // Keyword lookahead one past an opening parenthesis.
  std::string peek_head() const {
    if (!peek_open()) return {};
    const Token& t = tokens_[pos_ + 1];
    return t.kind == Token::Kind::Symbol ? lowercase(t.text) : std::string();
  }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    std::string found;
    switch (t.kind) {
      case Token::Kind::Open: found = "'('"; break;
      case Token::Kind::Close: found = "')'"; break;
      case Token::Kind::Symbol: found = "'" + t.text + "'"; break;
      case Token::Kind::End: found = "end of input"; break;
    }
    throw SyntaxError(t.line, t.column, expected + ", found " + found);
  }

  void expect_open() {
    if (!peek_open()) fail(peek(), "'('");
    next();
  }
  void expect_close() {
    if (!peek_close()) fail(peek(), "')'");
    next();
  }
  void expect_end() {
    if (peek().kind != Token::Kind::End) fail(peek(), "end of input");
  }
  const Token& expect_symbol(const std::string& what) {
    if (peek().kind != Token::Kind::Symbol) fail(peek(), what);
    return next();
  }
  void expect_keyword(std::string_view kw) {
    if (!peek_symbol(kw)) fail(peek(), "'" + std::string(kw) + "'");
    next();
  }
  std::string expect_name(const std::string& what) {
    const Token& t = expect_symbol(what);
    if (is_variable(t.text) || t.text.front() == ':') fail(t, what);
    return t.text;
  }
  std::string expect_variable() {
    const Token& t = expect_symbol("variable");
    if (!is_variable(t.text) || t.text.size() < 2) fail(t, "variable");
    return t.text;
  }
  void skip_to_close() {
    int depth = 1;
    while (depth > 0) {
      const Token& t = next();
      if (t.kind == Token::Kind::End) fail(t, "')'");
      if (t.kind == Token::Kind::Open) ++depth;
      if (t.kind == Token::Kind::Close) --depth;
    }
  }

  // --- grammar --------------------------------------------------------------

  // `a b - t c - u d` -> (a,t) (b,t) (c,u) (d,default_type)
  std::vector<std::pair<std::string, std::string>> typed_list(
      const std::string& default_type, bool variables = false) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t untyped_from = 0;
    while (peek().kind == Token::Kind::Symbol) {
      if (peek().text == "-") {
        const Token& dash = next();
        if (untyped_from == out.size()) fail(dash, variables ? "variable" : "name");
        const std::string type = expect_name("type name");
        for (std::size_t i = untyped_from; i < out.size(); ++i) out[i].second = type;
        untyped_from = out.size();
        continue;
      }
      out.emplace_back(variables ? expect_variable() : expect_name("name"), default_type);
    }
    return out;
  }

  Signature signature() {
    expect_open();
    Signature s;
    s.name = expect_name("predicate or function name");
    for (auto& [name, type] : typed_list("object", /*variables=*/true)) {
      s.params.push_back({name, type});
    }
    expect_close();
    return s;
  }

  DurativeAction durative_action() {
    DurativeAction a;
    a.name = expect_name("action name");
    bool saw_duration = false;
    while (peek().kind == Token::Kind::Symbol) {
      const Token& kw = next();
      const std::string key = lowercase(kw.text);
      if (key == ":parameters") {
        expect_open();
        for (auto& [name, type] : typed_list("object", true)) a.parameters.push_back({name, type});
        expect_close();
      } else if (key == ":duration") {
        a.duration = duration_constraint();
        saw_duration = true;
      } else if (key == ":condition") {
        a.conditions = timed_conditions();
      } else if (key == ":effect") {
        a.effects = timed_effects();
      } else {
        fail(kw, "one of :parameters, :duration, :condition, :effect");
      }
    }
    expect_close();
    if (!saw_duration) throw SemanticError("action '" + a.name + "' has no :duration");
    return a;
  }

  DurationConstraint duration_constraint() {
    expect_open();
    const Token& op = expect_symbol("'=' or '<='");
    DurationConstraint dc;
    if (op.text == "=") {
      dc.kind = DurationConstraint::Kind::Fixed;
    } else if (op.text == "<=") {
      dc.kind = DurationConstraint::Kind::UpperBounded;
    } else {
      fail(op, "'=' or '<='");
    }
    const Token& var = expect_symbol("?duration");
    if (!is_duration_var(var.text)) fail(var, "?duration");
    const Token& num = expect_symbol("duration value");
    auto v = parse_number(num.text);
    if (!v) fail(num, "numeric duration value");
    dc.value = *v;
    expect_close();
    return dc;
  }

  // `(and ...)`, `()` or a single timed condition.
  std::vector<TimedCondition> timed_conditions() {
    std::vector<TimedCondition> out;
    expect_open();
    if (peek_close()) {
      next();
      return out;
    }
    if (peek_symbol("and")) {
      next();
      while (peek_open()) {
        expect_open();
        out.push_back(timed_condition_body());
      }
      expect_close();
      return out;
    }
    out.push_back(timed_condition_body());
    return out;
  }

  // After the opening parenthesis of `(at start C)` etc.
  TimedCondition timed_condition_body() {
    TimedCondition tc;
    const Token& t = expect_symbol("'at' or 'over'");
    const std::string head = lowercase(t.text);
    if (head == "at") {
      const Token& w = expect_symbol("'start' or 'end'");
      const std::string when = lowercase(w.text);
      if (when == "start") {
        tc.when = TimeSpec::AtStart;
      } else if (when == "end") {
        tc.when = TimeSpec::AtEnd;
      } else {
        fail(w, "'start' or 'end'");
      }
    } else if (head == "over") {
      const Token& w = expect_symbol("'all'");
      if (lowercase(w.text) != "all") fail(w, "'all'");
      tc.when = TimeSpec::OverAll;
    } else {
      fail(t, "time specifier 'at start', 'at end' or 'over all'");
    }
    tc.condition = condition();
    expect_close();
    return tc;
  }

  std::vector<TimedEffect> timed_effects() {
    std::vector<TimedEffect> out;
    expect_open();
    if (peek_close()) {
      next();
      return out;
    }
    if (peek_symbol("and")) {
      next();
      while (peek_open()) {
        expect_open();
        out.push_back(timed_effect_body());
      }
      expect_close();
      return out;
    }
    out.push_back(timed_effect_body());
    return out;
  }

  TimedEffect timed_effect_body() {
    TimedEffect te;
    const Token& t = expect_symbol("'at start' or 'at end'");
    if (lowercase(t.text) != "at") fail(t, "effect time specifier 'at start' or 'at end'");
    const Token& w = expect_symbol("'start' or 'end'");
    const std::string when = lowercase(w.text);
    if (when == "start") {
      te.when = TimeSpec::AtStart;
    } else if (when == "end") {
      te.when = TimeSpec::AtEnd;
    } else {
      fail(w, "'start' or 'end'");
    }
    te.effect = effect();
    expect_close();
    return te;
  }

  static std::optional<CompareOp> comparison_op(const std::string& s) {
    if (s == "<") return CompareOp::Less;
    if (s == "<=") return CompareOp::LessEqual;
    if (s == ">") return CompareOp::Greater;
    if (s == ">=") return CompareOp::GreaterEqual;
    if (s == "=") return CompareOp::Equal;
    return std::nullopt;
  }

  Condition condition() {
    expect_open();
    const Token& head = expect_symbol("predicate, 'not' or comparison");
    if (auto op = comparison_op(head.text)) {
      NumericComparison nc;
      nc.op = *op;
      nc.lhs = expr();
      nc.rhs = expr();
      expect_close();
      return nc;
    }
    if (lowercase(head.text) == "not") {
      Literal lit{atom(), false};
      expect_close();
      return lit;
    }
    if (head.text.front() == '?' || head.text.front() == ':') fail(head, "predicate name");
    return Literal{atom_tail(head.text), true};
  }

  Effect effect() {
    expect_open();
    const Token& head = expect_symbol("effect");
    const std::string key = lowercase(head.text);
    if (key == "increase" || key == "decrease" || key == "assign") {
      NumericEffect ne;
      ne.op = key == "increase"   ? AssignOp::Increase
              : key == "decrease" ? AssignOp::Decrease
                                  : AssignOp::Assign;
      ne.fluent = fluent();
      ne.amount = expr();
      expect_close();
      return ne;
    }
    if (key == "not") {
      Literal lit{atom(), false};
      expect_close();
      return lit;
    }
    if (key == "at" || key == "over" || key == "and" || comparison_op(head.text)) {
      fail(head, "literal or numeric effect");
    }
    return Literal{atom_tail(head.text), true};
  }

  Atom atom() {
    expect_open();
    const Token& head = expect_symbol("predicate name");
    if (head.text.front() == '?' || head.text.front() == ':') fail(head, "predicate name");
    return atom_tail(head.text);
  }

  // Consumes arguments and the closing parenthesis.
  Atom atom_tail(const std::string& predicate) {
    Atom a{predicate, {}};
    while (peek().kind == Token::Kind::Symbol) {
      const Token& t = next();
      a.args.push_back(is_duration_var(t.text) ? "?duration" : t.text);
    }
    expect_close();
    return a;
  }

  FluentRef fluent() {
    expect_open();
    FluentRef f;
    const Token& head = expect_symbol("function name");
    if (head.text.front() == '?' || head.text.front() == ':') fail(head, "function name");
    f.function = head.text;
    while (peek().kind == Token::Kind::Symbol) {
      const Token& t = next();
      f.args.push_back(is_duration_var(t.text) ? "?duration" : t.text);
    }
    expect_close();
    return f;
  }

  static std::optional<BinaryOp> binary_op(const std::string& s) {
    if (s == "+") return BinaryOp::Add;
    if (s == "-") return BinaryOp::Subtract;
    if (s == "*") return BinaryOp::Multiply;
    if (s == "/") return BinaryOp::Divide;
    return std::nullopt;
  }

  NumericExpr expr() {
    if (peek().kind == Token::Kind::Symbol) {
      const Token& t = next();
      if (is_duration_var(t.text)) return NumericExpr::duration();
      if (auto v = parse_number(t.text)) return NumericExpr::constant(*v);
      fail(t, "number, ?duration or parenthesised expression");
    }
    if (!peek_open()) fail(peek(), "numeric expression");
    const Token& head = tokens_[pos_ + 1];
    if (head.kind == Token::Kind::Symbol) {
      if (auto op = binary_op(head.text)) {
        next();
        next();
        NumericExpr lhs = expr();
        NumericExpr rhs = expr();
        expect_close();
        return NumericExpr::binary(*op, std::move(lhs), std::move(rhs));
      }
    }
    return NumericExpr::fluent_ref(fluent());
  }

  void init_element(Problem& p) {
    if (peek_head() == "=") {
      expect_open();
      next();
      FluentRef f = fluent();
      const Token& num = expect_symbol("number");
      auto v = parse_number(num.text);
      if (!v) fail(num, "number");
      expect_close();
      p.init_fluents.emplace_back(std::move(f), *v);
      return;
    }
    p.init_facts.push_back(atom());
  }

  std::vector<Condition> goal() {
    std::vector<Condition> out;
    if (peek_head() == "and") {
      expect_open();
      next();
      while (peek_open()) out.push_back(condition());
      expect_close();
      return out;
    }
    out.push_back(condition());
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Domain parse_domain(std::string_view text) { return Parser(text).domain(); }

Problem parse_problem(std::string_view text, const Domain& domain) {
  return Parser(text).problem(domain);
}

}  // namespace emoplan::pddl
