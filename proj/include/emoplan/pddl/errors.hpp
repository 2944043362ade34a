#pragma once

#include <stdexcept>
#include <string>

namespace emoplan::pddl {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed token stream. Line and column are 1-based.
class SyntaxError : public ParseError {
 public:
  SyntaxError(int line, int column, const std::string& expected)
      : ParseError(std::to_string(line) + ":" + std::to_string(column) +
                   ": syntax error: expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

// Well-formed text that violates the typing or naming rules of the fragment.
class SemanticError : public ParseError {
 public:
  explicit SemanticError(const std::string& what)
      : ParseError("semantic error: " + what) {}
};

}  // namespace emoplan::pddl
