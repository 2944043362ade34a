#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emoplan::pddl::detail {

struct Token {
  enum class Kind { Open, Close, Symbol, End };

  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Splits PDDL text into parentheses and symbols. `;` starts a comment that
// runs to end of line. Throws SyntaxError on a `)` with no matching `(`.
std::vector<Token> tokenize(std::string_view text);

std::string lowercase(std::string_view s);

}  // namespace emoplan::pddl::detail
