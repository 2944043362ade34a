#include "lexer.hpp"

#include <cctype>

#include "emoplan/pddl/errors.hpp"

namespace emoplan::pddl::detail {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  int depth = 0;
  std::size_t i = 0;

  auto advance = [&](char c) {
    ++i;
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') advance(text[i]);
      continue;
    }
    if (c == '(' || c == ')') {
      if (c == ')' && depth == 0) {
        throw SyntaxError(line, column, "end of input, found unbalanced ')'");
      }
      depth += (c == '(') ? 1 : -1;
      tokens.push_back({c == '(' ? Token::Kind::Open : Token::Kind::Close,
                        std::string(1, c), line, column});
      advance(c);
      continue;
    }
    Token tok{Token::Kind::Symbol, {}, line, column};
    while (i < text.size()) {
      const char d = text[i];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' ||
          d == ';') {
        break;
      }
      tok.text.push_back(d);
      advance(d);
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back({Token::Kind::End, "", line, column});
  return tokens;
}

}  // namespace emoplan::pddl::detail
