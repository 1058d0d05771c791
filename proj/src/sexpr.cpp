#include "bwformal/sexpr.hpp"

#include <cctype>

namespace bwformal {

SExpr SExpr::atom(std::string tok, std::size_t off) {
  SExpr e;
  e.is_atom = true;
  e.token = std::move(tok);
  e.offset = off;
  return e;
}

SExpr SExpr::list(std::vector<SExpr> kids, std::size_t off) {
  SExpr e;
  e.is_atom = false;
  e.children = std::move(kids);
  e.offset = off;
  return e;
}

namespace {

struct Token {
  std::string text;  // "(", ")" or a symbol, lowercased
  std::size_t offset;
};

bool is_delim(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == ',';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ';') {  // comment to end of line
      while (i < n && text[i] != '\n') ++i;
    } else if (is_delim(c)) {
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({std::string(1, c), i});
      ++i;
    } else {
      std::size_t start = i;
      std::string sym;
      while (i < n && !is_delim(text[i]) && text[i] != '(' && text[i] != ')' &&
             text[i] != ';') {
        sym.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      tokens.push_back({std::move(sym), start});
    }
  }
  return tokens;
}

std::vector<SExpr> parse_tokens(const std::vector<Token>& tokens,
                                std::size_t end_offset, bool lenient) {
  std::vector<SExpr> roots;
  std::vector<SExpr> stack;  // open lists
  for (const Token& tok : tokens) {
    if (tok.text == "(") {
      stack.push_back(SExpr::list({}, tok.offset));
    } else if (tok.text == ")") {
      if (stack.empty()) {
        if (lenient) continue;
        throw ParseError("unbalanced ')'", tok.offset);
      }
      SExpr done = std::move(stack.back());
      stack.pop_back();
      if (stack.empty()) {
        roots.push_back(std::move(done));
      } else {
        stack.back().children.push_back(std::move(done));
      }
    } else {
      SExpr a = SExpr::atom(tok.text, tok.offset);
      if (stack.empty()) {
        roots.push_back(std::move(a));
      } else {
        stack.back().children.push_back(std::move(a));
      }
    }
  }
  if (!stack.empty()) {
    throw ParseError("unbalanced '(': " + std::to_string(stack.size()) +
                         " unclosed",
                     end_offset);
  }
  return roots;
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
  return parse_tokens(lex(text), text.size(), /*lenient=*/false);
}

std::vector<SExpr> parse_sexprs_lenient(const std::string& text) {
  return parse_tokens(lex(text), text.size(), /*lenient=*/true);
}

std::string to_text(const SExpr& e) {
  if (e.is_atom) return e.token;
  std::string out = "(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ' ';
    out += to_text(e.children[i]);
  }
  out += ')';
  return out;
}

}  // namespace bwformal
