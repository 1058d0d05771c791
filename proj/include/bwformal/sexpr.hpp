#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bwformal {

/// Parse failure with the byte offset of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Either a single token or a list of children. Symbols are
/// lowercase-normalized during lexing; `offset` is the byte position of the
/// node in the original text.
struct SExpr {
  bool is_atom = false;
  std::string token;            // set when is_atom
  std::vector<SExpr> children;  // set when !is_atom
  std::size_t offset = 0;

  static SExpr atom(std::string tok, std::size_t off = 0);
  static SExpr list(std::vector<SExpr> kids, std::size_t off = 0);
};

/// Parses all top-level forms. Comments (';' to end of line) are stripped,
/// commas are treated as whitespace. Throws ParseError on unbalanced
/// parentheses.
std::vector<SExpr> parse_sexprs(const std::string& text);

/// Like parse_sexprs but ignores unmatched trailing ')' tokens, for model
/// output fragments that arrive with stray closers.
std::vector<SExpr> parse_sexprs_lenient(const std::string& text);

/// Renders a node back to text, single line.
std::string to_text(const SExpr& e);

}  // namespace bwformal
