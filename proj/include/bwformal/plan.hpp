#pragma once

#include <string>
#include <vector>

#include "bwformal/sexpr.hpp"

namespace bwformal {

struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  bool operator==(const GroundAction&) const = default;
  std::string to_text() const;
};

struct Plan {
  std::vector<GroundAction> steps;

  std::size_t size() const { return steps.size(); }
  bool operator==(const Plan&) const = default;
};

class PlanParseError : public std::runtime_error {
 public:
  PlanParseError(const std::string& message, std::size_t line)
      : std::runtime_error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One "(name arg ...)" per line; blank lines and ';' comment lines are
/// skipped. Step numbers, timestamps, or any other prefix make the line
/// malformed (reported with its 1-based line number).
Plan parse_plan(const std::string& text);

std::string print_plan(const Plan& plan);

}  // namespace bwformal
