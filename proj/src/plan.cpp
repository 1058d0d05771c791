#include "bwformal/plan.hpp"

namespace bwformal {

std::string GroundAction::to_text() const {
  std::string out = "(" + name;
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  out += ')';
  return out;
}

Plan parse_plan(const std::string& text) {
  Plan plan;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    ++line_no;
    std::size_t next = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    std::size_t last = line.find_last_not_of(" \t\r");
    if (first == std::string::npos) {
      if (end == text.size()) break;
      start = next;
      continue;
    }
    line = line.substr(first, last - first + 1);
    if (line[0] == ';') {
      if (end == text.size()) break;
      start = next;
      continue;
    }
    if (line.front() != '(' || line.back() != ')') {
      throw PlanParseError("plan step must be a single (action args...)",
                           line_no);
    }

    std::vector<SExpr> parsed;
    try {
      parsed = parse_sexprs(line);
    } catch (const ParseError& e) {
      throw PlanParseError(e.what(), line_no);
    }
    if (parsed.size() != 1 || parsed[0].is_atom || parsed[0].children.empty()) {
      throw PlanParseError("plan step must be a single (action args...)",
                           line_no);
    }
    GroundAction action;
    for (std::size_t i = 0; i < parsed[0].children.size(); ++i) {
      const SExpr& part = parsed[0].children[i];
      if (!part.is_atom) {
        throw PlanParseError("nested lists are not valid in a plan step",
                             line_no);
      }
      if (i == 0) {
        action.name = part.token;
      } else {
        action.args.push_back(part.token);
      }
    }
    plan.steps.push_back(std::move(action));
    if (end == text.size()) break;
    start = next;
  }
  return plan;
}

std::string print_plan(const Plan& plan) {
  std::string out;
  for (const auto& step : plan.steps) {
    out += step.to_text();
    out += '\n';
  }
  return out;
}

}  // namespace bwformal
