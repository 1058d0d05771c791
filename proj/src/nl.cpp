#include "bwformal/nl.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>

namespace bwformal {

namespace {

constexpr std::string_view kItemizedLead = "As initial conditions I have that, ";
constexpr std::string_view kCompressedLead = "As initial conditions I have ";
constexpr std::string_view kGoalLead = "My goal is to have that ";

std::string block_name(int num) { return "block" + std::to_string(num); }

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

bool consume_int(std::string_view& s, int& out) {
  std::size_t i = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == 0) return false;
  out = std::stoi(std::string(s.substr(0, i)));
  s.remove_prefix(i);
  return true;
}

std::string join_clauses(std::string_view lead,
                         const std::vector<std::string>& clauses) {
  std::string out(lead);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i > 0) out += (i + 1 == clauses.size()) ? ", and " : ", ";
    out += clauses[i];
  }
  out += '.';
  return out;
}

int sort_key(const std::string& name) {
  int num = block_number(name);
  return num;
}

// clear, hand, on, on-table, each group ordered by block number
std::vector<std::string> init_clauses(const BlocksState& state) {
  std::vector<std::string> tops, bases;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& stack : state.stacks) {
    tops.push_back(stack.front());
    bases.push_back(stack.back());
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) {
      pairs.emplace_back(stack[i], stack[i + 1]);
    }
  }
  auto by_number = [](const std::string& a, const std::string& b) {
    return sort_key(a) < sort_key(b);
  };
  std::sort(tops.begin(), tops.end(), by_number);
  std::sort(bases.begin(), bases.end(), by_number);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return sort_key(a.first) < sort_key(b.first);
  });

  std::vector<std::string> clauses;
  for (const auto& b : tops) {
    clauses.push_back("block " + std::to_string(block_number(b)) +
                      " is clear");
  }
  if (state.holding) {
    clauses.push_back("the hand is holding block " +
                      std::to_string(block_number(*state.holding)));
  } else {
    clauses.push_back("the hand is empty");
  }
  for (const auto& [top, under] : pairs) {
    clauses.push_back("block " + std::to_string(block_number(top)) +
                      " is on top of block " +
                      std::to_string(block_number(under)));
  }
  for (const auto& b : bases) {
    clauses.push_back("block " + std::to_string(block_number(b)) +
                      " is on the table");
  }
  return clauses;
}

std::vector<std::string> goal_clauses(const BlocksState& goal) {
  std::vector<std::string> bases;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& stack : goal.stacks) {
    bases.push_back(stack.back());
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) {
      pairs.emplace_back(stack[i], stack[i + 1]);
    }
  }
  auto by_number = [](const std::string& a, const std::string& b) {
    return sort_key(a) < sort_key(b);
  };
  std::sort(bases.begin(), bases.end(), by_number);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return sort_key(a.first) < sort_key(b.first);
  });

  std::vector<std::string> clauses;
  for (const auto& [top, under] : pairs) {
    clauses.push_back("block " + std::to_string(block_number(top)) +
                      " is on top of block " +
                      std::to_string(block_number(under)));
  }
  for (const auto& b : bases) {
    clauses.push_back("block " + std::to_string(block_number(b)) +
                      " is on the table");
  }
  return clauses;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

bool is_compressed_init(const std::string& line) {
  std::string_view s(line);
  return consume(s, kCompressedLead) && !s.empty() && s[0] >= '0' &&
         s[0] <= '9';
}

// "block 1 is clear, the hand is empty, ..., and block 2 is on the table"
std::vector<std::string> split_itemized(std::string_view body) {
  std::vector<std::string> clauses;
  while (!body.empty()) {
    std::size_t comma = body.find(", ");
    std::string_view piece =
        comma == std::string_view::npos ? body : body.substr(0, comma);
    consume(piece, "and ");
    if (!piece.empty()) clauses.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 2);
  }
  return clauses;
}

std::vector<NlClause> segment_line(const std::string& line) {
  std::vector<NlClause> out;
  std::string_view s(line);
  if (consume(s, kItemizedLead)) {
    if (!s.empty() && s.back() == '.') s.remove_suffix(1);
    for (auto& clause : split_itemized(s)) {
      out.push_back({std::move(clause), false});
    }
  } else if (is_compressed_init(line)) {
    out.push_back({line, false});
  } else if (consume(s, kGoalLead)) {
    if (!s.empty() && s.back() == '.') s.remove_suffix(1);
    for (auto& clause : split_itemized(s)) {
      out.push_back({std::move(clause), true});
    }
  } else {
    throw std::runtime_error("unrecognized description line: " + line);
  }
  return out;
}

}  // namespace

std::string render_itemized_init(const BlocksState& state) {
  return join_clauses(kItemizedLead, init_clauses(state));
}

std::string render_compressed_init(int n) {
  std::string count = std::to_string(n);
  return "As initial conditions I have " + count + " blocks numbered 1 to " +
         count +
         ". All the odd numbered blocks are on one stack, with increasing "
         "numbering from top to bottom. Same for the even numbered blocks on "
         "another stack.";
}

std::string render_goal(const BlocksState& goal) {
  return join_clauses(kGoalLead, goal_clauses(goal));
}

std::vector<NlClause> segment_clauses(const std::string& description) {
  std::vector<NlClause> out;
  for (const auto& line : split_lines(description)) {
    for (auto& clause : segment_line(line)) out.push_back(std::move(clause));
  }
  return out;
}

int count_init_clauses(const std::string& description) {
  for (const auto& line : split_lines(description)) {
    if (is_compressed_init(line)) return 2;  // the two stack-rule sentences
  }
  int count = 0;
  for (const auto& clause : segment_clauses(description)) {
    if (!clause.is_goal) ++count;
  }
  return count;
}

int count_goal_clauses(const std::string& description) {
  int count = 0;
  for (const auto& clause : segment_clauses(description)) {
    if (clause.is_goal) ++count;
  }
  return count;
}

std::set<Atom> clause_to_atoms(const std::string& clause) {
  std::string_view s(clause);
  if (clause == "the hand is empty") return {{"arm-empty", {}}};
  if (consume(s, "the hand is holding block ")) {
    int num = 0;
    if (consume_int(s, num) && s.empty()) {
      return {{"holding", {block_name(num)}}};
    }
  } else if (consume(s, kCompressedLead)) {
    int n = 0, again = 0;
    if (consume_int(s, n) && consume(s, " blocks numbered 1 to ") &&
        consume_int(s, again) && n == again) {
      return state_to_atoms(odd_even_state(n));
    }
  } else if (consume(s, "block ")) {
    int first = 0;
    if (consume_int(s, first)) {
      if (s == " is clear") return {{"clear", {block_name(first)}}};
      if (s == " is on the table") return {{"on-table", {block_name(first)}}};
      if (consume(s, " is on top of block ")) {
        int second = 0;
        if (consume_int(s, second) && s.empty()) {
          return {{"on", {block_name(first), block_name(second)}}};
        }
      }
    }
  }
  throw std::runtime_error("unrecognized clause: " + clause);
}

ParsedNl parse_nl_description(const std::string& description) {
  ParsedNl parsed;
  for (const auto& clause : segment_clauses(description)) {
    auto atoms = clause_to_atoms(clause.text);
    auto& target = clause.is_goal ? parsed.goal : parsed.init;
    for (auto& atom : atoms) {
      for (const auto& arg : atom.args) {
        parsed.n = std::max(parsed.n, block_number(arg));
      }
      target.insert(atom);
    }
  }
  return parsed;
}

int block_number(const std::string& name) {
  std::string_view s(name);
  if (!consume(s, "block") || s.empty()) return -1;
  for (char c : s) {
    if (c < '0' || c > '9') return -1;
  }
  return std::stoi(std::string(s));
}

}  // namespace bwformal
