#include "bwformal/blocks.hpp"

#include <algorithm>
#include <map>

namespace bwformal {

bool BlocksState::operator==(const BlocksState& o) const {
  if (holding != o.holding) return false;
  auto norm_blocks = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (norm_blocks(blocks) != norm_blocks(o.blocks)) return false;
  auto norm_stacks = [](std::vector<std::vector<std::string>> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return norm_stacks(stacks) == norm_stacks(o.stacks);
}

std::string to_string(StateDefect d) {
  switch (d) {
    case StateDefect::kUnknownPredicate: return "unknown-predicate";
    case StateDefect::kArityMismatch: return "arity-mismatch";
    case StateDefect::kDanglingObject: return "dangling-object";
    case StateDefect::kSelfRelation: return "self-relation";
    case StateDefect::kMultipleSupport: return "multiple-support";
    case StateDefect::kMissingSupport: return "missing-support";
    case StateDefect::kOnCycle: return "on-cycle";
    case StateDefect::kClearOnCovered: return "clear-on-covered";
    case StateDefect::kMissingClear: return "missing-clear";
    case StateDefect::kArmConflict: return "arm-conflict";
    case StateDefect::kArmMissing: return "arm-missing";
  }
  return "?";
}

bool StateCheck::has(StateDefect code) const {
  for (const auto& note : defects)
    if (note.code == code) return true;
  return false;
}

StateCheck atoms_to_state(const std::set<Atom>& atoms,
                          const std::vector<std::string>& universe,
                          AtomCheckMode mode) {
  StateCheck out;
  auto defect = [&](StateDefect code, std::string detail) {
    out.defects.push_back({code, std::move(detail)});
  };

  std::vector<std::string> blocks;  // deduped, declaration order
  std::set<std::string> known;
  for (const auto& b : universe)
    if (known.insert(b).second) blocks.push_back(b);

  static const std::map<std::string, int> kArity = {{"clear", 1},
                                                    {"on-table", 1},
                                                    {"arm-empty", 0},
                                                    {"holding", 1},
                                                    {"on", 2}};

  std::set<std::string> clear_set, table_set;
  std::vector<std::string> held;
  bool arm_empty = false;
  std::map<std::string, std::string> base_of;  // (on x y): x -> y
  std::map<std::string, std::vector<std::string>> riders;  // y -> [x...]

  for (const auto& atom : atoms) {
    auto it = kArity.find(atom.pred);
    if (it == kArity.end()) {
      defect(StateDefect::kUnknownPredicate, atom.to_text());
      continue;
    }
    if (static_cast<int>(atom.args.size()) != it->second) {
      defect(StateDefect::kArityMismatch, atom.to_text());
      continue;
    }
    bool dangling = false;
    for (const auto& arg : atom.args) {
      if (!known.count(arg)) {
        defect(StateDefect::kDanglingObject, atom.to_text());
        dangling = true;
        break;
      }
    }
    if (dangling) continue;
    if (atom.pred == "clear") {
      clear_set.insert(atom.args[0]);
    } else if (atom.pred == "on-table") {
      table_set.insert(atom.args[0]);
    } else if (atom.pred == "arm-empty") {
      arm_empty = true;
    } else if (atom.pred == "holding") {
      held.push_back(atom.args[0]);
    } else {
      if (atom.args[0] == atom.args[1]) {
        defect(StateDefect::kSelfRelation, atom.to_text());
        continue;
      }
      if (!base_of.emplace(atom.args[0], atom.args[1]).second) {
        defect(StateDefect::kMultipleSupport, atom.to_text());
        continue;
      }
      riders[atom.args[1]].push_back(atom.args[0]);
    }
  }

  std::set<std::string> held_set(held.begin(), held.end());

  // arm fluents
  if (held.size() > 1) {
    defect(StateDefect::kArmConflict, "more than one (holding ...)");
  } else if (arm_empty && !held.empty()) {
    defect(StateDefect::kArmConflict,
           "(arm-empty) together with (holding " + held[0] + ")");
  } else if (!arm_empty && held.empty() && mode == AtomCheckMode::kInit) {
    defect(StateDefect::kArmMissing, "neither (arm-empty) nor (holding ...)");
  }

  // support count per block
  for (const auto& b : blocks) {
    int supports = (base_of.count(b) ? 1 : 0) + (table_set.count(b) ? 1 : 0) +
                   (held_set.count(b) ? 1 : 0);
    if (supports > 1) {
      defect(StateDefect::kMultipleSupport,
             "block '" + b + "' has " + std::to_string(supports) +
                 " supports");
    } else if (supports == 0) {
      defect(StateDefect::kMissingSupport,
             "block '" + b + "' has no support");
    }
  }

  // two blocks resting on the same base, or resting on a held block
  for (const auto& [under, tops] : riders) {
    if (tops.size() > 1) {
      std::string detail = "blocks on '" + under + "':";
      for (const auto& t : tops) detail += " " + t;
      defect(StateDefect::kMultipleSupport, detail);
    }
    if (held_set.count(under)) {
      defect(StateDefect::kArmConflict,
             "(on " + tops[0] + " " + under + ") while holding '" + under +
                 "'");
    }
  }

  // clear consistency
  for (const auto& b : blocks) {
    bool covered = riders.count(b) && !riders.at(b).empty();
    bool is_held = held_set.count(b) != 0;
    if (clear_set.count(b)) {
      if (covered || is_held) {
        defect(StateDefect::kClearOnCovered, "(clear " + b + ")");
      }
    } else if (!covered && !is_held && mode == AtomCheckMode::kInit) {
      defect(StateDefect::kMissingClear, "block '" + b + "' is uncovered");
    }
  }

  // every support chain must bottom out at the table; with base_of
  // functional, anything else is a cycle once missing supports are excluded
  std::set<std::string> grounded(table_set.begin(), table_set.end());
  std::vector<std::string> frontier(table_set.begin(), table_set.end());
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    auto it = riders.find(cur);
    if (it == riders.end()) continue;
    for (const auto& r : it->second) {
      if (grounded.insert(r).second) frontier.push_back(r);
    }
  }
  std::set<std::string> cyclic;
  for (const auto& [b, under] : base_of) {
    if (grounded.count(b) || held_set.count(b)) continue;
    // walk down; anything that never reaches the table without passing a
    // missing-support gap is on a cycle
    std::string cur = b;
    std::set<std::string> path;
    bool gap = false;
    while (true) {
      if (!path.insert(cur).second) break;  // looped
      auto next = base_of.find(cur);
      if (next == base_of.end()) {
        gap = !table_set.count(cur) && !held_set.count(cur);
        break;
      }
      cur = next->second;
    }
    if (!gap && !grounded.count(cur)) cyclic.insert(b);
  }
  if (!cyclic.empty()) {
    std::string detail = "blocks on a cycle:";
    for (const auto& b : cyclic) detail += " " + b;
    defect(StateDefect::kOnCycle, detail);
  }

  if (!out.defects.empty()) return out;

  BlocksState state;
  state.blocks = blocks;
  if (!held.empty()) state.holding = held[0];
  // deterministic stack order: by base position in the universe
  std::vector<std::string> bases(table_set.begin(), table_set.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < blocks.size(); ++i) pos[blocks[i]] = i;
  std::sort(bases.begin(), bases.end(),
            [&](const std::string& a, const std::string& b) {
              return pos[a] < pos[b];
            });
  for (const auto& base : bases) {
    std::vector<std::string> stack = {base};
    std::string cur = base;
    while (true) {
      auto it = riders.find(cur);
      if (it == riders.end()) break;
      cur = it->second[0];
      stack.push_back(cur);
    }
    std::reverse(stack.begin(), stack.end());  // stored top -> bottom
    state.stacks.push_back(std::move(stack));
  }
  out.state = std::move(state);
  return out;
}

std::set<Atom> state_to_atoms(const BlocksState& state) {
  std::set<Atom> atoms = support_atoms(state);
  for (const auto& stack : state.stacks) {
    atoms.insert({"clear", {stack.front()}});
  }
  if (!state.holding) atoms.insert({"arm-empty", {}});
  return atoms;
}

BlocksState odd_even_state(int n) {
  BlocksState state;
  std::vector<std::string> odds, evens;
  for (int i = 1; i <= n; ++i) {
    std::string name = "block" + std::to_string(i);
    state.blocks.push_back(name);
    (i % 2 == 1 ? odds : evens).push_back(std::move(name));
  }
  if (!odds.empty()) state.stacks.push_back(std::move(odds));
  if (!evens.empty()) state.stacks.push_back(std::move(evens));
  return state;
}

std::set<Atom> support_atoms(const BlocksState& state) {
  std::set<Atom> atoms;
  for (const auto& stack : state.stacks) {
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) {
      atoms.insert({"on", {stack[i], stack[i + 1]}});
    }
    atoms.insert({"on-table", {stack.back()}});
  }
  if (state.holding) atoms.insert({"holding", {*state.holding}});
  return atoms;
}

}  // namespace bwformal
