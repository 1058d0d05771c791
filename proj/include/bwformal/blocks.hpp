#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bwformal/pddl.hpp"

namespace bwformal {

/// Semantic state: stacks are stored top -> bottom, every block appears
/// exactly once across stacks and the holding slot, and no stack is empty.
struct BlocksState {
  std::vector<std::vector<std::string>> stacks;  // each top -> bottom
  std::optional<std::string> holding;
  std::vector<std::string> blocks;  // universe, declaration order

  bool operator==(const BlocksState& o) const;
  std::size_t stack_count() const { return stacks.size(); }
};

enum class StateDefect {
  kUnknownPredicate,
  kArityMismatch,
  kDanglingObject,   // atom references an object outside the universe
  kSelfRelation,     // (on x x)
  kMultipleSupport,  // a block with two supports, or two blocks on one base
  kMissingSupport,   // a block with no support that is not held
  kOnCycle,          // the on-chain never reaches the table
  kClearOnCovered,   // clear asserted on a covered or held block
  kMissingClear,     // an uncovered block without a clear atom
  kArmConflict,      // arm-empty together with holding, or two holdings
  kArmMissing,       // neither arm-empty nor holding
};

std::string to_string(StateDefect d);

struct StateDefectNote {
  StateDefect code;
  std::string detail;
};

struct StateCheck {
  std::optional<BlocksState> state;  // set iff defects is empty
  std::vector<StateDefectNote> defects;

  bool ok() const { return defects.empty(); }
  bool has(StateDefect code) const;
};

/// kInit demands a complete description: clear iff uncovered, exactly one
/// arm fluent. kGoal accepts support relations only (clear/arm optional but
/// checked for consistency when present).
enum class AtomCheckMode { kInit, kGoal };

/// Rebuilds stacks by chaining `on` atoms from each clear top down to an
/// `on-table` base. Every violation is reported as a distinct defect code;
/// the state is only produced when there are none.
StateCheck atoms_to_state(const std::set<Atom>& atoms,
                          const std::vector<std::string>& universe,
                          AtomCheckMode mode = AtomCheckMode::kInit);

/// Exact inverse of atoms_to_state: clear for each top, on-table for each
/// base, on for adjacent pairs, plus the arm fluent.
std::set<Atom> state_to_atoms(const BlocksState& state);

/// Support relations only: one `on` or `on-table` atom per block (plus
/// `holding` when a block is held). This is the goal vocabulary.
std::set<Atom> support_atoms(const BlocksState& state);

/// blocks 1..n split into an odd stack and an even stack, numbers
/// increasing from top to bottom, arm empty.
BlocksState odd_even_state(int n);

}  // namespace bwformal
