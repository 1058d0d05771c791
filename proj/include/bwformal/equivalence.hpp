#pragma once

#include <set>
#include <string>
#include <vector>

#include "bwformal/blocks.hpp"
#include "bwformal/pddl.hpp"

namespace bwformal {

struct DiffReport {
  bool match = false;
  std::set<Atom> missing_init;
  std::set<Atom> extra_init;
  std::set<Atom> missing_goal;
  std::set<Atom> extra_goal;
  std::vector<ProblemDefectNote> object_defects;    // on the candidate
  std::vector<StateDefectNote> structural_defects;  // candidate init + goal
  // Informational: object sets compared candidate vs truth. Extra declared
  // but unused objects do not break the match.
  std::set<std::string> objects_missing;
  std::set<std::string> objects_extra;

  std::string to_json() const;
};

/// Exact set comparison after canonical normalization. match is true iff
/// all four atom differences are empty and the candidate has no object or
/// structural defects. Equivalence is equality, not entailment: omitting a
/// derivable atom is a mismatch.
DiffReport diff_problems(const ProblemModel& candidate,
                         const ProblemModel& truth);

struct CategoryFlags {
  bool missing_init = false;
  bool extra_init = false;
  bool missing_goal = false;
  bool extra_goal = false;

  bool operator==(const CategoryFlags&) const = default;
  bool any() const {
    return missing_init || extra_init || missing_goal || extra_goal;
  }
};

/// The four-way error taxonomy; several flags may be set at once.
CategoryFlags classify(const DiffReport& report);

}  // namespace bwformal
