#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bwformal/pddl.hpp"
#include "bwformal/plan.hpp"

namespace bwformal {

enum class FailureReason {
  kNone,
  kUnknownAction,
  kArityMismatch,
  kPreconditionUnsatisfied,
  kGoalUnmet,
};

std::string to_string(FailureReason r);

struct Verdict {
  bool valid = false;
  std::optional<std::size_t> failure_step;
  FailureReason reason = FailureReason::kNone;
  std::vector<Atom> offending;  // unsatisfied precondition / unmet goal atoms
  std::set<Atom> final_state;

  std::string to_json() const;
};

/// Closed-world simulation from init: per step the schema is grounded with
/// exact arity, preconditions must hold, deletes apply before adds. The
/// goal is checked only after the last step. Failures are verdicts, never
/// exceptions.
Verdict validate(const DomainModel& domain, const ProblemModel& problem,
                 const Plan& plan);

}  // namespace bwformal
