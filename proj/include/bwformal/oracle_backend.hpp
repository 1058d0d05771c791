#pragma once

#include <memory>
#include <set>
#include <string>

#include "bwformal/backend.hpp"

namespace bwformal {

/// Scripted backend that answers every strategy prompt correctly by
/// parsing the problem description back out of the user message. Useful as
/// an end-to-end identity oracle: with it, every strategy should score
/// 100%.
std::unique_ptr<Backend> make_oracle_backend();

/// Corruption modes for targeted failure fixtures. Each mode produces
/// exactly one recorded failure cause.
enum class Corruption {
  kBackendError,        // complete() fails outright
  kNoTag,               // prose without the expected tag
  kUnclosedTag,         // open tag, no close
  kMalformedPlan,       // numbered plan lines
  kInvalidPlan,         // syntactically fine, semantically wrong
  kUnparseablePddl,     // problem file with broken parens
  kMissingGoalAtom,     // drops one goal atom
  kExtraInitAtom,       // adds a stray init atom
  kBadHeader,           // header reply without the header tag
  kFactWithSection,     // fact replies prefixed with (:init ...)
  kInfiniteLoopProgram, // generator that never terminates
  kCrashingProgram,     // generator exiting nonzero
  kNoOutputProgram,     // generator printing instead of writing the file
  kLooplessProgram,     // generator without any loop construct
};

std::string to_string(Corruption c);

/// Oracle wrapped with one corruption.
std::unique_ptr<Backend> make_corrupt_backend(Corruption corruption);

}  // namespace bwformal
