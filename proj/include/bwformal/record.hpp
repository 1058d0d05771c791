#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bwformal/dataset.hpp"
#include "bwformal/equivalence.hpp"

namespace bwformal {

enum class Strategy { kPlanner, kFormalizer, kDnc, kHigherOrder };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

enum class FailureCause {
  kNone,
  kBackend,            // backend error after retries
  kExtraction,         // expected tag absent or unclosed
  kPlanParse,          // malformed plan text
  kPlanInvalid,        // plan simulation failed
  kPddlParse,          // candidate problem file does not parse
  kMismatch,           // candidate differs from ground truth
  kHeaderExtraction,   // divide-and-conquer header call failed
  kSandboxTimeout,
  kSandboxExit,        // generated program exited nonzero
  kSandboxMissingOutput,
  kGuardRejected,      // generated program had no loop construct
};

std::string to_string(FailureCause c);

/// One artifact kept alongside the records (raw prompt/response bodies,
/// consolidated files, generated programs).
struct Artifact {
  std::string relpath;
  std::string content;
};

struct EvalRecord {
  std::string run_id;
  std::string instance_id;
  Family family = Family::kXxl;
  int n = 0;
  Strategy strategy = Strategy::kPlanner;
  std::string backend_id;
  bool valid = false;
  FailureCause cause = FailureCause::kNone;
  CategoryFlags flags;
  std::optional<int> plan_length;
  std::optional<bool> end_to_end_valid;  // formalizer cross-check
  double compression_ratio = 0.0;
  double wall_ms = 0.0;
  std::vector<std::string> artifact_paths;
  std::vector<std::string> events;  // e.g. multi-atom or dropped facts

  std::string to_json_line() const;
  static EvalRecord from_json_line(const std::string& line);
};

}  // namespace bwformal
