#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "bwformal/blocks.hpp"
#include "bwformal/plan.hpp"

namespace bwformal {

/// Thrown when a problem's init or goal fails the state checks; carries the
/// defect notes.
class IllFormedProblem : public std::runtime_error {
 public:
  IllFormedProblem(std::string what, std::vector<StateDefectNote> defects)
      : std::runtime_error(std::move(what)), defects_(std::move(defects)) {}
  const std::vector<StateDefectNote>& defects() const { return defects_; }

 private:
  std::vector<StateDefectNote> defects_;
};

/// Unstack-all-then-build: every block not already in its final position
/// (checked from the table up) is parked on the table, then goal stacks are
/// assembled bottom-up. Length <= 4n; empty exactly when init already
/// satisfies the goal.
Plan solve_heuristic(const ProblemModel& problem);

struct BfsResult {
  std::optional<Plan> plan;  // empty <=> budget exhausted
  std::size_t expanded = 0;
};

/// Breadth-first search with state deduplication; returns a shortest plan.
/// Intended for small n.
BfsResult solve_optimal_bfs(const ProblemModel& problem,
                            std::size_t state_budget = 2'000'000);

struct ExternalPlannerConfig {
  /// Placeholders {domain}, {problem}, {output} are substituted. When
  /// {output} is absent the plan is read from stdout.
  std::string command_template;
  std::chrono::milliseconds timeout{60'000};
};

struct ExternalResult {
  enum class Status { kOk, kSpawnFailed, kNonzeroExit, kTimeout, kUnparseable };
  Status status = Status::kSpawnFailed;
  std::optional<Plan> plan;
  int exit_code = -1;
  std::string detail;
};

std::string to_string(ExternalResult::Status s);

/// Runs an external planner command in its own scratch directory.
ExternalResult solve_external(const std::filesystem::path& domain_path,
                              const std::filesystem::path& problem_path,
                              const ExternalPlannerConfig& config);

}  // namespace bwformal
