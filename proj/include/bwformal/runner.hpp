#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bwformal/backend.hpp"
#include "bwformal/pipeline.hpp"
#include "bwformal/record.hpp"

namespace bwformal {

struct RunOptions {
  std::string run_id;
  std::filesystem::path run_dir;  // empty = in-memory only
  int jobs = 1;
  int limit = 0;  // 0 = all instances
};

/// Evaluates a suite under one strategy/backend. Records append to
/// records.jsonl in the run directory; instances already present there are
/// skipped, so interrupted runs resume without duplicates. Workers hand
/// results to a single writer thread that owns all file output.
std::vector<EvalRecord> run_suite(const std::vector<ProblemInstance>& suite,
                                  const HarnessContext& ctx, Backend& backend,
                                  const StrategyConfig& config,
                                  const RunOptions& options);

/// Loads records.jsonl from a run directory.
std::vector<EvalRecord> load_records(const std::filesystem::path& run_dir);

}  // namespace bwformal
