#pragma once

#include <map>
#include <string>
#include <vector>

#include "bwformal/record.hpp"

namespace bwformal {

struct BucketStats {
  int total = 0;
  int valid = 0;
  double accuracy_pct = 0.0;       // valid / total * 100
  double avg_plan_length = 0.0;    // over records that carry one
  int plan_length_count = 0;
};

struct CategoryStats {
  int failures = 0;
  double missing_init_pct = 0.0;  // over failing records; may sum > 100
  double extra_init_pct = 0.0;
  double missing_goal_pct = 0.0;
  double extra_goal_pct = 0.0;
};

struct Report {
  // (strategy, n) -> stats, deterministically ordered.
  std::map<std::pair<std::string, int>, BucketStats> buckets;
  std::map<std::string, CategoryStats> categories;  // per strategy
};

/// Deterministic aggregation (records are sorted internally). Throws
/// std::invalid_argument on an empty record set.
Report aggregate(const std::vector<EvalRecord>& records);

std::string render_table(const Report& report);

/// Long-form CSV, one row per (strategy, n): the x/y series for
/// accuracy-vs-blocks plots.
std::string render_csv(const Report& report);

}  // namespace bwformal
