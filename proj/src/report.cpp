#include "bwformal/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bwformal {

Report aggregate(const std::vector<EvalRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("no records to aggregate");
  }
  Report report;
  struct CategoryCounts {
    int failures = 0;
    int missing_init = 0, extra_init = 0, missing_goal = 0, extra_goal = 0;
  };
  std::map<std::string, CategoryCounts> counts;

  for (const auto& record : records) {
    auto key = std::make_pair(to_string(record.strategy), record.n);
    BucketStats& bucket = report.buckets[key];
    bucket.total += 1;
    if (record.valid) bucket.valid += 1;
    if (record.plan_length) {
      bucket.avg_plan_length += *record.plan_length;
      bucket.plan_length_count += 1;
    }
    if (!record.valid) {
      CategoryCounts& c = counts[to_string(record.strategy)];
      c.failures += 1;
      if (record.flags.missing_init) c.missing_init += 1;
      if (record.flags.extra_init) c.extra_init += 1;
      if (record.flags.missing_goal) c.missing_goal += 1;
      if (record.flags.extra_goal) c.extra_goal += 1;
    }
  }
  for (auto& [key, bucket] : report.buckets) {
    bucket.accuracy_pct = 100.0 * bucket.valid / bucket.total;
    if (bucket.plan_length_count > 0) {
      bucket.avg_plan_length /= bucket.plan_length_count;
    }
  }
  for (const auto& [strategy, c] : counts) {
    CategoryStats stats;
    stats.failures = c.failures;
    if (c.failures > 0) {
      stats.missing_init_pct = 100.0 * c.missing_init / c.failures;
      stats.extra_init_pct = 100.0 * c.extra_init / c.failures;
      stats.missing_goal_pct = 100.0 * c.missing_goal / c.failures;
      stats.extra_goal_pct = 100.0 * c.extra_goal / c.failures;
    }
    report.categories[strategy] = stats;
  }
  return report;
}

std::string render_table(const Report& report) {
  std::ostringstream out;
  out << std::fixed;
  out << std::left << std::setw(14) << "strategy" << std::right << std::setw(6)
      << "n" << std::setw(8) << "total" << std::setw(8) << "valid"
      << std::setw(10) << "acc%" << std::setw(12) << "avg-plan" << "\n";
  out << std::string(58, '-') << "\n";
  for (const auto& [key, bucket] : report.buckets) {
    out << std::left << std::setw(14) << key.first << std::right
        << std::setw(6) << key.second << std::setw(8) << bucket.total
        << std::setw(8) << bucket.valid << std::setw(10)
        << std::setprecision(1) << bucket.accuracy_pct << std::setw(12);
    if (bucket.plan_length_count > 0) {
      out << std::setprecision(1) << bucket.avg_plan_length;
    } else {
      out << "-";
    }
    out << "\n";
  }
  if (!report.categories.empty()) {
    out << "\n";
    out << std::left << std::setw(14) << "strategy" << std::right
        << std::setw(10) << "failures" << std::setw(14) << "miss-init%"
        << std::setw(14) << "extra-init%" << std::setw(14) << "miss-goal%"
        << std::setw(14) << "extra-goal%" << "\n";
    out << std::string(80, '-') << "\n";
    for (const auto& [strategy, stats] : report.categories) {
      out << std::left << std::setw(14) << strategy << std::right
          << std::setw(10) << stats.failures << std::setw(14)
          << std::setprecision(1) << stats.missing_init_pct << std::setw(14)
          << stats.extra_init_pct << std::setw(14) << stats.missing_goal_pct
          << std::setw(14) << stats.extra_goal_pct << "\n";
    }
  }
  return out.str();
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "strategy,n,total,valid,accuracy_pct,avg_plan_length,"
         "plan_length_count\n";
  for (const auto& [key, bucket] : report.buckets) {
    out << key.first << ',' << key.second << ',' << bucket.total << ','
        << bucket.valid << ',' << bucket.accuracy_pct << ','
        << bucket.avg_plan_length << ',' << bucket.plan_length_count << "\n";
  }
  return out.str();
}

}  // namespace bwformal
