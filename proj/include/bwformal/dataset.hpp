#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bwformal/blocks.hpp"
#include "bwformal/pddl.hpp"
#include "bwformal/rng.hpp"

namespace bwformal {

enum class Family { kXxl, kUnravel };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct ProblemInstance {
  std::string id;
  Family family = Family::kXxl;
  int n = 0;
  std::uint64_t seed = 0;
  std::string nl_description;
  ProblemModel ground_truth;
  int nl_init_clauses = 0;
  int nl_goal_clauses = 0;
  int pddl_init_atoms = 0;
  int pddl_goal_atoms = 0;

  /// (init + goal PDDL fact lines) / (init + goal NL clauses).
  double compression_ratio() const;
  /// init-only ratio; grows linearly with n for the compressed family.
  double init_compression_ratio() const;
};

/// A random arrangement of blocks 1..n into stacks, arm empty: block order
/// is shuffled, then each block lands on an existing stack top or starts a
/// new stack.
BlocksState random_state(int n, Rng& rng);

/// Random initial and goal stacks, both rendered with the itemized
/// template. Same (n, seed) gives byte-identical output.
ProblemInstance gen_xxl(int n, std::uint64_t seed, std::string id = "");

/// Odd/even two-stack init (increasing numbers top to bottom) rendered
/// with the compressed template; goal is a fresh random arrangement
/// rendered clause by clause. Requires n >= 2.
ProblemInstance gen_unravel(int n, std::uint64_t seed, std::string id = "");

struct SuiteSpec {
  Family family = Family::kXxl;
  std::vector<std::pair<int, int>> buckets;  // (block count, instances)
};

/// 40 instances at each of n = 5, 30, 50, 75, 100 (200 total).
SuiteSpec default_suite(Family family);

/// Per-instance seeds derive from (seed, id) only, so generation order is
/// irrelevant. Ids are p001, p002, ... in bucket order.
std::vector<ProblemInstance> gen_suite(const SuiteSpec& spec,
                                       std::uint64_t seed);

/// Writes domain.pddl, domain.nl, pNNN.nl / pNNN.pddl per instance, and
/// manifest.json (id, family, n, seed, compression_ratio per entry).
/// UTF-8, LF line endings. Throws on unwritable directories and duplicate
/// ids.
void write_suite(const std::vector<ProblemInstance>& instances,
                 Family family, std::uint64_t seed,
                 const std::filesystem::path& dir);

/// Reads a directory produced by write_suite.
std::vector<ProblemInstance> load_suite(const std::filesystem::path& dir);

}  // namespace bwformal
