#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

namespace bwformal {

struct SandboxConfig {
  /// Command line launching the program; {program} is replaced by the
  /// program file name (relative to the scratch directory). The default
  /// wraps CPython with an audit-hook guard that denies writes outside the
  /// scratch directory and any socket use.
  std::string interpreter_template;
  std::string program_filename = "generator.py";
  std::string output_filename = "problem.pddl";
  std::chrono::milliseconds wall_limit{30'000};
  std::uint64_t output_cap_bytes = 256ull * 1024 * 1024;
  bool keep_workdir = false;  // leave the scratch directory for inspection
};

/// interpreter_template pointing at the guarded python runner under
/// `asset_dir`.
SandboxConfig default_sandbox_config(const std::filesystem::path& asset_dir);

struct SandboxResult {
  enum class Status {
    kOk,
    kSpawnFailed,
    kTimeout,
    kNonzeroExit,
    kMissingOutput,
  };
  Status status = Status::kSpawnFailed;
  int exit_code = -1;
  std::string output_text;  // contents of output_filename on kOk
  std::string stdout_text;
  std::string stderr_text;
  double wall_ms = 0.0;
  std::filesystem::path workdir;  // valid when keep_workdir was set
};

std::string to_string(SandboxResult::Status s);

/// Writes the program into a fresh scratch directory and executes it there
/// with a wall-clock kill, a file-size rlimit, and a scrubbed environment.
SandboxResult run_generated_program(const std::string& program_source,
                                    const SandboxConfig& config);

}  // namespace bwformal
