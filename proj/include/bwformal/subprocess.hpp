#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bwformal {

struct RunSpec {
  std::vector<std::string> argv;  // argv[0] resolved via PATH
  std::optional<std::filesystem::path> cwd;
  std::chrono::milliseconds timeout{0};  // 0 = unlimited
  std::optional<std::uint64_t> fsize_limit_bytes;  // RLIMIT_FSIZE in child
  bool scrub_env = false;  // keep only PATH (plus env_extra)
  std::map<std::string, std::string> env_extra;
};

struct RunResult {
  enum class Status { kExited, kSignaled, kTimeout, kSpawnFailed };
  Status status = Status::kSpawnFailed;
  int exit_code = -1;
  int term_signal = 0;
  std::string out;
  std::string err;
  double wall_ms = 0.0;

  bool exited_zero() const {
    return status == Status::kExited && exit_code == 0;
  }
};

/// fork/exec with piped stdout/stderr. The child gets its own process
/// group; on timeout the whole group is killed.
RunResult run_process(const RunSpec& spec);

/// Splits a shell-ish command string on whitespace, honoring single and
/// double quotes. No variable expansion.
std::vector<std::string> split_command(const std::string& command);

}  // namespace bwformal
