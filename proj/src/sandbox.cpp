#include "bwformal/sandbox.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>

#include "bwformal/subprocess.hpp"

namespace bwformal {

std::string to_string(SandboxResult::Status s) {
  switch (s) {
    case SandboxResult::Status::kOk: return "ok";
    case SandboxResult::Status::kSpawnFailed: return "spawn-failed";
    case SandboxResult::Status::kTimeout: return "timeout";
    case SandboxResult::Status::kNonzeroExit: return "nonzero-exit";
    case SandboxResult::Status::kMissingOutput: return "missing-output";
  }
  return "?";
}

SandboxConfig default_sandbox_config(const std::filesystem::path& asset_dir) {
  SandboxConfig config;
  config.interpreter_template =
      "python3 " + (asset_dir / "sandbox_runner.py").string() + " {program}";
  return config;
}

namespace {

void replace_all(std::string& text, const std::string& needle,
                 const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
}

}  // namespace

SandboxResult run_generated_program(const std::string& program_source,
                                    const SandboxConfig& config) {
  SandboxResult result;
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::path scratch =
      std::filesystem::temp_directory_path(ec) /
      ("bwformal-sbx-" + std::to_string(::getpid()) + "-" +
       std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(scratch, ec);
  if (ec) return result;

  {
    std::ofstream out(scratch / config.program_filename, std::ios::binary);
    if (!out) return result;
    out << program_source;
  }

  std::string command = config.interpreter_template;
  replace_all(command, "{program}", config.program_filename);

  RunSpec spec;
  spec.argv = split_command(command);
  spec.cwd = scratch;
  spec.timeout = config.wall_limit;
  spec.fsize_limit_bytes = config.output_cap_bytes;
  spec.scrub_env = true;
  spec.env_extra = {{"PYTHONDONTWRITEBYTECODE", "1"},
                    {"PYTHONIOENCODING", "utf-8"}};
  RunResult run = run_process(spec);

  result.stdout_text = run.out;
  result.stderr_text = run.err;
  result.wall_ms = run.wall_ms;
  result.exit_code = run.exit_code;

  switch (run.status) {
    case RunResult::Status::kSpawnFailed:
      result.status = SandboxResult::Status::kSpawnFailed;
      break;
    case RunResult::Status::kTimeout:
      result.status = SandboxResult::Status::kTimeout;
      break;
    case RunResult::Status::kSignaled:
      result.status = SandboxResult::Status::kNonzeroExit;
      result.exit_code = 128 + run.term_signal;
      break;
    case RunResult::Status::kExited:
      if (run.exit_code != 0) {
        result.status = SandboxResult::Status::kNonzeroExit;
      } else {
        std::ifstream in(scratch / config.output_filename, std::ios::binary);
        if (!in) {
          result.status = SandboxResult::Status::kMissingOutput;
        } else {
          result.output_text.assign((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
          result.status = SandboxResult::Status::kOk;
        }
      }
      break;
  }

  if (config.keep_workdir) {
    result.workdir = scratch;
  } else {
    std::filesystem::remove_all(scratch, ec);
  }
  return result;
}

}  // namespace bwformal
