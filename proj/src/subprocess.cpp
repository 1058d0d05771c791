#include "bwformal/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

extern char** environ;

namespace bwformal {

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  bool open() { return pipe(fds) == 0; }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
  ~Pipe() {
    close_read();
    close_write();
  }
};

std::vector<std::string> build_env(const RunSpec& spec) {
  std::vector<std::string> env;
  if (spec.scrub_env) {
    for (char** e = environ; *e; ++e) {
      if (std::strncmp(*e, "PATH=", 5) == 0 && !spec.env_extra.count("PATH")) {
        env.emplace_back(*e);
      }
    }
  } else {
    for (char** e = environ; *e; ++e) {
      std::string entry(*e);
      std::size_t eq = entry.find('=');
      if (eq != std::string::npos && spec.env_extra.count(entry.substr(0, eq)))
        continue;
      env.push_back(std::move(entry));
    }
  }
  for (const auto& [k, v] : spec.env_extra) env.push_back(k + "=" + v);
  return env;
}

}  // namespace

RunResult run_process(const RunSpec& spec) {
  RunResult result;
  if (spec.argv.empty()) return result;

  Pipe out_pipe, err_pipe, exec_pipe;
  if (!out_pipe.open() || !err_pipe.open() || !exec_pipe.open()) return result;
  // closes on successful exec, so any byte read back means exec failed
  fcntl(exec_pipe.fds[1], F_SETFD, FD_CLOEXEC);
  int devnull = ::open("/dev/null", O_RDONLY);

  std::vector<std::string> env_storage = build_env(spec);
  std::vector<char*> envp, argv;
  for (auto& e : env_storage) envp.push_back(e.data());
  envp.push_back(nullptr);
  std::vector<std::string> argv_storage = spec.argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);
  std::string cwd = spec.cwd ? spec.cwd->string() : "";

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    if (devnull >= 0) ::close(devnull);
    return result;
  }
  if (pid == 0) {
    setpgid(0, 0);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    dup2(out_pipe.fds[1], STDOUT_FILENO);
    dup2(err_pipe.fds[1], STDERR_FILENO);
    out_pipe.close_read();
    out_pipe.close_write();
    err_pipe.close_read();
    err_pipe.close_write();
    exec_pipe.close_read();
    auto bail = [&](int err) {
      (void)!write(exec_pipe.fds[1], &err, sizeof err);
      _exit(127);
    };
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) bail(errno);
    if (spec.fsize_limit_bytes) {
      rlimit lim{*spec.fsize_limit_bytes, *spec.fsize_limit_bytes};
      setrlimit(RLIMIT_FSIZE, &lim);
    }
    execvpe(argv[0], argv.data(), envp.data());
    bail(errno);
  }

  if (devnull >= 0) ::close(devnull);
  out_pipe.close_write();
  err_pipe.close_write();
  exec_pipe.close_write();

  bool timed_out = false;
  auto deadline = start + spec.timeout;
  bool out_done = false, err_done = false;
  char buf[4096];
  while (!out_done || !err_done) {
    pollfd fds[2];
    nfds_t nfds = 0;
    int out_idx = -1, err_idx = -1;
    if (!out_done) {
      out_idx = static_cast<int>(nfds);
      fds[nfds++] = {out_pipe.fds[0], POLLIN, 0};
    }
    if (!err_done) {
      err_idx = static_cast<int>(nfds);
      fds[nfds++] = {err_pipe.fds[0], POLLIN, 0};
    }
    int wait_ms = -1;
    if (spec.timeout.count() > 0 && !timed_out) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - std::chrono::steady_clock::now())
                      .count();
      wait_ms = left > 0 ? static_cast<int>(left) : 0;
    }
    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) {
      // deadline passed with no data; kill the whole process group
      timed_out = true;
      kill(-pid, SIGKILL);
      continue;
    }
    auto drain = [&](int idx, std::string& sink, bool& done) {
      if (idx < 0 || fds[idx].revents == 0) return;
      ssize_t got = read(fds[idx].fd, buf, sizeof buf);
      if (got > 0) {
        sink.append(buf, static_cast<std::size_t>(got));
      } else {
        done = true;
      }
    };
    drain(out_idx, result.out, out_done);
    drain(err_idx, result.err, err_done);
    if (spec.timeout.count() > 0 && !timed_out &&
        std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      kill(-pid, SIGKILL);
    }
  }

  int status = 0;
  waitpid(pid, &status, 0);
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  int exec_errno = 0;
  bool exec_failed =
      read(exec_pipe.fds[0], &exec_errno, sizeof exec_errno) > 0;
  if (exec_failed) {
    result.status = RunResult::Status::kSpawnFailed;
    if (result.err.empty()) result.err = std::strerror(exec_errno);
  } else if (timed_out) {
    result.status = RunResult::Status::kTimeout;
  } else if (WIFEXITED(status)) {
    result.status = RunResult::Status::kExited;
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.status = RunResult::Status::kSignaled;
    result.term_signal = WTERMSIG(status);
  }
  return result;
}

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> parts;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char c : command) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\n') {
      if (in_word) {
        parts.push_back(std::move(cur));
        cur.clear();
        in_word = false;
      }
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (in_word) parts.push_back(std::move(cur));
  return parts;
}

}  // namespace bwformal
