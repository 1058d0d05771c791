#include "bwformal/runner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace bwformal {

namespace fs = std::filesystem;

namespace {

struct WorkItem {
  EvalRecord record;
  std::vector<Artifact> artifacts;
};

void write_artifact(const fs::path& run_dir, const Artifact& artifact) {
  fs::path target = run_dir / "artifacts" / artifact.relpath;
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write artifact " + target.string());
  }
  out << artifact.content;
}

}  // namespace

std::vector<EvalRecord> load_records(const fs::path& run_dir) {
  std::vector<EvalRecord> records;
  fs::path path = run_dir / "records.jsonl";
  std::ifstream in(path, std::ios::binary);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(EvalRecord::from_json_line(line));
  }
  return records;
}

std::vector<EvalRecord> run_suite(const std::vector<ProblemInstance>& suite,
                                  const HarnessContext& ctx, Backend& backend,
                                  const StrategyConfig& config,
                                  const RunOptions& options) {
  config.check();
  bool persist = !options.run_dir.empty();

  std::vector<EvalRecord> existing;
  std::set<std::string> done;
  if (persist) {
    fs::create_directories(options.run_dir);
    existing = load_records(options.run_dir);
    for (const auto& record : existing) done.insert(record.instance_id);
  }

  std::vector<const ProblemInstance*> pending;
  for (const auto& instance : suite) {
    if (done.count(instance.id)) continue;
    if (options.limit > 0 &&
        static_cast<int>(done.size() + pending.size()) >= options.limit) {
      break;
    }
    pending.push_back(&instance);
  }

  std::mutex mu;
  std::condition_variable cv;
  std::deque<WorkItem> queue;
  bool workers_done = false;
  std::atomic<std::size_t> next{0};
  std::vector<EvalRecord> fresh(pending.size());

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      WorkItem item;
      std::vector<Artifact>* sink = persist ? &item.artifacts : nullptr;
      item.record = run_strategy(*pending[i], ctx, backend, config, sink);
      item.record.run_id = options.run_id;
      fresh[i] = item.record;
      if (persist) {
        std::lock_guard<std::mutex> lock(mu);
        queue.push_back(std::move(item));
        cv.notify_one();
      }
    }
  };

  std::thread writer;
  if (persist) {
    writer = std::thread([&] {
      std::ofstream out(options.run_dir / "records.jsonl",
                        std::ios::binary | std::ios::app);
      if (!out) {
        throw std::runtime_error("cannot open records.jsonl for append");
      }
      for (;;) {
        WorkItem item;
        {
          std::unique_lock<std::mutex> lock(mu);
          cv.wait(lock, [&] { return !queue.empty() || workers_done; });
          if (queue.empty()) return;
          item = std::move(queue.front());
          queue.pop_front();
        }
        out << item.record.to_json_line() << "\n";
        out.flush();
        for (const auto& artifact : item.artifacts) {
          write_artifact(options.run_dir, artifact);
        }
      }
    });
  }

  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int i = 0; i < jobs; ++i) workers.emplace_back(worker);
  for (auto& t : workers) t.join();

  if (persist) {
    {
      std::lock_guard<std::mutex> lock(mu);
      workers_done = true;
    }
    cv.notify_all();
    writer.join();
  }

  std::vector<EvalRecord> all = std::move(existing);
  all.insert(all.end(), fresh.begin(), fresh.end());
  std::sort(all.begin(), all.end(),
            [](const EvalRecord& a, const EvalRecord& b) {
              return a.instance_id < b.instance_id;
            });
  return all;
}

}  // namespace bwformal
