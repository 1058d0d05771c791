#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "bwformal/assets.hpp"
#include "bwformal/oracle_backend.hpp"
#include "bwformal/record.hpp"
#include "bwformal/report.hpp"
#include "bwformal/runner.hpp"

using namespace bwformal;
namespace fs = std::filesystem;

namespace {

EvalRecord sample_record(std::string id, bool valid, int n = 5) {
  EvalRecord r;
  r.run_id = "r1";
  r.instance_id = std::move(id);
  r.family = Family::kXxl;
  r.n = n;
  r.strategy = Strategy::kFormalizer;
  r.backend_id = "mock-oracle";
  r.valid = valid;
  r.cause = valid ? FailureCause::kNone : FailureCause::kMismatch;
  r.compression_ratio = 1.0;
  r.wall_ms = 2.5;
  return r;
}

StrategyConfig oracle_config(Strategy strategy) {
  StrategyConfig config;
  config.strategy = strategy;
  config.prompts = load_prompts(default_asset_dir() / "prompts");
  config.sandbox = default_sandbox_config(default_asset_dir());
  return config;
}

}  // namespace

TEST_CASE("records round-trip through json lines") {
  EvalRecord r = sample_record("p001", true);
  r.plan_length = 12;
  r.end_to_end_valid = true;
  r.flags.extra_init = true;
  r.artifact_paths = {"p001/candidate.pddl"};
  r.events = {"note"};

  EvalRecord back = EvalRecord::from_json_line(r.to_json_line());
  CHECK(back.run_id == r.run_id);
  CHECK(back.instance_id == r.instance_id);
  CHECK(back.family == r.family);
  CHECK(back.n == r.n);
  CHECK(back.strategy == r.strategy);
  CHECK(back.valid == r.valid);
  CHECK(back.cause == r.cause);
  CHECK(back.flags == r.flags);
  CHECK(back.plan_length == r.plan_length);
  CHECK(back.end_to_end_valid == r.end_to_end_valid);
  CHECK(back.artifact_paths == r.artifact_paths);
  CHECK(back.events == r.events);
  CHECK(back.wall_ms == doctest::Approx(r.wall_ms));

  EvalRecord bare = sample_record("p002", false);
  EvalRecord bare_back = EvalRecord::from_json_line(bare.to_json_line());
  CHECK(!bare_back.plan_length.has_value());
  CHECK(!bare_back.end_to_end_valid.has_value());

  // one line, no embedded newlines
  CHECK(r.to_json_line().find('\n') == std::string::npos);
}

TEST_CASE("strategy and cause names round-trip") {
  for (Strategy s : {Strategy::kPlanner, Strategy::kFormalizer, Strategy::kDnc,
                     Strategy::kHigherOrder}) {
    CHECK(strategy_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(strategy_from_string("oracle"), std::invalid_argument);
}

TEST_CASE("three valid out of ten is thirty percent") {
  std::vector<EvalRecord> records;
  for (int i = 0; i < 10; ++i) {
    EvalRecord r = sample_record("p" + std::to_string(i), i < 3);
    if (i < 3) r.plan_length = 10 + i;
    records.push_back(r);
  }
  Report report = aggregate(records);
  const BucketStats& bucket = report.buckets.at({"formalizer", 5});
  CHECK(bucket.total == 10);
  CHECK(bucket.valid == 3);
  CHECK(bucket.accuracy_pct == doctest::Approx(30.0));
  CHECK(bucket.avg_plan_length == doctest::Approx(11.0));
  CHECK(bucket.plan_length_count == 3);
}

TEST_CASE("failure categories are percentages over failing records") {
  std::vector<EvalRecord> records;
  records.push_back(sample_record("p1", true));
  EvalRecord f1 = sample_record("p2", false);
  f1.flags.extra_init = true;
  EvalRecord f2 = sample_record("p3", false);
  f2.flags.extra_init = true;
  EvalRecord f3 = sample_record("p4", false);
  f3.flags.missing_goal = true;
  records.insert(records.end(), {f1, f2, f3});

  Report report = aggregate(records);
  const CategoryStats& stats = report.categories.at("formalizer");
  CHECK(stats.failures == 3);
  CHECK(stats.extra_init_pct == doctest::Approx(200.0 / 3));
  CHECK(stats.missing_goal_pct == doctest::Approx(100.0 / 3));
  CHECK(stats.missing_init_pct == doctest::Approx(0.0));
}

TEST_CASE("aggregation refuses an empty record set") {
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("rendering is deterministic") {
  std::vector<EvalRecord> records;
  for (int i = 0; i < 6; ++i) {
    records.push_back(sample_record("p" + std::to_string(i), i % 2 == 0,
                                    i < 3 ? 5 : 30));
  }
  Report report = aggregate(records);
  CHECK(render_table(report) == render_table(aggregate(records)));
  std::string csv = render_csv(report);
  CHECK(csv == render_csv(aggregate(records)));
  CHECK(csv.find("strategy,n,total,valid,accuracy_pct") == 0);
  // rows are ordered by (strategy, n)
  CHECK(csv.find("formalizer,5,") < csv.find("formalizer,30,"));
}

TEST_CASE("the runner resumes, limits, and parallelizes") {
  SuiteSpec spec;
  spec.family = Family::kXxl;
  spec.buckets = {{4, 3}, {5, 2}};
  auto suite = gen_suite(spec, 77);
  auto backend = make_oracle_backend();
  HarnessContext ctx = builtin_context();
  StrategyConfig config = oracle_config(Strategy::kFormalizer);

  fs::path run_dir = fs::temp_directory_path() /
                     ("bwf-run-" + std::to_string(::getpid()));
  fs::remove_all(run_dir);

  RunOptions first;
  first.run_id = "resume-test";
  first.run_dir = run_dir;
  first.limit = 2;
  auto partial = run_suite(suite, ctx, *backend, config, first);
  CHECK(partial.size() == 2);
  CHECK(load_records(run_dir).size() == 2);

  RunOptions rest;
  rest.run_id = "resume-test";
  rest.run_dir = run_dir;
  auto full = run_suite(suite, ctx, *backend, config, rest);
  REQUIRE(full.size() == suite.size());
  CHECK(load_records(run_dir).size() == suite.size());
  // ids are unique and sorted
  for (std::size_t i = 1; i < full.size(); ++i) {
    CHECK(full[i - 1].instance_id < full[i].instance_id);
  }
  for (const auto& record : full) {
    CHECK(record.valid);
    CHECK(record.run_id == "resume-test");
  }
  // artifacts landed on disk for every instance
  for (const auto& inst : suite) {
    CHECK(fs::exists(run_dir / "artifacts" / inst.id / "candidate.pddl"));
  }
  fs::remove_all(run_dir);

  // a parallel in-memory run matches the sequential one
  RunOptions par;
  par.run_id = "par";
  par.jobs = 4;
  auto parallel = run_suite(suite, ctx, *backend, config, par);
  REQUIRE(parallel.size() == suite.size());
  for (std::size_t i = 0; i < parallel.size(); ++i) {
    CHECK(parallel[i].instance_id == full[i].instance_id);
    CHECK(parallel[i].valid);
  }
}

TEST_CASE("loading a missing run directory yields no records") {
  CHECK(load_records("/nonexistent/bwf-run").empty());
}
