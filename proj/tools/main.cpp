#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bwformal/assets.hpp"
#include "bwformal/backend.hpp"
#include "bwformal/dataset.hpp"
#include "bwformal/equivalence.hpp"
#include "bwformal/oracle_backend.hpp"
#include "bwformal/pddl.hpp"
#include "bwformal/pipeline.hpp"
#include "bwformal/plan.hpp"
#include "bwformal/report.hpp"
#include "bwformal/runner.hpp"
#include "bwformal/solver.hpp"
#include "bwformal/validator.hpp"

namespace fs = std::filesystem;
using namespace bwformal;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int fail_json(const std::string& message, int code = 2) {
  nlohmann::json j;
  j["error"] = message;
  std::cerr << j.dump() << "\n";
  return code;
}

std::vector<std::pair<int, int>> parse_buckets(const std::string& text) {
  std::vector<std::pair<int, int>> buckets;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("bucket must be <blocks>:<count>, got " + part);
    }
    buckets.emplace_back(std::stoi(part.substr(0, colon)),
                         std::stoi(part.substr(colon + 1)));
  }
  if (buckets.empty()) throw std::runtime_error("no buckets given");
  return buckets;
}

std::unique_ptr<Backend> make_backend(const std::string& name,
                                      const fs::path& config_path) {
  if (name == "mock-oracle") return make_oracle_backend();
  const std::string corrupt_prefix = "mock-corrupt:";
  if (name.rfind(corrupt_prefix, 0) == 0) {
    std::string mode = name.substr(corrupt_prefix.size());
    for (int i = 0; i <= static_cast<int>(Corruption::kLooplessProgram); ++i) {
      auto c = static_cast<Corruption>(i);
      if (to_string(c) == mode) return make_corrupt_backend(c);
    }
    throw std::runtime_error("unknown corruption mode: " + mode);
  }
  if (name == "http") {
    if (config_path.empty()) {
      throw std::runtime_error("http backend needs --config");
    }
    nlohmann::json j = nlohmann::json::parse(read_file(config_path));
    HttpBackendConfig config;
    config.base_url = j.at("base_url").get<std::string>();
    if (j.contains("path")) config.path = j["path"].get<std::string>();
    if (j.contains("model")) config.model = j["model"].get<std::string>();
    if (j.contains("api_key_env"))
      config.api_key_env = j["api_key_env"].get<std::string>();
    if (j.contains("temperature"))
      config.temperature = j["temperature"].get<double>();
    if (j.contains("max_tokens"))
      config.max_tokens = j["max_tokens"].get<int>();
    if (j.contains("max_retries"))
      config.max_retries = j["max_retries"].get<int>();
    if (j.contains("backoff_ms"))
      config.backoff_ms = j["backoff_ms"].get<int>();
    if (j.contains("timeout_s")) config.timeout_s = j["timeout_s"].get<int>();
    return std::make_unique<HttpBackend>(config);
  }
  throw std::runtime_error("unknown backend: " + name);
}

int cmd_gen(const std::string& family_name, const fs::path& out_dir,
            std::uint64_t seed, const std::string& buckets_text) {
  Family family = family_from_string(family_name);
  SuiteSpec spec = default_suite(family);
  if (!buckets_text.empty()) spec.buckets = parse_buckets(buckets_text);
  auto instances = gen_suite(spec, seed);
  write_suite(instances, family, seed, out_dir);
  nlohmann::json j;
  j["family"] = to_string(family);
  j["seed"] = seed;
  j["instances"] = instances.size();
  j["dir"] = out_dir.string();
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_solve(const fs::path& problem_path, const fs::path& domain_path,
              const std::string& method, const std::string& command,
              std::size_t budget, int timeout_ms, const fs::path& out_path) {
  std::string domain_text =
      domain_path.empty() ? builtin_domain_pddl() : read_file(domain_path);
  DomainModel domain = parse_domain(domain_text);
  ProblemModel problem = parse_problem(read_file(problem_path), &domain);

  Plan plan;
  if (method == "heuristic") {
    plan = solve_heuristic(problem);
  } else if (method == "bfs") {
    BfsResult result = solve_optimal_bfs(problem, budget);
    if (!result.plan) return fail_json("search budget exhausted", 1);
    plan = *result.plan;
  } else if (method == "external") {
    if (command.empty()) {
      throw std::runtime_error("--method external needs --command");
    }
    fs::path dpath = domain_path;
    if (dpath.empty()) {
      dpath = fs::temp_directory_path() / "bwformal-domain.pddl";
      write_file(dpath, builtin_domain_pddl());
    }
    ExternalPlannerConfig config;
    config.command_template = command;
    config.timeout = std::chrono::milliseconds(timeout_ms);
    ExternalResult result = solve_external(dpath, problem_path, config);
    if (result.status != ExternalResult::Status::kOk) {
      return fail_json("external planner failed: " + to_string(result.status) +
                           (result.detail.empty() ? "" : ": " + result.detail),
                       1);
    }
    plan = *result.plan;
  } else {
    throw std::runtime_error("unknown method: " + method);
  }

  std::string text = print_plan(plan);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return 0;
}

int cmd_validate(const fs::path& domain_path, const fs::path& problem_path,
                 const fs::path& plan_path) {
  DomainModel domain = parse_domain(read_file(domain_path));
  ProblemModel problem = parse_problem(read_file(problem_path), &domain);
  Plan plan = parse_plan(read_file(plan_path));
  Verdict verdict = validate(domain, problem, plan);
  std::cout << verdict.to_json() << "\n";
  return verdict.valid ? 0 : 1;
}

int cmd_diff(const fs::path& candidate_path, const fs::path& truth_path,
             const fs::path& domain_path) {
  const DomainModel* domain_ptr = nullptr;
  DomainModel domain;
  if (!domain_path.empty()) {
    domain = parse_domain(read_file(domain_path));
    domain_ptr = &domain;
  }
  ProblemModel candidate =
      parse_problem(read_file(candidate_path), domain_ptr);
  ProblemModel truth = parse_problem(read_file(truth_path), domain_ptr);
  DiffReport report = diff_problems(candidate, truth);
  std::cout << report.to_json() << "\n";
  return report.match ? 0 : 1;
}

int cmd_run(const fs::path& suite_dir, const std::string& strategy_name,
            const std::string& backend_name, const fs::path& config_path,
            const fs::path& run_dir, const std::string& run_id, int jobs,
            int limit, const fs::path& prompts_dir) {
  auto suite = load_suite(suite_dir);
  auto backend = make_backend(backend_name, config_path);

  fs::path asset_dir = default_asset_dir();
  StrategyConfig config;
  config.strategy = strategy_from_string(strategy_name);
  config.prompts =
      load_prompts(prompts_dir.empty() ? asset_dir / "prompts" : prompts_dir);
  config.sandbox = default_sandbox_config(asset_dir);
  config.check();

  RunOptions options;
  options.run_id = run_id;
  options.run_dir = run_dir;
  options.jobs = jobs;
  options.limit = limit;

  HarnessContext ctx = builtin_context();
  auto records = run_suite(suite, ctx, *backend, config, options);
  std::cout << render_table(aggregate(records));
  return 0;
}

int cmd_report(const fs::path& run_dir) {
  auto records = load_records(run_dir);
  if (records.empty()) return fail_json("no records in " + run_dir.string(), 1);
  Report report = aggregate(records);
  write_file(run_dir / "report.txt", render_table(report));
  write_file(run_dir / "report.csv", render_csv(report));
  std::cout << render_table(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BlocksWorld formalization harness"};
  app.require_subcommand(1);

  std::string family = "xxl", buckets, method = "heuristic", command;
  std::string strategy, backend_name, run_id = "run";
  fs::path out_dir, problem_path, domain_path, plan_path, candidate_path;
  fs::path truth_path, suite_dir, config_path, run_dir, prompts_dir, out_path;
  std::uint64_t seed = 1;
  std::size_t budget = 2'000'000;
  int timeout_ms = 60'000, jobs = 1, limit = 0;

  auto* gen = app.add_subcommand("gen", "generate a problem suite");
  gen->add_option("--family", family, "xxl or unravel");
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--seed", seed, "suite seed");
  gen->add_option("--buckets", buckets, "e.g. 5:40,30:40,50:40");

  auto* solve = app.add_subcommand("solve", "solve a problem file");
  solve->add_option("problem", problem_path, "problem PDDL file")->required();
  solve->add_option("--domain", domain_path, "domain file (default builtin)");
  solve->add_option("--method", method, "heuristic, bfs, or external");
  solve->add_option("--command", command,
                    "external planner template with {domain} {problem} "
                    "and optional {output}");
  solve->add_option("--budget", budget, "bfs state budget");
  solve->add_option("--timeout-ms", timeout_ms, "external planner timeout");
  solve->add_option("--out", out_path, "write the plan here, not stdout");

  auto* val = app.add_subcommand("validate", "check a plan against a problem");
  val->add_option("domain", domain_path, "domain file")->required();
  val->add_option("problem", problem_path, "problem file")->required();
  val->add_option("plan", plan_path, "plan file")->required();

  auto* diff = app.add_subcommand("diff", "compare two problem files");
  diff->add_option("candidate", candidate_path, "candidate file")->required();
  diff->add_option("truth", truth_path, "ground-truth file")->required();
  diff->add_option("--domain", domain_path, "domain for arity checks");

  auto* run = app.add_subcommand("run", "evaluate a strategy over a suite");
  run->add_option("--suite", suite_dir, "suite directory")->required();
  run->add_option("--strategy", strategy,
                  "planner, formalizer, dnc, or higher-order")
      ->required();
  run->add_option("--backend", backend_name,
                  "mock-oracle, mock-corrupt:<mode>, or http")
      ->required();
  run->add_option("--config", config_path, "http backend config JSON");
  run->add_option("--run-dir", run_dir, "directory for records and artifacts");
  run->add_option("--run-id", run_id, "stamped into every record");
  run->add_option("--jobs", jobs, "worker threads");
  run->add_option("--limit", limit, "evaluate at most this many instances");
  run->add_option("--prompts", prompts_dir, "prompt directory override");

  auto* rep = app.add_subcommand("report", "aggregate a run directory");
  rep->add_option("--run-dir", run_dir, "directory with records.jsonl")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(family, out_dir, seed, buckets);
    if (solve->parsed()) {
      return cmd_solve(problem_path, domain_path, method, command, budget,
                       timeout_ms, out_path);
    }
    if (val->parsed()) return cmd_validate(domain_path, problem_path, plan_path);
    if (diff->parsed()) return cmd_diff(candidate_path, truth_path, domain_path);
    if (run->parsed()) {
      return cmd_run(suite_dir, strategy, backend_name, config_path, run_dir,
                     run_id, jobs, limit, prompts_dir);
    }
    if (rep->parsed()) return cmd_report(run_dir);
  } catch (const std::exception& e) {
    return fail_json(e.what());
  }
  return 0;
}
