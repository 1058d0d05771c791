#include <doctest.h>
#include <unistd.h>

#include <fstream>
#include <set>

#include "bwformal/assets.hpp"
#include "bwformal/dataset.hpp"
#include "bwformal/pddl.hpp"
#include "bwformal/solver.hpp"
#include "bwformal/subprocess.hpp"
#include "bwformal/validator.hpp"

using namespace bwformal;
namespace fs = std::filesystem;

namespace {

DomainModel domain() { return parse_domain(builtin_domain_pddl()); }

ProblemModel fixture_problem() {
  ProblemModel p;
  p.problem_name = "fixture";
  p.domain_name = "blocksworld";
  p.objects = {"block1", "block2", "block3", "block4", "block5"};
  p.init = {{"clear", {"block1"}},      {"arm-empty", {}},
            {"on", {"block1", "block3"}}, {"on", {"block3", "block5"}},
            {"on", {"block4", "block2"}}, {"on", {"block5", "block4"}},
            {"on-table", {"block2"}}};
  for (const auto& b : p.objects) p.goal.insert({"on-table", {b}});
  return p;
}

Plan fixture_plan() {
  return parse_plan(
      "(unstack block1 block3)\n(putdown block1)\n"
      "(unstack block3 block5)\n(putdown block3)\n"
      "(unstack block5 block4)\n(putdown block5)\n"
      "(unstack block4 block2)\n(putdown block4)\n");
}

}  // namespace

TEST_CASE("the canonical eight-step plan validates on the fixture") {
  Verdict v = validate(domain(), fixture_problem(), fixture_plan());
  CHECK(v.valid);
  CHECK(v.reason == FailureReason::kNone);
  CHECK(v.final_state.count({"on-table", {"block1"}}) == 1);
  CHECK(v.final_state.count({"arm-empty", {}}) == 1);
}

TEST_CASE("an unmet precondition is caught at its step") {
  // block5 is covered by block3, so it cannot be unstacked first
  Plan plan = parse_plan("(unstack block5 block4)");
  Verdict v = validate(domain(), fixture_problem(), plan);
  CHECK(!v.valid);
  CHECK(v.reason == FailureReason::kPreconditionUnsatisfied);
  REQUIRE(v.failure_step.has_value());
  CHECK(*v.failure_step == 0);
  CHECK(!v.offending.empty());
  CHECK(v.offending[0] == Atom{"clear", {"block5"}});
}

TEST_CASE("unknown actions and arity mismatches fail cleanly") {
  Verdict bad_name =
      validate(domain(), fixture_problem(), parse_plan("(teleport block1)"));
  CHECK(bad_name.reason == FailureReason::kUnknownAction);
  Verdict bad_arity =
      validate(domain(), fixture_problem(), parse_plan("(pickup)"));
  CHECK(bad_arity.reason == FailureReason::kArityMismatch);
  CHECK(*bad_arity.failure_step == 0);
}

TEST_CASE("an empty plan is valid exactly when init satisfies the goal") {
  ProblemModel satisfied = fixture_problem();
  satisfied.goal = {{"on", {"block1", "block3"}}};
  CHECK(validate(domain(), satisfied, Plan{}).valid);

  Verdict v = validate(domain(), fixture_problem(), Plan{});
  CHECK(!v.valid);
  CHECK(v.reason == FailureReason::kGoalUnmet);
  CHECK(!v.offending.empty());
  CHECK(!v.failure_step.has_value());
}

TEST_CASE("deletes apply before adds within one step") {
  DomainModel d = parse_domain(
      "(define (domain toggle) (:predicates (p ?x)) (:action keep "
      ":parameters (?x) :precondition (p ?x) "
      ":effect (and (p ?x) (not (p ?x)))))");
  ProblemModel p;
  p.problem_name = "t";
  p.domain_name = "toggle";
  p.objects = {"a"};
  p.init = {{"p", {"a"}}};
  p.goal = {{"p", {"a"}}};
  Verdict v = validate(d, p, parse_plan("(keep a)"));
  CHECK(v.valid);  // the add wins
}

TEST_CASE("the heuristic reproduces the canonical fixture plan exactly") {
  Plan plan = solve_heuristic(fixture_problem());
  CHECK(plan == fixture_plan());
}

TEST_CASE("the heuristic returns an empty plan iff the goal already holds") {
  ProblemModel p = fixture_problem();
  p.goal = {{"on", {"block1", "block3"}},
            {"on", {"block3", "block5"}},
            {"on", {"block5", "block4"}},
            {"on", {"block4", "block2"}},
            {"on-table", {"block2"}}};
  CHECK(solve_heuristic(p).size() == 0);
}

TEST_CASE("heuristic plans validate and stay within 4n on random instances") {
  for (int n : {5, 12, 30, 50}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      ProblemInstance inst = gen_xxl(n, seed);
      Plan plan = solve_heuristic(inst.ground_truth);
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(plan.size() <= 4 * static_cast<std::size_t>(n));
      CHECK(validate(domain(), inst.ground_truth, plan).valid);
    }
  }
}

TEST_CASE("holding blocks are parked and re-grasped as needed") {
  ProblemModel p;
  p.problem_name = "hold";
  p.domain_name = "blocksworld";
  p.objects = {"block1", "block2"};
  p.init = {{"holding", {"block1"}},
            {"on-table", {"block2"}},
            {"clear", {"block2"}}};

  SUBCASE("goal wants the same block held: nothing to do") {
    p.goal = {{"holding", {"block1"}}, {"on-table", {"block2"}}};
    CHECK(solve_heuristic(p).size() == 0);
  }
  SUBCASE("goal on the table: put it down") {
    p.goal = {{"on-table", {"block1"}}, {"on-table", {"block2"}}};
    Plan plan = solve_heuristic(p);
    CHECK(validate(domain(), p, plan).valid);
    CHECK(plan.steps[0].name == "putdown");
  }
  SUBCASE("goal wants the other block held") {
    p.goal = {{"on-table", {"block1"}}, {"holding", {"block2"}}};
    Plan plan = solve_heuristic(p);
    CHECK(validate(domain(), p, plan).valid);
    CHECK(plan.steps.back().name == "pickup");
  }
}

TEST_CASE("declared but unreferenced objects do not confuse the solver") {
  ProblemModel p;
  p.problem_name = "extra";
  p.domain_name = "blocksworld";
  p.objects = {"block1", "block2", "spare"};
  p.init = {{"on-table", {"block1"}}, {"on-table", {"block2"}},
            {"clear", {"block1"}},    {"clear", {"block2"}},
            {"arm-empty", {}}};
  p.goal = {{"on", {"block1", "block2"}}, {"on-table", {"block2"}}};
  Plan plan = solve_heuristic(p);
  CHECK(validate(domain(), p, plan).valid);
}

TEST_CASE("a defective init is rejected with its defect list") {
  ProblemModel p = fixture_problem();
  p.init.insert({"holding", {"block2"}});
  CHECK_THROWS_AS(solve_heuristic(p), IllFormedProblem);
  try {
    solve_heuristic(p);
  } catch (const IllFormedProblem& e) {
    CHECK(!e.defects().empty());
  }
}

TEST_CASE("breadth-first search finds the shortest plan") {
  BfsResult fixture = solve_optimal_bfs(fixture_problem());
  REQUIRE(fixture.plan.has_value());
  CHECK(fixture.plan->size() == 8);
  CHECK(validate(domain(), fixture_problem(), *fixture.plan).valid);

  // inverting a three-block tower takes six moves, two fewer than the
  // unstack-all heuristic uses
  ProblemModel invert;
  invert.problem_name = "invert";
  invert.domain_name = "blocksworld";
  invert.objects = {"block1", "block2", "block3"};
  invert.init = {{"on", {"block1", "block2"}}, {"on", {"block2", "block3"}},
                 {"on-table", {"block3"}},     {"clear", {"block1"}},
                 {"arm-empty", {}}};
  invert.goal = {{"on", {"block3", "block2"}}, {"on", {"block2", "block1"}},
                 {"on-table", {"block1"}}};
  BfsResult inverted = solve_optimal_bfs(invert);
  REQUIRE(inverted.plan.has_value());
  CHECK(inverted.plan->size() == 6);
  CHECK(validate(domain(), invert, *inverted.plan).valid);
  CHECK(solve_heuristic(invert).size() == 8);

  BfsResult starved = solve_optimal_bfs(invert, 3);
  CHECK(!starved.plan.has_value());
}

TEST_CASE("external planner plumbing maps every outcome") {
  fs::path dir = fs::temp_directory_path() /
                 ("bwf-ext-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path dpath = dir / "domain.pddl";
  fs::path ppath = dir / "problem.pddl";
  {
    std::ofstream(dpath) << builtin_domain_pddl();
    std::ofstream(ppath) << print_canonical(fixture_problem());
  }

  SUBCASE("stdout plans parse") {
    ExternalPlannerConfig config;
    config.command_template = "/bin/echo (pickup block1)";
    ExternalResult r = solve_external(dpath, ppath, config);
    REQUIRE(r.status == ExternalResult::Status::kOk);
    CHECK(r.plan->steps[0] == GroundAction{"pickup", {"block1"}});
  }
  SUBCASE("nonzero exits are reported") {
    ExternalPlannerConfig config;
    config.command_template = "/bin/false {domain} {problem}";
    CHECK(solve_external(dpath, ppath, config).status ==
          ExternalResult::Status::kNonzeroExit);
  }
  SUBCASE("missing binaries spawn-fail") {
    ExternalPlannerConfig config;
    config.command_template = "/no/such/planner {problem}";
    CHECK(solve_external(dpath, ppath, config).status ==
          ExternalResult::Status::kSpawnFailed);
  }
  SUBCASE("slow planners are killed") {
    ExternalPlannerConfig config;
    config.command_template = "/bin/sleep 5";
    config.timeout = std::chrono::milliseconds(100);
    CHECK(solve_external(dpath, ppath, config).status ==
          ExternalResult::Status::kTimeout);
  }
  SUBCASE("garbage output is unparseable") {
    ExternalPlannerConfig config;
    config.command_template = "/bin/echo step 1 move a to b";
    CHECK(solve_external(dpath, ppath, config).status ==
          ExternalResult::Status::kUnparseable);
  }
  fs::remove_all(dir);
}

TEST_CASE("subprocess runner basics") {
  RunSpec spec;
  spec.argv = {"/bin/echo", "hello"};
  RunResult r = run_process(spec);
  CHECK(r.exited_zero());
  CHECK(r.out == "hello\n");

  RunSpec timeout_spec;
  timeout_spec.argv = {"/bin/sleep", "5"};
  timeout_spec.timeout = std::chrono::milliseconds(100);
  CHECK(run_process(timeout_spec).status == RunResult::Status::kTimeout);

  RunSpec scrubbed;
  scrubbed.argv = {"/usr/bin/env"};
  scrubbed.scrub_env = true;
  scrubbed.env_extra = {{"MARKER", "yes"}};
  RunResult env_out = run_process(scrubbed);
  CHECK(env_out.out.find("MARKER=yes") != std::string::npos);
  CHECK(env_out.out.find("HOME=") == std::string::npos);
}

TEST_CASE("command splitting honors quotes") {
  auto parts = split_command("prog --flag \"two words\" 'single q' plain");
  REQUIRE(parts.size() == 5);
  CHECK(parts[2] == "two words");
  CHECK(parts[3] == "single q");
}
