#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "bwformal/assets.hpp"
#include "bwformal/dataset.hpp"
#include "bwformal/oracle_backend.hpp"
#include "bwformal/pipeline.hpp"
#include "bwformal/sandbox.hpp"

using namespace bwformal;
namespace fs = std::filesystem;

namespace {

StrategyConfig config_for(Strategy strategy) {
  static const PromptSet prompts = load_prompts(default_asset_dir() / "prompts");
  StrategyConfig config;
  config.strategy = strategy;
  config.prompts = prompts;
  config.sandbox = default_sandbox_config(default_asset_dir());
  return config;
}

std::vector<ProblemInstance> tiny_suite() {
  return {gen_xxl(4, 21, "x1"), gen_xxl(6, 22, "x2"), gen_unravel(5, 23, "u1"),
          gen_unravel(8, 24, "u2")};
}

}  // namespace

TEST_CASE("strategy configs are validated up front") {
  StrategyConfig config;
  config.strategy = Strategy::kDnc;
  config.prompts.dnc_header = "h";
  CHECK_THROWS_AS(config.check(), std::invalid_argument);
  config.prompts.dnc_fact = "f";
  CHECK_NOTHROW(config.check());

  StrategyConfig ho;
  ho.strategy = Strategy::kHigherOrder;
  ho.prompts.higher_order = "p";
  CHECK_THROWS_AS(ho.check(), std::invalid_argument);
  ho.sandbox.interpreter_template = "python3 {program}";
  CHECK_NOTHROW(ho.check());
}

TEST_CASE("the loop guard looks at tokens, not substrings") {
  CHECK(has_loop_construct("for i in range(3):\n    pass"));
  CHECK(has_loop_construct("while True:\n    break"));
  CHECK(has_loop_construct("x = [i for i in y]"));
  CHECK(!has_loop_construct("formula = 1"));
  CHECK(!has_loop_construct("forty = fortune()"));
  CHECK(!has_loop_construct("print('whilesome')"));
  CHECK(!has_loop_construct(""));
}

TEST_CASE("the oracle backend drives every strategy to a valid result") {
  auto backend = make_oracle_backend();
  HarnessContext ctx = builtin_context();
  for (Strategy strategy : {Strategy::kPlanner, Strategy::kFormalizer,
                            Strategy::kDnc, Strategy::kHigherOrder}) {
    StrategyConfig config = config_for(strategy);
    for (const auto& inst : tiny_suite()) {
      EvalRecord record = run_strategy(inst, ctx, *backend, config);
      CAPTURE(to_string(strategy));
      CAPTURE(inst.id);
      CHECK(record.valid);
      CHECK(record.cause == FailureCause::kNone);
      REQUIRE(record.plan_length.has_value());
      CHECK(*record.plan_length <= 4 * inst.n);
      CHECK(record.wall_ms >= 0.0);
      if (strategy != Strategy::kPlanner) {
        REQUIRE(record.end_to_end_valid.has_value());
        CHECK(*record.end_to_end_valid);
      }
    }
  }
}

TEST_CASE("artifacts carry the full audit trail") {
  auto backend = make_oracle_backend();
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_xxl(4, 31, "art1");
  std::vector<Artifact> artifacts;
  EvalRecord record = run_formalizer(inst, ctx, *backend,
                                     config_for(Strategy::kFormalizer),
                                     &artifacts);
  CHECK(record.valid);
  REQUIRE(!artifacts.empty());
  bool saw_prompt = false, saw_candidate = false, saw_diff = false;
  for (const auto& artifact : artifacts) {
    CHECK(artifact.relpath.rfind("art1/", 0) == 0);
    if (artifact.relpath == "art1/formalizer_prompt.txt") saw_prompt = true;
    if (artifact.relpath == "art1/candidate.pddl") saw_candidate = true;
    if (artifact.relpath == "art1/diff.json") saw_diff = true;
  }
  CHECK(saw_prompt);
  CHECK(saw_candidate);
  CHECK(saw_diff);
  CHECK(record.artifact_paths.size() == artifacts.size());
}

TEST_CASE("each corruption lands on its designated failure cause") {
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_xxl(4, 41, "c1");

  struct Case {
    Corruption corruption;
    Strategy strategy;
    FailureCause cause;
  };
  const Case cases[] = {
      {Corruption::kBackendError, Strategy::kPlanner, FailureCause::kBackend},
      {Corruption::kNoTag, Strategy::kPlanner, FailureCause::kExtraction},
      {Corruption::kUnclosedTag, Strategy::kFormalizer,
       FailureCause::kExtraction},
      {Corruption::kMalformedPlan, Strategy::kPlanner,
       FailureCause::kPlanParse},
      {Corruption::kInvalidPlan, Strategy::kPlanner,
       FailureCause::kPlanInvalid},
      {Corruption::kUnparseablePddl, Strategy::kFormalizer,
       FailureCause::kPddlParse},
      {Corruption::kMissingGoalAtom, Strategy::kFormalizer,
       FailureCause::kMismatch},
      {Corruption::kExtraInitAtom, Strategy::kFormalizer,
       FailureCause::kMismatch},
      {Corruption::kBadHeader, Strategy::kDnc,
       FailureCause::kHeaderExtraction},
      {Corruption::kFactWithSection, Strategy::kDnc, FailureCause::kMismatch},
      {Corruption::kInfiniteLoopProgram, Strategy::kHigherOrder,
       FailureCause::kSandboxTimeout},
      {Corruption::kCrashingProgram, Strategy::kHigherOrder,
       FailureCause::kSandboxExit},
      {Corruption::kNoOutputProgram, Strategy::kHigherOrder,
       FailureCause::kSandboxMissingOutput},
      {Corruption::kLooplessProgram, Strategy::kHigherOrder,
       FailureCause::kGuardRejected},
  };
  for (const Case& c : cases) {
    auto backend = make_corrupt_backend(c.corruption);
    StrategyConfig config = config_for(c.strategy);
    config.sandbox.wall_limit = std::chrono::milliseconds(1500);
    EvalRecord record = run_strategy(inst, ctx, *backend, config);
    CAPTURE(to_string(c.corruption));
    CHECK(!record.valid);
    CHECK(record.cause == c.cause);
  }
}

TEST_CASE("flag taxonomy survives the pipeline") {
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_xxl(5, 43, "c2");

  auto missing = make_corrupt_backend(Corruption::kMissingGoalAtom);
  EvalRecord dropped = run_formalizer(inst, ctx, *missing,
                                      config_for(Strategy::kFormalizer));
  CHECK(dropped.flags.missing_goal);
  CHECK(!dropped.flags.extra_init);

  auto extra = make_corrupt_backend(Corruption::kExtraInitAtom);
  EvalRecord padded = run_formalizer(inst, ctx, *extra,
                                     config_for(Strategy::kFormalizer));
  CHECK(padded.flags.extra_init);
  CHECK(!padded.flags.missing_goal);
}

TEST_CASE("extraction failures are retried a bounded number of times") {
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_xxl(4, 47, "r1");
  std::string good_reply =
      "<problem_file>\n" + print_canonical(inst.ground_truth) +
      "</problem_file>";

  auto flaky_calls = std::make_shared<int>(0);
  MockBackend flaky("mock-flaky", [=](const std::string&, const std::string&) {
    CompletionResult res;
    res.ok = true;
    res.text = ++*flaky_calls < 3 ? "no tags yet" : good_reply;
    return res;
  });

  StrategyConfig config = config_for(Strategy::kFormalizer);
  config.max_retries = 2;
  EvalRecord record = run_formalizer(inst, ctx, flaky, config);
  CHECK(record.valid);
  CHECK(*flaky_calls == 3);
  CHECK(record.events.size() == 2);  // the two failed attempts

  *flaky_calls = 0;
  config.max_retries = 1;
  EvalRecord exhausted = run_formalizer(inst, ctx, flaky, config);
  CHECK(!exhausted.valid);
  CHECK(exhausted.cause == FailureCause::kExtraction);
  CHECK(*flaky_calls == 2);
}

TEST_CASE("divide and conquer consolidates losslessly on both families") {
  auto backend = make_oracle_backend();
  HarnessContext ctx = builtin_context();
  StrategyConfig config = config_for(Strategy::kDnc);
  for (const auto& inst : tiny_suite()) {
    std::vector<Artifact> artifacts;
    EvalRecord record = run_dnc(inst, ctx, *backend, config, &artifacts);
    CAPTURE(inst.id);
    REQUIRE(record.valid);
    // the consolidated candidate parses back to the exact atom sets
    for (const auto& artifact : artifacts) {
      if (artifact.relpath != inst.id + "/consolidated.pddl") continue;
      ProblemModel candidate = parse_problem(artifact.content, &ctx.domain);
      CHECK(candidate.init == inst.ground_truth.init);
      CHECK(candidate.goal == inst.ground_truth.goal);
    }
  }
}

TEST_CASE("a compressed init clause fans out into many facts") {
  auto backend = make_oracle_backend();
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_unravel(9, 51, "u9");
  EvalRecord record = run_dnc(inst, ctx, *backend,
                              config_for(Strategy::kDnc));
  CHECK(record.valid);
  bool fanout_noted = false;
  for (const auto& event : record.events) {
    if (event.find("atoms from one clause") != std::string::npos) {
      fanout_noted = true;
    }
  }
  CHECK(fanout_noted);
}

TEST_CASE("the example generator program yields the documented file") {
  // the higher-order prompt ends with a worked example program; running it
  // must produce a 10-object problem with 13 init atoms
  PromptSet prompts = load_prompts(default_asset_dir() / "prompts");
  // several tagged snippets appear in the prompt; the program is the longest
  std::string program;
  for (std::size_t pos = 0;;) {
    std::size_t open = prompts.higher_order.find("<generator>", pos);
    if (open == std::string::npos) break;
    std::size_t close = prompts.higher_order.find("</generator>", open);
    if (close == std::string::npos) break;
    std::string body =
        prompts.higher_order.substr(open + 11, close - open - 11);
    if (body.size() > program.size()) program = std::move(body);
    pos = close + 12;
  }
  REQUIRE(!program.empty());
  REQUIRE(has_loop_construct(program));

  SandboxResult run =
      run_generated_program(program, default_sandbox_config(default_asset_dir()));
  REQUIRE(run.status == SandboxResult::Status::kOk);
  ProblemModel model = parse_problem(run.output_text);
  CHECK(model.objects.size() == 10);
  CHECK(model.init.size() == 13);
  CHECK(model.goal.size() == 3);
}

TEST_CASE("the sandbox kills runaway programs at the wall limit") {
  SandboxConfig config = default_sandbox_config(default_asset_dir());
  config.wall_limit = std::chrono::milliseconds(1200);
  SandboxResult run = run_generated_program("while True:\n    pass\n", config);
  CHECK(run.status == SandboxResult::Status::kTimeout);
  CHECK(run.wall_ms < 10'000);
}

TEST_CASE("the sandbox blocks writes outside its scratch directory") {
  fs::path probe = fs::temp_directory_path() /
                   ("bwf-escape-" + std::to_string(::getpid()) + ".txt");
  fs::remove(probe);
  std::string program =
      "for attempt in range(1):\n"
      "    handle = open(\"" + probe.string() + "\", \"w\")\n"
      "    handle.write(\"escaped\")\n"
      "    handle.close()\n";
  SandboxResult run = run_generated_program(
      program, default_sandbox_config(default_asset_dir()));
  CHECK(run.status == SandboxResult::Status::kNonzeroExit);
  CHECK(!fs::exists(probe));
}

TEST_CASE("the sandbox blocks socket use and path tampering") {
  SandboxConfig config = default_sandbox_config(default_asset_dir());
  SandboxResult net = run_generated_program(
      "import socket\n"
      "for i in range(1):\n"
      "    s = socket.socket()\n",
      config);
  CHECK(net.status == SandboxResult::Status::kNonzeroExit);

  SandboxResult removal = run_generated_program(
      "import os\n"
      "for i in range(1):\n"
      "    os.remove(\"/etc/hostname\")\n",
      config);
  CHECK(removal.status == SandboxResult::Status::kNonzeroExit);
}

TEST_CASE("programs may write freely inside the scratch directory") {
  SandboxConfig config = default_sandbox_config(default_asset_dir());
  SandboxResult run = run_generated_program(
      "lines = []\n"
      "for i in range(2):\n"
      "    lines.append(\"(define (problem p\" + str(i) + \"))\")\n"
      "with open(\"scratch.txt\", \"w\") as f:\n"
      "    f.write(\"tmp\")\n"
      "with open(\"problem.pddl\", \"w\") as f:\n"
      "    f.write(lines[0] + \"\\n\")\n",
      config);
  REQUIRE(run.status == SandboxResult::Status::kOk);
  CHECK(run.output_text == "(define (problem p0))\n");
}

TEST_CASE("higher-order runs survive ill-formed generated problems") {
  // a program whose output parses but violates the state model must not
  // crash the pipeline; it scores as a mismatch with events
  HarnessContext ctx = builtin_context();
  ProblemInstance inst = gen_xxl(4, 61, "ho1");
  MockBackend backend("mock-illformed", [](const std::string&,
                                           const std::string&) {
    CompletionResult res;
    res.ok = true;
    res.text =
        "<generator>\n"
        "lines = [\"(define (problem bad)\", \"  (:domain blocksworld)\","
        " \"  (:objects block1 block2)\", \"  (:init (on block1 block2)"
        " (on block2 block1) (arm-empty))\", \"  (:goal (and (on-table"
        " block1)))\", \")\"]\n"
        "with open(\"problem.pddl\", \"w\") as f:\n"
        "    for line in lines:\n"
        "        f.write(line + \"\\n\")\n"
        "</generator>";
    return res;
  });
  EvalRecord record = run_higher_order(inst, ctx, backend,
                                       config_for(Strategy::kHigherOrder));
  CHECK(!record.valid);
  CHECK(record.cause == FailureCause::kMismatch);
}
