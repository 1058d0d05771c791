#include "bwformal/oracle_backend.hpp"

#include <cstring>
#include <stdexcept>

#include "bwformal/nl.hpp"
#include "bwformal/pipeline.hpp"
#include "bwformal/plan.hpp"
#include "bwformal/solver.hpp"

namespace bwformal {

namespace {

enum class Stage { kPlanner, kFormalizer, kDncHeader, kDncFact, kHigherOrder };

// The system prompts each name the tag they expect, which is enough to
// tell the call sites apart.
Stage detect_stage(const std::string& system) {
  if (system.find("<generator>") != std::string::npos)
    return Stage::kHigherOrder;
  if (system.find("<header>") != std::string::npos) return Stage::kDncHeader;
  if (system.find("<fact>") != std::string::npos) return Stage::kDncFact;
  if (system.find("<problem_file>") != std::string::npos)
    return Stage::kFormalizer;
  if (system.find("<plan>") != std::string::npos) return Stage::kPlanner;
  throw std::runtime_error("prompt names no known tag");
}

std::string after_marker(const std::string& user, const char* marker) {
  std::size_t pos = user.rfind(marker);
  if (pos == std::string::npos) {
    throw std::runtime_error(std::string("prompt lacks the \"") + marker +
                             "\" section");
  }
  std::string rest = user.substr(pos + std::strlen(marker));
  while (!rest.empty() && (rest.back() == '\n' || rest.back() == '\r' ||
                           rest.back() == ' ')) {
    rest.pop_back();
  }
  return rest;
}

ProblemModel model_from_description(const std::string& description) {
  ParsedNl parsed = parse_nl_description(description);
  ProblemModel model;
  model.problem_name = "oracle";
  model.domain_name = "blocksworld";
  for (int i = 1; i <= parsed.n; ++i) {
    model.objects.push_back("block" + std::to_string(i));
  }
  model.init = std::move(parsed.init);
  model.goal = std::move(parsed.goal);
  return model;
}

std::string header_text(int n) {
  std::string objs;
  for (int i = 1; i <= n; ++i) objs += " block" + std::to_string(i);
  return "(define (problem oracle)\n  (:domain blocksworld)\n  (:objects" +
         objs + "))";
}

std::string python_atom_list(const std::set<Atom>& atoms) {
  std::string out = "[\n";
  for (const auto& atom : atoms) {
    out += "    \"" + atom.to_text() + "\",\n";
  }
  out += "]";
  return out;
}

std::string generator_program(const ProblemModel& model) {
  std::string n = std::to_string(model.objects.size());
  return "objects = [\"block\" + str(i) for i in range(1, " + n +
         " + 1)]\n"
         "init = " +
         python_atom_list(model.init) +
         "\n"
         "goal = " +
         python_atom_list(model.goal) +
         "\n"
         "lines = [\"(define (problem oracle)\", \"  (:domain blocksworld)\"]\n"
         "lines.append(\"  (:objects \" + \" \".join(objects) + \")\")\n"
         "lines.append(\"  (:init\")\n"
         "for atom in init:\n"
         "    lines.append(\"    \" + atom)\n"
         "lines.append(\"  )\")\n"
         "lines.append(\"  (:goal (and\")\n"
         "for atom in goal:\n"
         "    lines.append(\"    \" + atom)\n"
         "lines.append(\"  ))\")\n"
         "lines.append(\")\")\n"
         "with open(\"problem.pddl\", \"w\") as handle:\n"
         "    handle.write(\"\\n\".join(lines) + \"\\n\")\n";
}

CompletionResult ok_reply(std::string text) {
  CompletionResult res;
  res.ok = true;
  res.raw_response = text;
  res.text = std::move(text);
  return res;
}

CompletionResult oracle_answer(const std::string& system,
                               const std::string& user) {
  switch (detect_stage(system)) {
    case Stage::kPlanner: {
      ProblemModel model = model_from_description(
          after_marker(user, prompt_sections::kProblemNl));
      Plan plan = solve_heuristic(model);
      return ok_reply("<plan>\n" + print_plan(plan) + "</plan>");
    }
    case Stage::kFormalizer: {
      ProblemModel model = model_from_description(
          after_marker(user, prompt_sections::kProblemNl));
      return ok_reply("<problem_file>\n" + print_canonical(model) +
                      "</problem_file>");
    }
    case Stage::kDncHeader: {
      ParsedNl parsed = parse_nl_description(
          after_marker(user, prompt_sections::kProblemNl));
      return ok_reply("<header>\n" + header_text(parsed.n) + "\n</header>");
    }
    case Stage::kDncFact: {
      std::set<Atom> atoms =
          clause_to_atoms(after_marker(user, prompt_sections::kSentence));
      std::string joined;
      for (const auto& atom : atoms) {
        if (!joined.empty()) joined += ' ';
        joined += atom.to_text();
      }
      return ok_reply("<fact>" + joined + "</fact>");
    }
    case Stage::kHigherOrder: {
      ProblemModel model = model_from_description(
          after_marker(user, prompt_sections::kProblemNl));
      return ok_reply("<generator>\n" + generator_program(model) +
                      "</generator>");
    }
  }
  throw std::logic_error("unreachable stage");
}

class OracleBackend : public Backend {
 public:
  CompletionResult complete(const std::string& system,
                            const std::string& user,
                            const CompletionParams&) override {
    CompletionResult res;
    res.raw_request = system + "\n---\n" + user;
    try {
      CompletionResult answer = oracle_answer(system, user);
      answer.raw_request = res.raw_request;
      return answer;
    } catch (const std::exception& e) {
      res.ok = false;
      res.error = e.what();
      return res;
    }
  }
  std::string id() const override { return "mock-oracle"; }
};

const char* kInfiniteLoop = "while True:\n    pass\n";
const char* kCrashing =
    "import sys\n"
    "for i in range(3):\n"
    "    pass\n"
    "sys.exit(3)\n";
const char* kNoOutput =
    "lines = []\n"
    "for i in range(3):\n"
    "    lines.append(str(i))\n"
    "print(\"\\n\".join(lines))\n";
const char* kLoopless = "print(\"(define (problem oracle))\")\n";

class CorruptBackend : public Backend {
 public:
  explicit CorruptBackend(Corruption corruption) : corruption_(corruption) {}

  CompletionResult complete(const std::string& system,
                            const std::string& user,
                            const CompletionParams& params) override {
    if (corruption_ == Corruption::kBackendError) {
      CompletionResult res;
      res.ok = false;
      res.error = "injected backend failure";
      res.raw_request = system + "\n---\n" + user;
      return res;
    }

    Stage stage;
    try {
      stage = detect_stage(system);
    } catch (const std::exception& e) {
      CompletionResult res;
      res.ok = false;
      res.error = e.what();
      return res;
    }

    switch (corruption_) {
      case Corruption::kBackendError:
        break;  // handled above
      case Corruption::kNoTag:
        return ok_reply("I considered the problem at length and believe the "
                        "answer is self-evident.");
      case Corruption::kUnclosedTag: {
        CompletionResult res = oracle_.complete(system, user, params);
        if (res.ok) {
          std::size_t cut = res.text.rfind("</");
          if (cut != std::string::npos) res.text.resize(cut);
          res.raw_response = res.text;
        }
        return res;
      }
      case Corruption::kMalformedPlan:
        if (stage == Stage::kPlanner) {
          return ok_reply("<plan>\n1: (pickup block1)\n</plan>");
        }
        break;
      case Corruption::kInvalidPlan:
        if (stage == Stage::kPlanner) {
          return ok_reply("<plan>\n(pickup block1)\n(pickup block1)\n</plan>");
        }
        break;
      case Corruption::kUnparseablePddl:
        if (stage == Stage::kFormalizer) {
          return ok_reply(
              "<problem_file>\n(define (problem broken)\n  (:domain "
              "blocksworld)\n  (:init (clear block1)\n</problem_file>");
        }
        break;
      case Corruption::kMissingGoalAtom:
        if (stage == Stage::kFormalizer) {
          ProblemModel model = model_from_description(
              after_marker(user, prompt_sections::kProblemNl));
          if (!model.goal.empty()) model.goal.erase(model.goal.begin());
          return ok_reply("<problem_file>\n" + print_canonical(model) +
                          "</problem_file>");
        }
        break;
      case Corruption::kExtraInitAtom:
        if (stage == Stage::kFormalizer) {
          ProblemModel model = model_from_description(
              after_marker(user, prompt_sections::kProblemNl));
          model.init.insert(Atom{"holding", {"block1"}});
          return ok_reply("<problem_file>\n" + print_canonical(model) +
                          "</problem_file>");
        }
        break;
      case Corruption::kBadHeader:
        if (stage == Stage::kDncHeader) {
          return ok_reply("The header is left as an exercise.");
        }
        break;
      case Corruption::kFactWithSection:
        if (stage == Stage::kDncFact) {
          return ok_reply("<fact>(:init (clear block1))</fact>");
        }
        break;
      case Corruption::kInfiniteLoopProgram:
        if (stage == Stage::kHigherOrder) {
          return ok_reply(std::string("<generator>\n") + kInfiniteLoop +
                          "</generator>");
        }
        break;
      case Corruption::kCrashingProgram:
        if (stage == Stage::kHigherOrder) {
          return ok_reply(std::string("<generator>\n") + kCrashing +
                          "</generator>");
        }
        break;
      case Corruption::kNoOutputProgram:
        if (stage == Stage::kHigherOrder) {
          return ok_reply(std::string("<generator>\n") + kNoOutput +
                          "</generator>");
        }
        break;
      case Corruption::kLooplessProgram:
        if (stage == Stage::kHigherOrder) {
          return ok_reply(std::string("<generator>\n") + kLoopless +
                          "</generator>");
        }
        break;
    }
    return oracle_.complete(system, user, params);
  }

  std::string id() const override {
    return "mock-corrupt:" + to_string(corruption_);
  }

 private:
  Corruption corruption_;
  OracleBackend oracle_;
};

}  // namespace

std::string to_string(Corruption c) {
  switch (c) {
    case Corruption::kBackendError: return "backend-error";
    case Corruption::kNoTag: return "no-tag";
    case Corruption::kUnclosedTag: return "unclosed-tag";
    case Corruption::kMalformedPlan: return "malformed-plan";
    case Corruption::kInvalidPlan: return "invalid-plan";
    case Corruption::kUnparseablePddl: return "unparseable-pddl";
    case Corruption::kMissingGoalAtom: return "missing-goal-atom";
    case Corruption::kExtraInitAtom: return "extra-init-atom";
    case Corruption::kBadHeader: return "bad-header";
    case Corruption::kFactWithSection: return "fact-with-section";
    case Corruption::kInfiniteLoopProgram: return "infinite-loop-program";
    case Corruption::kCrashingProgram: return "crashing-program";
    case Corruption::kNoOutputProgram: return "no-output-program";
    case Corruption::kLooplessProgram: return "loopless-program";
  }
  return "unknown";
}

std::unique_ptr<Backend> make_oracle_backend() {
  return std::make_unique<OracleBackend>();
}

std::unique_ptr<Backend> make_corrupt_backend(Corruption corruption) {
  return std::make_unique<CorruptBackend>(corruption);
}

}  // namespace bwformal
