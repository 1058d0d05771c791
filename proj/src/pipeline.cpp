#include "bwformal/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "bwformal/assets.hpp"
#include "bwformal/nl.hpp"
#include "bwformal/solver.hpp"
#include "bwformal/tags.hpp"
#include "bwformal/validator.hpp"

namespace bwformal {

void StrategyConfig::check() const {
  switch (strategy) {
    case Strategy::kPlanner:
      if (prompts.planner.empty())
        throw std::invalid_argument("planner strategy needs a planner prompt");
      break;
    case Strategy::kFormalizer:
      if (prompts.formalizer.empty())
        throw std::invalid_argument(
            "formalizer strategy needs a formalizer prompt");
      break;
    case Strategy::kDnc:
      if (prompts.dnc_header.empty() || prompts.dnc_fact.empty())
        throw std::invalid_argument(
            "divide-and-conquer needs both the header and the fact prompt");
      break;
    case Strategy::kHigherOrder:
      if (prompts.higher_order.empty())
        throw std::invalid_argument(
            "higher-order strategy needs its prompt");
      if (sandbox.interpreter_template.empty())
        throw std::invalid_argument(
            "higher-order strategy needs a sandbox interpreter command");
      break;
  }
}

HarnessContext builtin_context() {
  HarnessContext ctx;
  ctx.domain_pddl_text = builtin_domain_pddl();
  ctx.domain_nl_text = builtin_domain_nl();
  ctx.domain = parse_domain(ctx.domain_pddl_text);
  return ctx;
}

bool has_loop_construct(const std::string& program) {
  std::string token;
  auto flush = [&] {
    bool hit = token == "for" || token == "while";
    token.clear();
    return hit;
  };
  for (char c : program) {
    bool ident = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                 (c >= '0' && c <= '9') || c == '_';
    if (ident) {
      token += c;
    } else if (flush()) {
      return true;
    }
  }
  return flush();
}

namespace {

using Clock = std::chrono::steady_clock;

std::string compose_user(const HarnessContext& ctx,
                         const std::string& problem_nl) {
  return std::string(prompt_sections::kDomainNl) + ctx.domain_nl_text + "\n" +
         prompt_sections::kDomainPddl + ctx.domain_pddl_text + "\n" +
         prompt_sections::kProblemNl + problem_nl + "\n";
}

std::string compose_sentence_user(const HarnessContext& ctx,
                                  const std::string& clause) {
  return std::string(prompt_sections::kDomainNl) + ctx.domain_nl_text + "\n" +
         prompt_sections::kDomainPddl + ctx.domain_pddl_text + "\n" +
         prompt_sections::kSentence + clause + "\n";
}

struct Sink {
  EvalRecord* record;
  std::vector<Artifact>* store;

  void add(const std::string& name, const std::string& content) {
    std::string relpath = record->instance_id + "/" + name;
    record->artifact_paths.push_back(relpath);
    if (store) store->push_back({std::move(relpath), content});
  }
};

EvalRecord base_record(const ProblemInstance& instance, Strategy strategy,
                       Backend& backend) {
  EvalRecord record;
  record.instance_id = instance.id;
  record.family = instance.family;
  record.n = instance.n;
  record.strategy = strategy;
  record.backend_id = backend.id();
  record.compression_ratio = instance.compression_ratio();
  return record;
}

/// One tagged completion with bounded retries on extraction failures.
/// Returns the tag body, or nothing after setting the failure cause.
std::optional<std::string> tagged_call(Backend& backend,
                                       const std::string& system,
                                       const std::string& user,
                                       const std::string& tag,
                                       const StrategyConfig& config,
                                       EvalRecord& record, Sink& sink,
                                       const std::string& name_prefix,
                                       FailureCause extraction_cause) {
  sink.add(name_prefix + "_prompt.txt", system + "\n---\n" + user);
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    CompletionResult res = backend.complete(system, user, config.params);
    sink.add(name_prefix + "_response_" + std::to_string(attempt + 1) + ".txt",
             res.ok ? res.raw_response : ("backend error: " + res.error));
    if (!res.ok) {
      record.cause = FailureCause::kBackend;
      record.events.push_back("backend failure: " + res.error);
      return std::nullopt;
    }
    TagResult tagged = extract_tagged(res.text, tag);
    if (tagged.ok()) return tagged.text;
    record.events.push_back(
        "attempt " + std::to_string(attempt + 1) + ": <" + tag + "> " +
        (tagged.status == TagResult::Status::kUnclosed ? "unclosed"
                                                       : "absent"));
  }
  record.cause = extraction_cause;
  return std::nullopt;
}

/// Shared back half of the formalizer-shaped strategies: diff against
/// ground truth, then cross-check end to end when the diff matches.
void evaluate_candidate(const ProblemModel& candidate,
                        const ProblemInstance& instance,
                        const HarnessContext& ctx, EvalRecord& record,
                        Sink& sink) {
  DiffReport diff = diff_problems(candidate, instance.ground_truth);
  record.flags = classify(diff);
  sink.add("diff.json", diff.to_json());
  if (!diff.match) {
    record.valid = false;
    record.cause = FailureCause::kMismatch;
    if (!diff.object_defects.empty()) {
      record.events.push_back("object defects: " +
                              std::to_string(diff.object_defects.size()));
    }
    if (!diff.structural_defects.empty()) {
      record.events.push_back("structural defects: " +
                              std::to_string(diff.structural_defects.size()));
    }
    return;
  }
  record.valid = true;
  record.cause = FailureCause::kNone;
  try {
    Plan plan = solve_heuristic(candidate);
    Verdict verdict = validate(ctx.domain, instance.ground_truth, plan);
    record.end_to_end_valid = verdict.valid;
    if (verdict.valid) {
      record.plan_length = static_cast<int>(plan.size());
    } else {
      record.events.push_back("end-to-end cross-check failed: " +
                              to_string(verdict.reason));
    }
    sink.add("crosscheck_plan.txt", print_plan(plan));
  } catch (const IllFormedProblem& e) {
    record.end_to_end_valid = false;
    record.events.push_back(std::string("end-to-end cross-check failed: ") +
                            e.what());
  }
}

}  // namespace

EvalRecord run_planner(const ProblemInstance& instance,
                       const HarnessContext& ctx, Backend& backend,
                       const StrategyConfig& config,
                       std::vector<Artifact>* artifacts) {
  EvalRecord record = base_record(instance, Strategy::kPlanner, backend);
  Sink sink{&record, artifacts};
  auto start = Clock::now();
  auto finish = [&]() -> EvalRecord& {
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    return record;
  };

  std::string user = compose_user(ctx, instance.nl_description);
  auto body = tagged_call(backend, config.prompts.planner, user, "plan",
                          config, record, sink, "planner",
                          FailureCause::kExtraction);
  if (!body) return finish();
  sink.add("plan.txt", *body);

  Plan plan;
  try {
    plan = parse_plan(*body);
  } catch (const PlanParseError& e) {
    record.cause = FailureCause::kPlanParse;
    record.events.push_back(e.what());
    return finish();
  }

  Verdict verdict = validate(ctx.domain, instance.ground_truth, plan);
  sink.add("verdict.json", verdict.to_json());
  if (verdict.valid) {
    record.valid = true;
    record.plan_length = static_cast<int>(plan.size());
  } else {
    record.cause = FailureCause::kPlanInvalid;
    record.events.push_back("plan invalid: " + to_string(verdict.reason));
  }
  return finish();
}

EvalRecord run_formalizer(const ProblemInstance& instance,
                          const HarnessContext& ctx, Backend& backend,
                          const StrategyConfig& config,
                          std::vector<Artifact>* artifacts) {
  EvalRecord record = base_record(instance, Strategy::kFormalizer, backend);
  Sink sink{&record, artifacts};
  auto start = Clock::now();
  auto finish = [&]() -> EvalRecord& {
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    return record;
  };

  std::string user = compose_user(ctx, instance.nl_description);
  auto body = tagged_call(backend, config.prompts.formalizer, user,
                          "problem_file", config, record, sink, "formalizer",
                          FailureCause::kExtraction);
  if (!body) return finish();
  sink.add("candidate.pddl", *body);

  ProblemModel candidate;
  try {
    candidate = parse_problem(*body, &ctx.domain);
  } catch (const ParseError& e) {
    record.cause = FailureCause::kPddlParse;
    record.events.push_back(e.what());
    return finish();
  }
  evaluate_candidate(candidate, instance, ctx, record, sink);
  return finish();
}

namespace {

std::string consolidate(const std::string& header,
                        const std::vector<Atom>& init,
                        const std::vector<Atom>& goal) {
  std::string text = header;
  while (!text.empty() &&
         (text.back() == ' ' || text.back() == '\n' || text.back() == '\t' ||
          text.back() == '\r')) {
    text.pop_back();
  }
  std::string sections = "\n  (:init\n";
  for (const auto& atom : init) sections += "    " + atom.to_text() + "\n";
  sections += "  )\n  (:goal (and\n";
  for (const auto& atom : goal) sections += "    " + atom.to_text() + "\n";
  sections += "  ))\n";
  std::size_t last = text.rfind(')');
  if (last == std::string::npos) return text + sections + ")";
  return text.substr(0, last) + sections + text.substr(last);
}

/// The fact prompt forbids section headers in replies; such replies are
/// retried and count as failures afterwards.
bool fact_reply_rejected(const std::string& body) {
  return body.find(":init") != std::string::npos ||
         body.find(":goal") != std::string::npos;
}

std::vector<Atom> atoms_from_fact(const std::string& body) {
  std::vector<Atom> atoms;
  // example fact bodies in the prompt carry stray closing parens, so the
  // lenient parse is the right one here
  for (const SExpr& node : parse_sexprs_lenient(body)) {
    if (node.is_atom || node.children.empty() || !node.children[0].is_atom) {
      throw ParseError("fact is not a predicate application", node.offset);
    }
    std::vector<const SExpr*> items;
    if (node.children[0].token == "and") {
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        items.push_back(&node.children[i]);
      }
    } else {
      items.push_back(&node);
    }
    for (const SExpr* item : items) {
      if (item->is_atom || item->children.empty() ||
          !item->children[0].is_atom) {
        throw ParseError("fact is not a predicate application", item->offset);
      }
      Atom atom;
      atom.pred = item->children[0].token;
      for (std::size_t i = 1; i < item->children.size(); ++i) {
        if (!item->children[i].is_atom) {
          throw ParseError("fact arguments must be symbols",
                           item->children[i].offset);
        }
        atom.args.push_back(item->children[i].token);
      }
      atoms.push_back(std::move(atom));
    }
  }
  return atoms;
}

}  // namespace

EvalRecord run_dnc(const ProblemInstance& instance, const HarnessContext& ctx,
                   Backend& backend, const StrategyConfig& config,
                   std::vector<Artifact>* artifacts) {
  EvalRecord record = base_record(instance, Strategy::kDnc, backend);
  Sink sink{&record, artifacts};
  auto start = Clock::now();
  auto finish = [&]() -> EvalRecord& {
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    return record;
  };

  std::string header_user = compose_user(ctx, instance.nl_description);
  auto header = tagged_call(backend, config.prompts.dnc_header, header_user,
                            "header", config, record, sink, "header",
                            FailureCause::kHeaderExtraction);
  if (!header) return finish();
  sink.add("header.txt", *header);

  std::vector<NlClause> clauses = segment_clauses(instance.nl_description);
  std::vector<Atom> init_atoms, goal_atoms;
  std::string fact_log;
  int gaps = 0;

  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const NlClause& clause = clauses[c];
    std::string user = compose_sentence_user(ctx, clause.text);
    bool settled = false;
    for (int attempt = 0; attempt <= config.max_retries && !settled;
         ++attempt) {
      CompletionResult res =
          backend.complete(config.prompts.dnc_fact, user, config.params);
      if (!res.ok) {
        record.events.push_back("clause " + std::to_string(c + 1) +
                                ": backend failure: " + res.error);
        break;
      }
      fact_log += "--- clause " + std::to_string(c + 1) + " attempt " +
                  std::to_string(attempt + 1) + ": " + clause.text + "\n" +
                  res.text + "\n";
      TagResult tagged = extract_tagged(res.text, "fact");
      if (!tagged.ok()) {
        record.events.push_back("clause " + std::to_string(c + 1) +
                                ": <fact> missing");
        continue;
      }
      if (fact_reply_rejected(tagged.text)) {
        record.events.push_back("clause " + std::to_string(c + 1) +
                                ": rejected, contains a section header");
        continue;
      }
      std::vector<Atom> atoms;
      try {
        atoms = atoms_from_fact(tagged.text);
      } catch (const ParseError& e) {
        record.events.push_back("clause " + std::to_string(c + 1) + ": " +
                                e.what());
        continue;
      }
      if (atoms.empty()) {
        record.events.push_back("clause " + std::to_string(c + 1) +
                                ": empty fact");
        continue;
      }
      if (atoms.size() > 1) {
        record.events.push_back("clause " + std::to_string(c + 1) + ": " +
                                std::to_string(atoms.size()) +
                                " atoms from one clause");
      }
      auto& target = clause.is_goal ? goal_atoms : init_atoms;
      target.insert(target.end(), atoms.begin(), atoms.end());
      settled = true;
    }
    if (!settled) {
      ++gaps;
      record.events.push_back("clause " + std::to_string(c + 1) +
                              " left a gap: " + clause.text);
    }
  }
  sink.add("facts.txt", fact_log);
  if (gaps > 0) {
    record.events.push_back(std::to_string(gaps) + " clause gap(s)");
  }

  std::string consolidated = consolidate(*header, init_atoms, goal_atoms);
  sink.add("consolidated.pddl", consolidated);

  ProblemModel candidate;
  try {
    candidate = parse_problem(consolidated, &ctx.domain);
  } catch (const ParseError& e) {
    record.cause = FailureCause::kPddlParse;
    record.events.push_back(e.what());
    return finish();
  }
  evaluate_candidate(candidate, instance, ctx, record, sink);
  return finish();
}

EvalRecord run_higher_order(const ProblemInstance& instance,
                            const HarnessContext& ctx, Backend& backend,
                            const StrategyConfig& config,
                            std::vector<Artifact>* artifacts) {
  EvalRecord record = base_record(instance, Strategy::kHigherOrder, backend);
  Sink sink{&record, artifacts};
  auto start = Clock::now();
  auto finish = [&]() -> EvalRecord& {
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    return record;
  };

  std::string user = compose_user(ctx, instance.nl_description);
  auto program = tagged_call(backend, config.prompts.higher_order, user,
                             "generator", config, record, sink, "generator",
                             FailureCause::kExtraction);
  if (!program) return finish();
  sink.add("generator.py", *program);

  if (!has_loop_construct(*program)) {
    record.cause = FailureCause::kGuardRejected;
    record.events.push_back(
        "static guard: program has no loop construct");
    return finish();
  }

  SandboxResult run = run_generated_program(*program, config.sandbox);
  if (!run.stdout_text.empty()) sink.add("generator_stdout.txt", run.stdout_text);
  if (!run.stderr_text.empty()) sink.add("generator_stderr.txt", run.stderr_text);
  switch (run.status) {
    case SandboxResult::Status::kTimeout:
      record.cause = FailureCause::kSandboxTimeout;
      record.events.push_back("generator hit the wall-clock limit");
      return finish();
    case SandboxResult::Status::kSpawnFailed:
    case SandboxResult::Status::kNonzeroExit:
      record.cause = FailureCause::kSandboxExit;
      record.events.push_back("generator exit code " +
                              std::to_string(run.exit_code));
      return finish();
    case SandboxResult::Status::kMissingOutput:
      record.cause = FailureCause::kSandboxMissingOutput;
      record.events.push_back("generator wrote no " +
                              config.sandbox.output_filename);
      return finish();
    case SandboxResult::Status::kOk:
      break;
  }
  sink.add("problem.pddl", run.output_text);

  ProblemModel candidate;
  try {
    candidate = parse_problem(run.output_text, &ctx.domain);
  } catch (const ParseError& e) {
    record.cause = FailureCause::kPddlParse;
    record.events.push_back(e.what());
    return finish();
  }
  evaluate_candidate(candidate, instance, ctx, record, sink);
  return finish();
}

EvalRecord run_strategy(const ProblemInstance& instance,
                        const HarnessContext& ctx, Backend& backend,
                        const StrategyConfig& config,
                        std::vector<Artifact>* artifacts) {
  config.check();
  switch (config.strategy) {
    case Strategy::kPlanner:
      return run_planner(instance, ctx, backend, config, artifacts);
    case Strategy::kFormalizer:
      return run_formalizer(instance, ctx, backend, config, artifacts);
    case Strategy::kDnc:
      return run_dnc(instance, ctx, backend, config, artifacts);
    case Strategy::kHigherOrder:
      return run_higher_order(instance, ctx, backend, config, artifacts);
  }
  throw std::logic_error("unreachable strategy");
}

}  // namespace bwformal
