#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bwformal/backend.hpp"
#include "bwformal/dataset.hpp"
#include "bwformal/record.hpp"
#include "bwformal/sandbox.hpp"

namespace bwformal {

struct PromptSet {
  std::string planner;
  std::string formalizer;
  std::string dnc_header;
  std::string dnc_fact;
  std::string higher_order;
};

struct StrategyConfig {
  Strategy strategy = Strategy::kFormalizer;
  PromptSet prompts;
  int max_retries = 2;  // extra attempts per call on extraction failure
  CompletionParams params;
  SandboxConfig sandbox;  // higher-order only

  /// dnc needs both header and fact prompts; higher-order needs a sandbox
  /// interpreter. Throws std::invalid_argument otherwise.
  void check() const;
};

/// Shared per-run context: the parsed domain plus its text forms that go
/// into prompts.
struct HarnessContext {
  DomainModel domain;
  std::string domain_pddl_text;
  std::string domain_nl_text;
};

HarnessContext builtin_context();

/// One pipeline evaluation. Bad model output never throws; every failure
/// mode lands in the record's cause. Artifacts (prompts, responses,
/// candidate files, generated programs) are collected for the caller to
/// persist.
EvalRecord run_planner(const ProblemInstance& instance,
                       const HarnessContext& ctx, Backend& backend,
                       const StrategyConfig& config,
                       std::vector<Artifact>* artifacts = nullptr);
EvalRecord run_formalizer(const ProblemInstance& instance,
                          const HarnessContext& ctx, Backend& backend,
                          const StrategyConfig& config,
                          std::vector<Artifact>* artifacts = nullptr);
EvalRecord run_dnc(const ProblemInstance& instance, const HarnessContext& ctx,
                   Backend& backend, const StrategyConfig& config,
                   std::vector<Artifact>* artifacts = nullptr);
EvalRecord run_higher_order(const ProblemInstance& instance,
                            const HarnessContext& ctx, Backend& backend,
                            const StrategyConfig& config,
                            std::vector<Artifact>* artifacts = nullptr);

/// Dispatches on config.strategy.
EvalRecord run_strategy(const ProblemInstance& instance,
                        const HarnessContext& ctx, Backend& backend,
                        const StrategyConfig& config,
                        std::vector<Artifact>* artifacts = nullptr);

/// User-message composition; the section markers below are what the
/// scripted oracle backend parses back out.
namespace prompt_sections {
inline constexpr const char* kDomainNl = "Domain description:\n";
inline constexpr const char* kDomainPddl = "Domain PDDL:\n";
inline constexpr const char* kProblemNl = "Problem description:\n";
inline constexpr const char* kSentence = "Sentence:\n";
}  // namespace prompt_sections

/// True when the program text contains at least one loop construct.
bool has_loop_construct(const std::string& program);

}  // namespace bwformal
