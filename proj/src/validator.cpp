#include "bwformal/validator.hpp"

#include <map>
#include <nlohmann/json.hpp>

namespace bwformal {

std::string to_string(FailureReason r) {
  switch (r) {
    case FailureReason::kNone: return "none";
    case FailureReason::kUnknownAction: return "unknown-action";
    case FailureReason::kArityMismatch: return "arity-mismatch";
    case FailureReason::kPreconditionUnsatisfied:
      return "precondition-unsatisfied";
    case FailureReason::kGoalUnmet: return "goal-unmet";
  }
  return "?";
}

std::string Verdict::to_json() const {
  nlohmann::json j;
  j["valid"] = valid;
  j["reason"] = to_string(reason);
  if (failure_step) j["failure_step"] = *failure_step;
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : offending) atoms.push_back(atom.to_text());
  j["offending"] = atoms;
  return j.dump();
}

namespace {

Atom ground(const Atom& lifted, const std::map<std::string, std::string>& sub) {
  Atom out;
  out.pred = lifted.pred;
  for (const auto& arg : lifted.args) {
    auto it = sub.find(arg);
    out.args.push_back(it == sub.end() ? arg : it->second);
  }
  return out;
}

}  // namespace

Verdict validate(const DomainModel& domain, const ProblemModel& problem,
                 const Plan& plan) {
  Verdict verdict;
  std::set<Atom> state = problem.init;

  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const GroundAction& step = plan.steps[i];
    const ActionSchema* schema = domain.find_action(step.name);
    if (!schema) {
      verdict.failure_step = i;
      verdict.reason = FailureReason::kUnknownAction;
      verdict.final_state = std::move(state);
      return verdict;
    }
    if (schema->params.size() != step.args.size()) {
      verdict.failure_step = i;
      verdict.reason = FailureReason::kArityMismatch;
      verdict.final_state = std::move(state);
      return verdict;
    }
    std::map<std::string, std::string> sub;
    for (std::size_t p = 0; p < schema->params.size(); ++p) {
      sub[schema->params[p]] = step.args[p];
    }
    std::vector<Atom> unmet;
    for (const auto& pre : schema->preconditions) {
      Atom atom = ground(pre, sub);
      if (!state.count(atom)) unmet.push_back(std::move(atom));
    }
    if (!unmet.empty()) {
      verdict.failure_step = i;
      verdict.reason = FailureReason::kPreconditionUnsatisfied;
      verdict.offending = std::move(unmet);
      verdict.final_state = std::move(state);
      return verdict;
    }
    for (const auto& del : schema->del_effects) state.erase(ground(del, sub));
    for (const auto& add : schema->add_effects) state.insert(ground(add, sub));
  }

  std::vector<Atom> unmet;
  for (const auto& atom : problem.goal) {
    if (!state.count(atom)) unmet.push_back(atom);
  }
  if (!unmet.empty()) {
    verdict.reason = FailureReason::kGoalUnmet;
    verdict.offending = std::move(unmet);
    verdict.final_state = std::move(state);
    return verdict;
  }
  verdict.valid = true;
  verdict.final_state = std::move(state);
  return verdict;
}

}  // namespace bwformal
