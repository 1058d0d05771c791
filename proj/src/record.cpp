#include "bwformal/record.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace bwformal {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kPlanner: return "planner";
    case Strategy::kFormalizer: return "formalizer";
    case Strategy::kDnc: return "dnc";
    case Strategy::kHigherOrder: return "higher-order";
  }
  return "unknown";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "planner") return Strategy::kPlanner;
  if (s == "formalizer") return Strategy::kFormalizer;
  if (s == "dnc") return Strategy::kDnc;
  if (s == "higher-order") return Strategy::kHigherOrder;
  throw std::invalid_argument("unknown strategy: " + s);
}

std::string to_string(FailureCause c) {
  switch (c) {
    case FailureCause::kNone: return "none";
    case FailureCause::kBackend: return "backend";
    case FailureCause::kExtraction: return "extraction";
    case FailureCause::kPlanParse: return "plan-parse";
    case FailureCause::kPlanInvalid: return "plan-invalid";
    case FailureCause::kPddlParse: return "pddl-parse";
    case FailureCause::kMismatch: return "mismatch";
    case FailureCause::kHeaderExtraction: return "header-extraction";
    case FailureCause::kSandboxTimeout: return "sandbox-timeout";
    case FailureCause::kSandboxExit: return "sandbox-exit";
    case FailureCause::kSandboxMissingOutput: return "sandbox-missing-output";
    case FailureCause::kGuardRejected: return "guard-rejected";
  }
  return "unknown";
}

namespace {

FailureCause cause_from_string(const std::string& s) {
  static const std::pair<const char*, FailureCause> table[] = {
      {"none", FailureCause::kNone},
      {"backend", FailureCause::kBackend},
      {"extraction", FailureCause::kExtraction},
      {"plan-parse", FailureCause::kPlanParse},
      {"plan-invalid", FailureCause::kPlanInvalid},
      {"pddl-parse", FailureCause::kPddlParse},
      {"mismatch", FailureCause::kMismatch},
      {"header-extraction", FailureCause::kHeaderExtraction},
      {"sandbox-timeout", FailureCause::kSandboxTimeout},
      {"sandbox-exit", FailureCause::kSandboxExit},
      {"sandbox-missing-output", FailureCause::kSandboxMissingOutput},
      {"guard-rejected", FailureCause::kGuardRejected},
  };
  for (const auto& [name, cause] : table) {
    if (s == name) return cause;
  }
  throw std::invalid_argument("unknown failure cause: " + s);
}

}  // namespace

std::string EvalRecord::to_json_line() const {
  nlohmann::json j;
  j["run_id"] = run_id;
  j["instance_id"] = instance_id;
  j["family"] = to_string(family);
  j["n"] = n;
  j["strategy"] = to_string(strategy);
  j["backend_id"] = backend_id;
  j["valid"] = valid;
  j["cause"] = to_string(cause);
  j["flags"] = {
      {"missing_init", flags.missing_init},
      {"extra_init", flags.extra_init},
      {"missing_goal", flags.missing_goal},
      {"extra_goal", flags.extra_goal},
  };
  if (plan_length) {
    j["plan_length"] = *plan_length;
  } else {
    j["plan_length"] = nullptr;
  }
  if (end_to_end_valid) {
    j["end_to_end_valid"] = *end_to_end_valid;
  } else {
    j["end_to_end_valid"] = nullptr;
  }
  j["compression_ratio"] = compression_ratio;
  j["wall_ms"] = wall_ms;
  j["artifact_paths"] = artifact_paths;
  j["events"] = events;
  return j.dump();
}

EvalRecord EvalRecord::from_json_line(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  EvalRecord r;
  r.run_id = j.at("run_id").get<std::string>();
  r.instance_id = j.at("instance_id").get<std::string>();
  r.family = family_from_string(j.at("family").get<std::string>());
  r.n = j.at("n").get<int>();
  r.strategy = strategy_from_string(j.at("strategy").get<std::string>());
  r.backend_id = j.at("backend_id").get<std::string>();
  r.valid = j.at("valid").get<bool>();
  r.cause = cause_from_string(j.at("cause").get<std::string>());
  const auto& flags = j.at("flags");
  r.flags.missing_init = flags.at("missing_init").get<bool>();
  r.flags.extra_init = flags.at("extra_init").get<bool>();
  r.flags.missing_goal = flags.at("missing_goal").get<bool>();
  r.flags.extra_goal = flags.at("extra_goal").get<bool>();
  if (!j.at("plan_length").is_null()) {
    r.plan_length = j.at("plan_length").get<int>();
  }
  if (!j.at("end_to_end_valid").is_null()) {
    r.end_to_end_valid = j.at("end_to_end_valid").get<bool>();
  }
  r.compression_ratio = j.at("compression_ratio").get<double>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.artifact_paths = j.at("artifact_paths").get<std::vector<std::string>>();
  r.events = j.at("events").get<std::vector<std::string>>();
  return r;
}

}  // namespace bwformal
