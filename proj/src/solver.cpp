#include "bwformal/solver.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bwformal/subprocess.hpp"
#include "bwformal/validator.hpp"

namespace bwformal {

namespace {

constexpr const char* kTable = "";  // sentinel support meaning "on the table"

BlocksState checked_state(const std::set<Atom>& atoms,
                          const std::vector<std::string>& universe,
                          AtomCheckMode mode, const char* which) {
  StateCheck check = atoms_to_state(atoms, universe, mode);
  if (!check.ok()) {
    std::string what = std::string("ill-formed ") + which + ":";
    for (const auto& note : check.defects) {
      what += " [" + to_string(note.code) + "] " + note.detail + ";";
    }
    throw IllFormedProblem(what, check.defects);
  }
  return *check.state;
}

std::map<std::string, std::string> support_map(const BlocksState& state) {
  std::map<std::string, std::string> sup;
  for (const auto& stack : state.stacks) {
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) sup[stack[i]] = stack[i + 1];
    sup[stack.back()] = kTable;
  }
  return sup;
}

// Closed world: the blocks that exist are the ones the init atoms mention.
// Declared-but-unreferenced objects have no position and cannot take part
// in the plan; declaration order is kept for determinism.
std::vector<std::string> init_universe(const ProblemModel& problem) {
  std::set<std::string> referenced;
  for (const auto& atom : problem.init) {
    for (const auto& arg : atom.args) referenced.insert(arg);
  }
  std::vector<std::string> universe;
  std::set<std::string> added;
  for (const auto& obj : problem.objects) {
    if (referenced.count(obj) && added.insert(obj).second) {
      universe.push_back(obj);
    }
  }
  for (const auto& atom : problem.init) {
    for (const auto& arg : atom.args) {
      if (added.insert(arg).second) universe.push_back(arg);
    }
  }
  return universe;
}

}  // namespace

Plan solve_heuristic(const ProblemModel& problem) {
  std::vector<std::string> universe = init_universe(problem);
  BlocksState init =
      checked_state(problem.init, universe, AtomCheckMode::kInit, "init");
  BlocksState goal =
      checked_state(problem.goal, universe, AtomCheckMode::kGoal, "goal");

  std::map<std::string, std::string> goal_sup = support_map(goal);

  // blocks already in final position, checked from the table up
  std::set<std::string> settled;
  for (const auto& stack : init.stacks) {
    bool below_ok = true;
    for (std::size_t i = stack.size(); i-- > 0;) {
      const std::string under = i + 1 < stack.size() ? stack[i + 1] : kTable;
      auto want = goal_sup.find(stack[i]);
      below_ok = below_ok && want != goal_sup.end() && want->second == under;
      if (below_ok) settled.insert(stack[i]);
    }
  }

  // phase 1: park everything unsettled on the table, top down per stack
  std::vector<GroundAction> work;
  for (const auto& stack : init.stacks) {
    for (std::size_t i = 0; i + 1 < stack.size(); ++i) {
      if (settled.count(stack[i])) break;  // settled prefix reached
      work.push_back({"unstack", {stack[i], stack[i + 1]}});
      work.push_back({"putdown", {stack[i]}});
    }
  }

  // phase 2: assemble goal stacks bottom up
  for (const auto& stack : goal.stacks) {
    for (std::size_t i = stack.size() - 1; i-- > 0;) {
      if (settled.count(stack[i])) continue;
      work.push_back({"pickup", {stack[i]}});
      work.push_back({"stack", {stack[i], stack[i + 1]}});
    }
  }

  Plan plan;
  if (init.holding) {
    if (init.holding == goal.holding && work.empty()) return plan;
    plan.steps.push_back({"putdown", {*init.holding}});
  }
  plan.steps.insert(plan.steps.end(), work.begin(), work.end());
  // the rearranging actions need an empty arm, so a held goal block is
  // picked back up last
  if (goal.holding && (goal.holding != init.holding || !work.empty())) {
    plan.steps.push_back({"pickup", {*goal.holding}});
  }
  return plan;
}

namespace {

std::string encode(const BlocksState& state) {
  std::vector<std::string> parts;
  for (const auto& stack : state.stacks) {
    std::string s;
    for (const auto& b : stack) {
      s += b;
      s += ',';
    }
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += ';';
  }
  out += '|';
  if (state.holding) out += *state.holding;
  return out;
}

struct Node {
  BlocksState state;
  std::size_t parent;
  GroundAction action;
};

}  // namespace

BfsResult solve_optimal_bfs(const ProblemModel& problem,
                            std::size_t state_budget) {
  std::vector<std::string> universe = init_universe(problem);
  BlocksState init =
      checked_state(problem.init, universe, AtomCheckMode::kInit, "init");
  BlocksState goal =
      checked_state(problem.goal, universe, AtomCheckMode::kGoal, "goal");
  std::string target = encode(goal);

  BfsResult result;
  std::vector<Node> nodes;
  nodes.push_back({init, 0, {}});
  std::set<std::string> seen = {encode(init)};
  std::deque<std::size_t> frontier = {0};

  auto reconstruct = [&](std::size_t idx) {
    Plan plan;
    while (idx != 0) {
      plan.steps.push_back(nodes[idx].action);
      idx = nodes[idx].parent;
    }
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
  };
  if (encode(init) == target) {
    result.plan = Plan{};
    return result;
  }

  auto visit = [&](std::size_t parent, BlocksState next, GroundAction action)
      -> std::optional<Plan> {
    std::string key = encode(next);
    if (!seen.insert(key).second) return std::nullopt;
    nodes.push_back({std::move(next), parent, std::move(action)});
    if (key == target) return reconstruct(nodes.size() - 1);
    frontier.push_back(nodes.size() - 1);
    return std::nullopt;
  };

  while (!frontier.empty() && seen.size() <= state_budget) {
    std::size_t idx = frontier.front();
    frontier.pop_front();
    const BlocksState cur = nodes[idx].state;  // copy: nodes may reallocate
    ++result.expanded;

    if (cur.holding) {
      std::string held = *cur.holding;
      {
        BlocksState next = cur;
        next.holding.reset();
        next.stacks.push_back({held});
        if (auto plan = visit(idx, std::move(next), {"putdown", {held}})) {
          result.plan = std::move(plan);
          return result;
        }
      }
      for (std::size_t s = 0; s < cur.stacks.size(); ++s) {
        BlocksState next = cur;
        next.holding.reset();
        next.stacks[s].insert(next.stacks[s].begin(), held);
        GroundAction act{"stack", {held, cur.stacks[s].front()}};
        if (auto plan = visit(idx, std::move(next), std::move(act))) {
          result.plan = std::move(plan);
          return result;
        }
      }
    } else {
      for (std::size_t s = 0; s < cur.stacks.size(); ++s) {
        const auto& stack = cur.stacks[s];
        BlocksState next = cur;
        next.holding = stack.front();
        GroundAction act;
        if (stack.size() == 1) {
          act = {"pickup", {stack.front()}};
          next.stacks.erase(next.stacks.begin() + s);
        } else {
          act = {"unstack", {stack.front(), stack[1]}};
          next.stacks[s].erase(next.stacks[s].begin());
        }
        if (auto plan = visit(idx, std::move(next), std::move(act))) {
          result.plan = std::move(plan);
          return result;
        }
      }
    }
  }
  return result;  // no plan: budget exhausted
}

std::string to_string(ExternalResult::Status s) {
  switch (s) {
    case ExternalResult::Status::kOk: return "ok";
    case ExternalResult::Status::kSpawnFailed: return "spawn-failed";
    case ExternalResult::Status::kNonzeroExit: return "nonzero-exit";
    case ExternalResult::Status::kTimeout: return "timeout";
    case ExternalResult::Status::kUnparseable: return "unparseable";
  }
  return "?";
}

namespace {

void replace_all(std::string& text, const std::string& needle,
                 const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
}

}  // namespace

ExternalResult solve_external(const std::filesystem::path& domain_path,
                              const std::filesystem::path& problem_path,
                              const ExternalPlannerConfig& config) {
  ExternalResult result;
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::path scratch =
      std::filesystem::temp_directory_path(ec) /
      ("bwformal-ext-" + std::to_string(::getpid()) + "-" +
       std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(scratch, ec);
  if (ec) {
    result.detail = "cannot create scratch directory";
    return result;
  }

  std::string command = config.command_template;
  bool wants_file = command.find("{output}") != std::string::npos;
  std::filesystem::path output = scratch / "plan.txt";
  replace_all(command, "{domain}",
              std::filesystem::absolute(domain_path).string());
  replace_all(command, "{problem}",
              std::filesystem::absolute(problem_path).string());
  replace_all(command, "{output}", output.string());

  RunSpec spec;
  spec.argv = split_command(command);
  spec.cwd = scratch;
  spec.timeout = config.timeout;
  RunResult run = run_process(spec);

  auto cleanup = [&] { std::filesystem::remove_all(scratch, ec); };
  if (run.status == RunResult::Status::kTimeout) {
    result.status = ExternalResult::Status::kTimeout;
    result.detail = "planner hit the " +
                    std::to_string(config.timeout.count()) + " ms limit";
    cleanup();
    return result;
  }
  if (run.status != RunResult::Status::kExited) {
    result.status = run.status == RunResult::Status::kSpawnFailed
                        ? ExternalResult::Status::kSpawnFailed
                        : ExternalResult::Status::kNonzeroExit;
    result.detail = run.status == RunResult::Status::kSignaled
                        ? "killed by signal " + std::to_string(run.term_signal)
                        : "could not start the planner";
    cleanup();
    return result;
  }
  result.exit_code = run.exit_code;
  if (run.exit_code != 0) {
    result.status = ExternalResult::Status::kNonzeroExit;
    result.detail = run.err.empty() ? run.out : run.err;
    cleanup();
    return result;
  }

  std::string plan_text;
  if (wants_file) {
    std::ifstream in(output, std::ios::binary);
    if (!in) {
      result.status = ExternalResult::Status::kUnparseable;
      result.detail = "planner wrote no output file";
      cleanup();
      return result;
    }
    plan_text.assign((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
  } else {
    plan_text = run.out;
  }
  cleanup();

  try {
    result.plan = parse_plan(plan_text);
    result.status = ExternalResult::Status::kOk;
  } catch (const PlanParseError& e) {
    result.status = ExternalResult::Status::kUnparseable;
    result.detail = e.what();
  }
  return result;
}

}  // namespace bwformal
