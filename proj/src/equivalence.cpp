#include "bwformal/equivalence.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace bwformal {

namespace {

std::set<Atom> minus(const std::set<Atom>& a, const std::set<Atom>& b) {
  std::set<Atom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

// Structural checks run over the blocks the atoms actually mention, so a
// declared-but-unused object is not reported as floating in midair. Absent
// atoms are the set differences' business.
std::vector<std::string> referenced_objects(const std::set<Atom>& atoms) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& atom : atoms) {
    for (const auto& arg : atom.args) {
      if (seen.insert(arg).second) out.push_back(arg);
    }
  }
  return out;
}

}  // namespace

std::string DiffReport::to_json() const {
  nlohmann::json j;
  j["match"] = match;
  auto atom_list = [](const std::set<Atom>& atoms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& atom : atoms) arr.push_back(atom.to_text());
    return arr;
  };
  j["missing_init"] = atom_list(missing_init);
  j["extra_init"] = atom_list(extra_init);
  j["missing_goal"] = atom_list(missing_goal);
  j["extra_goal"] = atom_list(extra_goal);
  nlohmann::json objs = nlohmann::json::array();
  for (const auto& note : object_defects) {
    objs.push_back(to_string(note.kind) + ": " + note.detail);
  }
  j["object_defects"] = objs;
  nlohmann::json structs = nlohmann::json::array();
  for (const auto& note : structural_defects) {
    structs.push_back(to_string(note.code) + ": " + note.detail);
  }
  j["structural_defects"] = structs;
  j["objects_missing"] = objects_missing;
  j["objects_extra"] = objects_extra;
  return j.dump();
}

DiffReport diff_problems(const ProblemModel& candidate,
                         const ProblemModel& truth) {
  DiffReport report;
  report.missing_init = minus(truth.init, candidate.init);
  report.extra_init = minus(candidate.init, truth.init);
  report.missing_goal = minus(truth.goal, candidate.goal);
  report.extra_goal = minus(candidate.goal, truth.goal);

  report.object_defects = scan_defects(candidate);

  StateCheck init_check =
      atoms_to_state(candidate.init, referenced_objects(candidate.init),
                     AtomCheckMode::kInit);
  StateCheck goal_check =
      atoms_to_state(candidate.goal, referenced_objects(candidate.goal),
                     AtomCheckMode::kGoal);
  report.structural_defects = init_check.defects;
  report.structural_defects.insert(report.structural_defects.end(),
                                   goal_check.defects.begin(),
                                   goal_check.defects.end());

  std::set<std::string> cand_objs(candidate.objects.begin(),
                                  candidate.objects.end());
  std::set<std::string> truth_objs(truth.objects.begin(),
                                   truth.objects.end());
  for (const auto& obj : truth_objs) {
    if (!cand_objs.count(obj)) report.objects_missing.insert(obj);
  }
  for (const auto& obj : cand_objs) {
    if (!truth_objs.count(obj)) report.objects_extra.insert(obj);
  }

  report.match = report.missing_init.empty() && report.extra_init.empty() &&
                 report.missing_goal.empty() && report.extra_goal.empty() &&
                 report.object_defects.empty() &&
                 report.structural_defects.empty();
  return report;
}

CategoryFlags classify(const DiffReport& report) {
  return {!report.missing_init.empty(), !report.extra_init.empty(),
          !report.missing_goal.empty(), !report.extra_goal.empty()};
}

}  // namespace bwformal
