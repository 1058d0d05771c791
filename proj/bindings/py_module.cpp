#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bwformal/assets.hpp"
#include "bwformal/counting.hpp"
#include "bwformal/dataset.hpp"
#include "bwformal/equivalence.hpp"
#include "bwformal/nl.hpp"
#include "bwformal/pddl.hpp"
#include "bwformal/plan.hpp"
#include "bwformal/solver.hpp"
#include "bwformal/tags.hpp"
#include "bwformal/validator.hpp"

namespace py = pybind11;
using namespace bwformal;

namespace {

py::object big_to_py(const BigInt& value) {
  // route through the decimal string so arbitrary precision survives
  return py::int_(py::str(value.str()));
}

py::list atom_list(const std::set<Atom>& atoms) {
  py::list out;
  for (const auto& atom : atoms) out.append(atom.to_text());
  return out;
}

py::list plan_list(const Plan& plan) {
  py::list out;
  for (const auto& step : plan.steps) out.append(step.to_text());
  return out;
}

py::dict instance_dict(const ProblemInstance& instance) {
  py::dict d;
  d["id"] = instance.id;
  d["family"] = to_string(instance.family);
  d["n"] = instance.n;
  d["seed"] = instance.seed;
  d["nl"] = instance.nl_description;
  d["pddl"] = print_canonical(instance.ground_truth);
  d["init_atoms"] = atom_list(instance.ground_truth.init);
  d["goal_atoms"] = atom_list(instance.ground_truth.goal);
  d["nl_init_clauses"] = instance.nl_init_clauses;
  d["nl_goal_clauses"] = instance.nl_goal_clauses;
  d["compression_ratio"] = instance.compression_ratio();
  return d;
}

ProblemModel parse_problem_text(const std::string& text) {
  DomainModel domain = parse_domain(builtin_domain_pddl());
  return parse_problem(text, &domain);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BlocksWorld formalization harness core";

  m.def("domain_pddl", [] { return builtin_domain_pddl(); },
        "built-in BlocksWorld domain file");
  m.def("domain_nl", [] { return builtin_domain_nl(); },
        "natural-language domain description");

  m.def(
      "count_states",
      [](int n, bool with_holding) {
        StateCount c =
            with_holding ? count_states_with_holding(n) : count_states(n);
        return py::make_tuple(big_to_py(c.exact), c.log10_value);
      },
      py::arg("n"), py::arg("with_holding") = false,
      "exact state count and its log10 as (int, float)");

  m.def(
      "gen_xxl",
      [](int n, std::uint64_t seed) { return instance_dict(gen_xxl(n, seed)); },
      py::arg("n"), py::arg("seed"));
  m.def(
      "gen_unravel",
      [](int n, std::uint64_t seed) {
        return instance_dict(gen_unravel(n, seed));
      },
      py::arg("n"), py::arg("seed"));

  m.def(
      "canonical_problem",
      [](const std::string& text) {
        return print_canonical(parse_problem_text(text));
      },
      py::arg("problem_text"), "parse and reprint in canonical form");

  m.def(
      "solve",
      [](const std::string& problem_text) {
        return plan_list(solve_heuristic(parse_problem_text(problem_text)));
      },
      py::arg("problem_text"), "heuristic plan, one step string per entry");

  m.def(
      "solve_optimal",
      [](const std::string& problem_text, std::size_t budget) -> py::object {
        BfsResult result =
            solve_optimal_bfs(parse_problem_text(problem_text), budget);
        if (!result.plan) return py::none();
        return plan_list(*result.plan);
      },
      py::arg("problem_text"), py::arg("budget") = 2'000'000,
      "shortest plan via breadth-first search, None when over budget");

  m.def(
      "validate_plan",
      [](const std::string& problem_text, const std::string& plan_text) {
        DomainModel domain = parse_domain(builtin_domain_pddl());
        ProblemModel problem = parse_problem(problem_text, &domain);
        Verdict verdict = validate(domain, problem, parse_plan(plan_text));
        py::dict d;
        d["valid"] = verdict.valid;
        d["reason"] = to_string(verdict.reason);
        if (verdict.failure_step) {
          d["failure_step"] = *verdict.failure_step;
        } else {
          d["failure_step"] = py::none();
        }
        return d;
      },
      py::arg("problem_text"), py::arg("plan_text"));

  m.def(
      "diff",
      [](const std::string& candidate_text, const std::string& truth_text) {
        DiffReport report = diff_problems(parse_problem_text(candidate_text),
                                          parse_problem_text(truth_text));
        py::dict d;
        d["match"] = report.match;
        d["missing_init"] = atom_list(report.missing_init);
        d["extra_init"] = atom_list(report.extra_init);
        d["missing_goal"] = atom_list(report.missing_goal);
        d["extra_goal"] = atom_list(report.extra_goal);
        return d;
      },
      py::arg("candidate_text"), py::arg("truth_text"),
      "semantic problem-file comparison");

  m.def(
      "parse_description",
      [](const std::string& description) {
        ParsedNl parsed = parse_nl_description(description);
        py::dict d;
        d["n"] = parsed.n;
        d["init_atoms"] = atom_list(parsed.init);
        d["goal_atoms"] = atom_list(parsed.goal);
        return d;
      },
      py::arg("description"),
      "recover atoms from a natural-language description");

  m.def(
      "extract_tagged",
      [](const std::string& text, const std::string& tag) -> py::object {
        TagResult result = extract_tagged(text, tag);
        if (!result.ok()) return py::none();
        return py::str(result.text);
      },
      py::arg("text"), py::arg("tag"),
      "content of the first <tag>...</tag> pair, None when absent");
}
