#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bwformal/sexpr.hpp"

namespace bwformal {

/// A ground (or lifted) predicate application. Symbols are stored
/// lowercase; ordering is lexicographic on (predicate, args), which fixes
/// the canonical print order.
struct Atom {
  std::string pred;
  std::vector<std::string> args;

  auto operator<=>(const Atom&) const = default;
  std::string to_text() const;
};

struct ActionSchema {
  std::string name;
  std::vector<std::string> params;  // variable symbols, '?' included
  std::set<Atom> preconditions;
  std::set<Atom> add_effects;
  std::set<Atom> del_effects;

  bool operator==(const ActionSchema&) const = default;
};

struct DomainModel {
  std::string name;
  std::vector<std::string> requirements;
  std::map<std::string, int> predicates;  // name -> arity
  std::vector<ActionSchema> actions;
  std::vector<std::string> extra_sections;  // unknown sections, kept opaque

  const ActionSchema* find_action(const std::string& name) const;
  bool operator==(const DomainModel&) const = default;
};

enum class ProblemDefect {
  kSelfRelation,      // atom repeats an argument, e.g. (on b1 b1)
  kUndeclaredObject,  // init/goal references an object missing from :objects
  kDuplicateObject,   // :objects declares the same name twice
};

std::string to_string(ProblemDefect d);

struct ProblemDefectNote {
  ProblemDefect kind;
  std::string detail;
};

struct ProblemModel {
  std::string problem_name;
  std::string domain_name;
  std::vector<std::string> objects;  // declaration order, type tags dropped
  std::set<Atom> init;
  std::set<Atom> goal;
  std::vector<ProblemDefectNote> defects;  // recorded, not fatal
  std::vector<std::string> extra_sections;

  bool operator==(const ProblemModel& o) const {
    return problem_name == o.problem_name && domain_name == o.domain_name &&
           objects == o.objects && init == o.init && goal == o.goal &&
           extra_sections == o.extra_sections;
  }
};

/// Parses a STRIPS domain. Unknown sections are preserved opaquely.
/// Throws ParseError for unbalanced input, missing :action parts, variables
/// used outside :parameters, or predicates that contradict the signature map.
DomainModel parse_domain(const std::string& text);

/// Parses a problem file. `:init` and `:goal` accept one level of (and ...)
/// wrapping; deeper nesting is rejected. Typed object declarations drop the
/// type. Negative init literals are rejected (closed world). Self-relations,
/// undeclared and duplicate objects are recorded as defects, not errors.
/// When a domain is supplied, predicate names and arities are checked.
ProblemModel parse_problem(const std::string& text,
                           const DomainModel* domain = nullptr);

/// Duplicate declarations, undeclared references, and self-relations for an
/// arbitrary (possibly hand-built) model. parse_problem stores this scan in
/// ProblemModel::defects.
std::vector<ProblemDefectNote> scan_defects(const ProblemModel& model);

/// Deterministic canonical text: lowercase symbols, one atom per line in
/// init/goal, atoms sorted by (predicate, args). parse(print(m)) == m.
std::string print_canonical(const DomainModel& model);
std::string print_canonical(const ProblemModel& model);

}  // namespace bwformal
