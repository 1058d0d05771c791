#include "bwformal/pddl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bwformal {

std::string Atom::to_text() const {
  std::string out = "(" + pred;
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  out += ')';
  return out;
}

const ActionSchema* DomainModel::find_action(const std::string& name) const {
  for (const auto& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}

std::string to_string(ProblemDefect d) {
  switch (d) {
    case ProblemDefect::kSelfRelation: return "self-relation";
    case ProblemDefect::kUndeclaredObject: return "undeclared-object";
    case ProblemDefect::kDuplicateObject: return "duplicate-object";
  }
  return "?";
}

namespace {

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

Atom node_to_atom(const SExpr& node) {
  if (node.is_atom || node.children.empty() || !node.children[0].is_atom) {
    throw ParseError("expected a predicate application", node.offset);
  }
  Atom atom;
  atom.pred = node.children[0].token;
  for (std::size_t i = 1; i < node.children.size(); ++i) {
    if (!node.children[i].is_atom) {
      throw ParseError("predicate arguments must be symbols",
                       node.children[i].offset);
    }
    atom.args.push_back(node.children[i].token);
  }
  return atom;
}

const SExpr& expect_list(const SExpr& node, const char* what) {
  if (node.is_atom) {
    throw ParseError(std::string("expected a list for ") + what, node.offset);
  }
  return node;
}

std::string head_of(const SExpr& node) {
  if (node.is_atom || node.children.empty() || !node.children[0].is_atom)
    return "";
  return node.children[0].token;
}

void check_signature(const Atom& atom, const std::map<std::string, int>& sig,
                     std::size_t offset) {
  auto it = sig.find(atom.pred);
  if (it == sig.end()) {
    throw ParseError("predicate '" + atom.pred + "' not declared", offset);
  }
  if (static_cast<int>(atom.args.size()) != it->second) {
    throw ParseError("arity mismatch for '" + atom.pred + "': expected " +
                         std::to_string(it->second) + ", got " +
                         std::to_string(atom.args.size()),
                     offset);
  }
}

// (and a b c) -> {a, b, c}; a single atom -> {it}. Nested and is rejected.
std::vector<SExpr> flatten_one_and(const SExpr& node) {
  if (head_of(node) == "and") {
    std::vector<SExpr> out;
    for (std::size_t i = 1; i < node.children.size(); ++i) {
      if (head_of(node.children[i]) == "and") {
        throw ParseError("nested (and ...) is not supported",
                         node.children[i].offset);
      }
      out.push_back(node.children[i]);
    }
    return out;
  }
  return {node};
}

}  // namespace

DomainModel parse_domain(const std::string& text) {
  auto roots = parse_sexprs(text);
  if (roots.empty()) throw ParseError("empty input", 0);
  const SExpr& top = expect_list(roots[0], "domain");
  if (head_of(top) != "define") {
    throw ParseError("expected (define ...)", top.offset);
  }

  DomainModel model;
  bool named = false;
  for (std::size_t i = 1; i < top.children.size(); ++i) {
    const SExpr& section = expect_list(top.children[i], "domain section");
    std::string head = head_of(section);
    if (head == "domain") {
      if (section.children.size() != 2 || !section.children[1].is_atom) {
        throw ParseError("malformed (domain name)", section.offset);
      }
      model.name = section.children[1].token;
      named = true;
    } else if (head == ":requirements") {
      for (std::size_t j = 1; j < section.children.size(); ++j) {
        model.requirements.push_back(section.children[j].token);
      }
    } else if (head == ":predicates") {
      for (std::size_t j = 1; j < section.children.size(); ++j) {
        Atom sig = node_to_atom(section.children[j]);
        model.predicates[sig.pred] = static_cast<int>(sig.args.size());
      }
    } else if (head == ":action") {
      if (section.children.size() < 2 || !section.children[1].is_atom) {
        throw ParseError("missing action name", section.offset);
      }
      ActionSchema schema;
      schema.name = section.children[1].token;
      bool saw_params = false, saw_pre = false, saw_eff = false;
      for (std::size_t j = 2; j + 1 < section.children.size(); j += 2) {
        const SExpr& key = section.children[j];
        const SExpr& value = section.children[j + 1];
        if (!key.is_atom) {
          throw ParseError("expected :keyword in action body", key.offset);
        }
        if (key.token == ":parameters") {
          for (const auto& p : expect_list(value, ":parameters").children) {
            if (!p.is_atom || !is_variable(p.token)) {
              throw ParseError("parameters must be ?variables", p.offset);
            }
            schema.params.push_back(p.token);
          }
          saw_params = true;
        } else if (key.token == ":precondition") {
          for (const SExpr& item : flatten_one_and(value)) {
            schema.preconditions.insert(node_to_atom(item));
          }
          saw_pre = true;
        } else if (key.token == ":effect") {
          for (const SExpr& item : flatten_one_and(value)) {
            if (head_of(item) == "not") {
              if (item.children.size() != 2) {
                throw ParseError("malformed (not ...)", item.offset);
              }
              schema.del_effects.insert(node_to_atom(item.children[1]));
            } else {
              schema.add_effects.insert(node_to_atom(item));
            }
          }
          saw_eff = true;
        } else {
          throw ParseError("unknown action keyword '" + key.token + "'",
                           key.offset);
        }
      }
      if (!saw_params || !saw_pre || !saw_eff) {
        throw ParseError("action '" + schema.name +
                             "' is missing :parameters, :precondition or "
                             ":effect",
                         section.offset);
      }
      // every variable must be bound by the parameter list
      std::set<std::string> bound(schema.params.begin(), schema.params.end());
      auto check_vars = [&](const std::set<Atom>& atoms) {
        for (const auto& atom : atoms) {
          for (const auto& arg : atom.args) {
            if (is_variable(arg) && !bound.count(arg)) {
              throw ParseError("variable '" + arg + "' in action '" +
                                   schema.name + "' is not a parameter",
                               section.offset);
            }
          }
        }
      };
      check_vars(schema.preconditions);
      check_vars(schema.add_effects);
      check_vars(schema.del_effects);
      model.actions.push_back(std::move(schema));
    } else {
      model.extra_sections.push_back(to_text(section));
    }
  }
  if (!named) throw ParseError("missing (domain name)", top.offset);

  for (const auto& action : model.actions) {
    for (const auto* atoms :
         {&action.preconditions, &action.add_effects, &action.del_effects}) {
      for (const auto& atom : *atoms) {
        check_signature(atom, model.predicates, top.offset);
      }
    }
  }
  return model;
}

ProblemModel parse_problem(const std::string& text,
                           const DomainModel* domain) {
  auto roots = parse_sexprs(text);
  if (roots.empty()) throw ParseError("empty input", 0);
  const SExpr& top = expect_list(roots[0], "problem");
  if (head_of(top) != "define") {
    throw ParseError("expected (define ...)", top.offset);
  }

  ProblemModel model;
  bool saw_init = false, saw_goal = false;

  auto add_atoms = [&](const SExpr& section, std::set<Atom>& into,
                       bool is_init) {
    for (std::size_t j = 1; j < section.children.size(); ++j) {
      std::vector<SExpr> items;
      if (head_of(section.children[j]) == "and") {
        items = flatten_one_and(section.children[j]);
      } else {
        items = {section.children[j]};
      }
      for (const SExpr& item : items) {
        if (item.is_atom) {
          throw ParseError("bare symbol where an atom was expected",
                           item.offset);
        }
        if (head_of(item) == "not") {
          if (is_init) {
            throw ParseError("negative literals are not allowed in :init",
                             item.offset);
          }
          throw ParseError("negative goals are not supported", item.offset);
        }
        if (head_of(item) == "and") {
          throw ParseError("nested (and ...) is not supported", item.offset);
        }
        Atom atom = node_to_atom(item);
        if (domain) check_signature(atom, domain->predicates, item.offset);
        into.insert(std::move(atom));
      }
    }
  };

  for (std::size_t i = 1; i < top.children.size(); ++i) {
    const SExpr& section = expect_list(top.children[i], "problem section");
    std::string head = head_of(section);
    if (head == "problem") {
      if (section.children.size() != 2 || !section.children[1].is_atom) {
        throw ParseError("malformed (problem name)", section.offset);
      }
      model.problem_name = section.children[1].token;
    } else if (head == ":domain") {
      if (section.children.size() != 2 || !section.children[1].is_atom) {
        throw ParseError("malformed (:domain name)", section.offset);
      }
      model.domain_name = section.children[1].token;
    } else if (head == ":objects") {
      std::size_t j = 1;
      while (j < section.children.size()) {
        const SExpr& entry = section.children[j];
        if (!entry.is_atom) {
          throw ParseError(":objects entries must be symbols", entry.offset);
        }
        if (entry.token == "-") {
          ++j;  // skip the type name that follows
          if (j < section.children.size()) ++j;
          continue;
        }
        model.objects.push_back(entry.token);
        ++j;
      }
    } else if (head == ":init") {
      if (saw_init) {
        throw ParseError("duplicate :init section", section.offset);
      }
      saw_init = true;
      add_atoms(section, model.init, /*is_init=*/true);
    } else if (head == ":goal") {
      if (saw_goal) {
        throw ParseError("duplicate :goal section", section.offset);
      }
      saw_goal = true;
      add_atoms(section, model.goal, /*is_init=*/false);
    } else {
      model.extra_sections.push_back(to_text(section));
    }
  }

  model.defects = scan_defects(model);
  return model;
}

std::vector<ProblemDefectNote> scan_defects(const ProblemModel& model) {
  std::vector<ProblemDefectNote> defects;
  std::set<std::string> seen, dupes;
  for (const auto& obj : model.objects) {
    if (!seen.insert(obj).second && dupes.insert(obj).second) {
      defects.push_back({ProblemDefect::kDuplicateObject, obj});
    }
  }
  std::set<std::string> undeclared;
  auto scan = [&](const std::set<Atom>& atoms) {
    for (const auto& atom : atoms) {
      std::set<std::string> in_atom;
      for (const auto& arg : atom.args) {
        if (!seen.count(arg) && undeclared.insert(arg).second) {
          defects.push_back({ProblemDefect::kUndeclaredObject, arg});
        }
        if (!in_atom.insert(arg).second) {
          defects.push_back({ProblemDefect::kSelfRelation, atom.to_text()});
        }
      }
    }
  };
  scan(model.init);
  scan(model.goal);
  return defects;
}

namespace {

void print_atoms_block(std::ostringstream& out, const std::set<Atom>& atoms,
                       const char* indent) {
  bool first = true;
  for (const auto& atom : atoms) {
    if (!first) out << '\n';
    out << indent << atom.to_text();
    first = false;
  }
}

std::string print_condition(const std::set<Atom>& atoms,
                            const std::set<Atom>& negated = {}) {
  std::string out = "(and";
  for (const auto& atom : atoms) out += " " + atom.to_text();
  for (const auto& atom : negated) out += " (not " + atom.to_text() + ")";
  out += ")";
  return out;
}

}  // namespace

std::string print_canonical(const DomainModel& model) {
  std::ostringstream out;
  out << "(define (domain " << model.name << ")\n";
  if (!model.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : model.requirements) out << ' ' << r;
    out << ")\n";
  }
  out << "  (:predicates";
  static const char* kVars[] = {"?x", "?y", "?z", "?u", "?v", "?w"};
  for (const auto& [name, arity] : model.predicates) {
    out << "\n    (" << name;
    for (int i = 0; i < arity; ++i) out << ' ' << kVars[i % 6];
    out << ')';
  }
  out << ")\n";
  for (const auto& action : model.actions) {
    out << "  (:action " << action.name << "\n    :parameters (";
    for (std::size_t i = 0; i < action.params.size(); ++i) {
      if (i) out << ' ';
      out << action.params[i];
    }
    out << ")\n    :precondition " << print_condition(action.preconditions)
        << "\n    :effect "
        << print_condition(action.add_effects, action.del_effects) << ")\n";
  }
  for (const auto& extra : model.extra_sections) out << "  " << extra << "\n";
  out << ")\n";
  return out.str();
}

std::string print_canonical(const ProblemModel& model) {
  std::ostringstream out;
  out << "(define (problem " << model.problem_name << ")\n";
  out << "  (:domain " << model.domain_name << ")\n";
  out << "  (:objects";
  for (const auto& obj : model.objects) out << ' ' << obj;
  out << ")\n";
  out << "  (:init";
  if (!model.init.empty()) {
    out << '\n';
    print_atoms_block(out, model.init, "    ");
  }
  out << ")\n";
  out << "  (:goal (and";
  if (!model.goal.empty()) {
    out << '\n';
    print_atoms_block(out, model.goal, "    ");
  }
  out << "))";
  for (const auto& extra : model.extra_sections) out << "\n  " << extra;
  out << ")\n";
  return out.str();
}

}  // namespace bwformal
