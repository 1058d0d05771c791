#pragma once

#include <set>
#include <string>
#include <vector>

#include "bwformal/blocks.hpp"

namespace bwformal {

// Natural-language problem descriptions come in two template shapes. The
// itemized one spells out one clause per fact:
//
//   As initial conditions I have that, block 1 is clear, the hand is empty,
//   block 1 is on top of block 3, ..., and block 2 is on the table.
//   My goal is to have that block 1 is on the table, ..., and block 5 is on
//   the table.
//
// The compressed one describes the initial stacks by rule, with the goal
// still itemized:
//
//   As initial conditions I have N blocks numbered 1 to N. All the odd
//   numbered blocks are on one stack, with increasing numbering from top to
//   bottom. Same for the even numbered blocks on another stack.
//   My goal is to have that ...

/// Init sentence, itemized template: clear facts, the hand clause, on
/// facts, then on-table facts, all ordered by block number and joined with
/// commas and a final "and".
std::string render_itemized_init(const BlocksState& state);

/// Init sentence for the compressed odd/even two-stack rule.
std::string render_compressed_init(int n);

/// Goal sentence: on facts then on-table facts, ordered by block number.
std::string render_goal(const BlocksState& goal);

struct NlClause {
  std::string text;
  bool is_goal = false;
};

/// Splits a description into clauses with init/goal provenance. Itemized
/// init sentences split on clause commas with the lead-ins trimmed; a
/// compressed init is kept as a single clause because its stack rules do
/// not stand alone. Goal sentences always split per clause.
std::vector<NlClause> segment_clauses(const std::string& description);

/// Clause counts as used for compression ratios: the compressed init
/// counts its stack-rule clauses (the block-count lead-in is not a fact).
int count_init_clauses(const std::string& description);
int count_goal_clauses(const std::string& description);

struct ParsedNl {
  int n = 0;
  std::set<Atom> init;
  std::set<Atom> goal;
};

/// Inverse of the rendering templates; throws std::runtime_error when a
/// clause does not match any known shape. The compressed init yields the
/// odd/even stack atoms plus (arm-empty).
ParsedNl parse_nl_description(const std::string& description);

/// Translates one itemized clause ("block 3 is clear", "the hand is
/// empty", ...) into atoms. A compressed init clause expands into the full
/// init atom set. Throws std::runtime_error on unknown shapes.
std::set<Atom> clause_to_atoms(const std::string& clause);

/// "block12" -> 12; returns -1 when the name is not block<digits>.
int block_number(const std::string& name);

}  // namespace bwformal
