"""BlocksWorld formalization harness: dataset generation, solving,
validation, and problem-file diffing backed by the C++ core."""

from ._core import (
    canonical_problem,
    count_states,
    diff,
    domain_nl,
    domain_pddl,
    extract_tagged,
    gen_unravel,
    gen_xxl,
    parse_description,
    solve,
    solve_optimal,
    validate_plan,
)

__all__ = [
    "canonical_problem",
    "count_states",
    "diff",
    "domain_nl",
    "domain_pddl",
    "extract_tagged",
    "gen_unravel",
    "gen_xxl",
    "parse_description",
    "solve",
    "solve_optimal",
    "validate_plan",
]
