"""Exact solving and extremal constructions for pursuit games with protected edges.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (
    PursuitGraph,
    SolveResult,
    build_main,
    build_sc1,
    build_simulation,
    check_cop_win_bound,
    check_main_construction,
    check_sandwich,
    check_stable_lemma,
    check_strongly_connected_k1,
    cop_number,
    doubly_direct,
    oracle_solve,
    parse_graph6,
    parse_pg,
    primes_from,
    serialize_pg,
    solve,
    stable_positions,
    trace,
    validate_for_play,
)

__all__ = [
    "PursuitGraph",
    "SolveResult",
    "build_main",
    "build_sc1",
    "build_simulation",
    "check_cop_win_bound",
    "check_main_construction",
    "check_sandwich",
    "check_stable_lemma",
    "check_strongly_connected_k1",
    "cop_number",
    "doubly_direct",
    "oracle_solve",
    "parse_graph6",
    "parse_pg",
    "primes_from",
    "serialize_pg",
    "solve",
    "stable_positions",
    "trace",
    "validate_for_play",
]
