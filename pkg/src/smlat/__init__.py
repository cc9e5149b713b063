"""Stable matchings shared by nearby instances.

Library and CLI for computing, enumerating, and verifying matchings that are
simultaneously stable under two or more instances differing in a few agents'
preference lists: deferred-acceptance variants, rotation-poset machinery with
sublattice compressions, an exact-rational LP route, and a brute-force oracle
cross-checking everything at desk scale.
"""

from .core import (Instance, Matching, PQDelta, blocking_pairs, diff_pq,
                   dominates, family_delta, is_stable, join, meet,
                   parse_instance, parse_matching, serialize_instance)
from .da import firm_da, worker_da
from .compound import (CompoundInstance, build_compound, firm_optimal_compound,
                       intersection_is_sublattice_check, strong_blocking_pairs,
                       worker_optimal_compound)
from .multiroom import (check_one_side_fixed, firm_optimal_multiroom,
                        verify_join_meet_agree, worker_optimal_multiroom)
from .oracle import enumerate_stable_bruteforce, stable_intersection
from .outcomes import NO_IDEA, NO_MATCH

__all__ = [
    "Instance", "Matching", "PQDelta", "CompoundInstance",
    "parse_instance", "parse_matching", "serialize_instance",
    "blocking_pairs", "is_stable", "meet", "join", "dominates",
    "diff_pq", "family_delta",
    "worker_da", "firm_da",
    "build_compound", "strong_blocking_pairs",
    "worker_optimal_compound", "firm_optimal_compound",
    "intersection_is_sublattice_check",
    "check_one_side_fixed", "worker_optimal_multiroom",
    "firm_optimal_multiroom", "verify_join_meet_agree",
    "enumerate_stable_bruteforce", "stable_intersection",
    "NO_MATCH", "NO_IDEA",
]
