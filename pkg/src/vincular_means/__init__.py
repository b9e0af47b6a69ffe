"""Exact class means of vincular 3-pattern counts in the symmetric group.

Means over conjugacy classes are expanded in irreducible characters, which
turns expected pattern counts after t random steps into exact rationals.
"""

from .characters import (
    CharacterCombination,
    IntegerPartition,
    char7,
    class_size,
    dimension,
    inner_product,
    mn_character,
    parse_partition,
    partitions,
    reduce_basis,
)
from .expectation import WalkSpec, expected_series, expected_value, transposition_closed_form
from .mset import composite_mean, mean_coefficients, mean_vector7, u_coefficients
from .oracle import brute_expected, brute_mean, brute_stat_mean, mc_expected
from .perm import (
    Permutation,
    VincularPattern,
    all_patterns,
    count_occurrences,
    parse_pattern,
    pattern_orbits,
    pattern_pair,
)
from .verify import verify_suite

__all__ = [
    "CharacterCombination",
    "IntegerPartition",
    "Permutation",
    "VincularPattern",
    "WalkSpec",
    "all_patterns",
    "brute_expected",
    "brute_mean",
    "brute_stat_mean",
    "char7",
    "class_size",
    "composite_mean",
    "count_occurrences",
    "dimension",
    "expected_series",
    "expected_value",
    "inner_product",
    "mc_expected",
    "mean_coefficients",
    "mean_vector7",
    "mn_character",
    "parse_partition",
    "parse_pattern",
    "partitions",
    "pattern_orbits",
    "pattern_pair",
    "reduce_basis",
    "transposition_closed_form",
    "u_coefficients",
    "verify_suite",
]
