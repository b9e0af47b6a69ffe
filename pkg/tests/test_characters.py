import itertools
import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vincular_means.characters import (
    CharacterCombination,
    IntegerPartition,
    char7,
    char7_shapes,
    character_values,
    class_size,
    dimension,
    falling,
    format_rational,
    gbinom,
    inner_product,
    mn_character,
    parse_partition,
    parse_rational,
    partitions,
    reduce_basis,
)
from vincular_means.perm import cycle_type, Permutation

P = IntegerPartition.of

# number of partitions of n, n = 1..12
PARTITION_COUNTS = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


# --- independent oracles ------------------------------------------------------------


def _poly_mul(a, b, cap):
    out = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if all(x <= c for x, c in zip(e, cap)):
                out[e] += ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(lam, mu):
    """chi^lam(mu) as the coefficient of x^(lam + delta) in a_delta * prod p_{mu_i}."""
    ell = len(lam.parts)
    target = tuple(lam.parts[i] + ell - 1 - i for i in range(ell))
    cap = (max(target),) * ell
    vandermonde = {}
    for perm in itertools.permutations(range(ell)):
        inversions = sum(1 for i, j in itertools.combinations(range(ell), 2) if perm[i] > perm[j])
        vandermonde[tuple(ell - 1 - perm[i] for i in range(ell))] = (-1) ** inversions
    poly = vandermonde
    for m in mu.parts:
        power_sum = {tuple(m if i == v else 0 for i in range(ell)): 1 for v in range(ell)}
        poly = _poly_mul(poly, power_sum, cap)
    return poly.get(target, 0)


@lru_cache(maxsize=None)
def standard_tableaux(shape):
    """Count SYT by removing the cell holding n, which must be a corner."""
    if sum(shape) == 0:
        return 1
    total = 0
    for i, row in enumerate(shape):
        if row and (i + 1 == len(shape) or shape[i + 1] < row):
            smaller = list(shape)
            smaller[i] -= 1
            total += standard_tableaux(tuple(smaller))
    return total


def brute_class_sizes(n):
    counts = defaultdict(int)
    for w in itertools.permutations(range(1, n + 1)):
        counts[cycle_type(Permutation(w))] += 1
    return counts


# --- partitions and classes --------------------------------------------------------


def test_partition_counts_and_order():
    for n, count in enumerate(PARTITION_COUNTS, start=1):
        parts = partitions(n)
        assert len(parts) == count
        assert [p.parts for p in parts] == sorted((p.parts for p in parts), reverse=True)
    assert partitions(4)[0] == P(4) and partitions(4)[-1] == P(1, 1, 1, 1)


@pytest.mark.parametrize("text, parts", [("2,1^6", (2, 1, 1, 1, 1, 1, 1)), ("1,3", (3, 1)), ("2^2", (2, 2)), ("5", (5,))])
def test_parse_partition(text, parts):
    assert parse_partition(text).parts == parts


@pytest.mark.parametrize("text", ["", "0", "2,,1", "2^0", "a", "2;1", "-1"])
def test_parse_partition_rejects(text):
    with pytest.raises(ValueError):
        parse_partition(text)


def test_partition_text_round_trip():
    for n in range(1, 11):
        for lam in partitions(n):
            assert parse_partition(str(lam)) == lam
    assert str(P(2, 1, 1, 1, 1, 1, 1)) == "2,1^6"


def test_partition_validation():
    with pytest.raises(ValueError):
        IntegerPartition((1, 2))
    with pytest.raises(ValueError):
        IntegerPartition((2, 0))


@pytest.mark.parametrize("n", range(1, 13))
def test_class_sizes_sum_to_factorial(n):
    assert sum(class_size(lam) for lam in partitions(n)) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_class_sizes_match_enumeration(n):
    counts = brute_class_sizes(n)
    for lam in partitions(n):
        assert class_size(lam) == counts[lam]


# --- irreducible characters --------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_mn_matches_frobenius_formula(n):
    for lam in partitions(n):
        for mu in partitions(n):
            assert mn_character(lam, mu) == frobenius_character(lam, mu), (lam, mu)


def test_known_character_values():
    assert mn_character(P(2, 2), P(2, 2)) == 2
    assert mn_character(P(2, 2), P(4)) == 0
    assert mn_character(P(3, 1), P(4)) == -1
    assert mn_character(P(2, 1), P(3)) == -1
    assert mn_character(P(3, 2), P(1, 1, 1, 1, 1)) == 5
    with pytest.raises(ValueError):
        mn_character(P(2, 1), P(2, 2))


@pytest.mark.parametrize("n", range(1, 9))
def test_orthonormality(n):
    parts = partitions(n)
    table = {lam: character_values(lam) for lam in parts}
    for a, b in itertools.combinations_with_replacement(parts, 2):
        assert inner_product(table[a], table[b]) == (1 if a == b else 0)
    # column orthogonality: sum_lam chi^lam(mu)^2 = n!/|C_mu|
    for mu in parts:
        assert sum(table[lam][mu] ** 2 for lam in parts) * class_size(mu) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 10))
def test_dimension_hook_formula(n):
    one = IntegerPartition((1,) * n)
    dims = []
    for lam in partitions(n):
        d = dimension(lam)
        assert d == mn_character(lam, one) == standard_tableaux(lam.parts)
        dims.append(d)
    assert sum(d * d for d in dims) == math.factorial(n)


# --- closed forms ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(6, 11))
def test_char7_equals_mn(n):
    shapes = [IntegerPartition(s) for s in char7_shapes(n)]
    for lam in partitions(n):
        assert char7(lam) == tuple(mn_character(s, lam) for s in shapes), lam


@pytest.mark.parametrize("n", [3, 4, 5])
def test_char7_degeneracies(n):
    shapes = char7_shapes(n)
    for lam in partitions(n):
        v = char7(lam)
        for i, s in enumerate(shapes):
            if s[-1] > 0 and list(s) == sorted(s, reverse=True):
                assert v[i] == mn_character(IntegerPartition(s), lam)
        if n == 5:
            assert v[4] == 0
        if n == 4:
            assert v[4] == -v[2] and v[5] == 0
        if n == 3:
            assert v[2] == 0 and v[4] == -v[1] and v[5] == -v[3] and v[6] == 0


def test_char7_needs_polynomial_binomial():
    # a 4-cycle has no fixed points: C(p-1, 2) must be C(-1, 2) = 1, not 0
    assert gbinom(-1, 2) == 1
    assert char7(P(4))[2] == mn_character(P(2, 2), P(4)) == 0


def test_gbinom_and_falling():
    for m in range(0, 12):
        for k in range(0, 6):
            assert gbinom(m, k) == math.comb(m, k)
            assert falling(m, k) == math.perm(m, k)
    assert gbinom(-2, 3) == -4
    assert gbinom(3, -1) == 0


# --- combinations ------------------------------------------------------------------


fractions_st = st.fractions(min_value=-10, max_value=10, max_denominator=50)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.lists(fractions_st, min_size=7, max_size=7))
def test_reduce_basis_preserves_values(n, v):
    combo = reduce_basis(v, n)
    for lam in partitions(n):
        expect = sum((Fraction(a) * b for a, b in zip(v, char7(lam))), Fraction(0))
        assert combo.evaluate(lam) == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(fractions_st, min_size=len(partitions(n)), max_size=len(partitions(n))))))
def test_inner_product_recovers_coefficients(args):
    n, coeffs = args
    combo = CharacterCombination(n, dict(zip(partitions(n), coeffs)))
    values = combo.values()
    for lam in partitions(n):
        assert inner_product(values, character_values(lam)) == combo[lam]


def test_combination_algebra():
    a = CharacterCombination(4, {P(4): 1, P(3, 1): Fraction(1, 2)})
    b = CharacterCombination(4, {P(3, 1): Fraction(-1, 2), P(2, 2): 3})
    total = a + b
    assert dict(total.items()) == {P(4): 1, P(2, 2): 3}
    assert 2 * a == a.scale(2)
    assert a.scale(0) == CharacterCombination(4, {})
    assert list(CharacterCombination(4, {P(2, 2): 1, P(4): 1})) == [P(4), P(2, 2)]
    with pytest.raises(ValueError):
        CharacterCombination(4, {P(3): 1})
    with pytest.raises(ValueError):
        a + CharacterCombination(5, {})


@settings(max_examples=200)
@given(fractions_st)
def test_rational_text_round_trip(x):
    text = format_rational(x)
    assert parse_rational(text) == x
    back = Fraction(text)
    assert math.gcd(back.numerator, back.denominator) == 1 and back.denominator > 0
    if x.denominator == 1:
        assert "/" not in text
