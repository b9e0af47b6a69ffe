"""Means of vincular 3-pattern counts as combinations of irreducible characters.

For fixed positions i1 < i2 < i3, the permutations of a conjugacy class split
into M-sets according to the values they take at those positions.  The values
are either one of the positions themselves (I1, I2, I3) or "outside" values
(A4, A5, A6).  M-sets fall into ten equicardinal classes indexed by (j, l),
where j counts the distinct symbols involved.  Each class size is a polynomial
H_jl in (p, q, r, n), and each H_jl is a fixed combination of the seven
closed-form characters.

A pattern's mean is assembled from u_jl (how many M-set templates, over all
relative orders of the symbols compatible with the pattern's constraints, have
the pattern's letters) and the binomial counts of admissible index suites.
The intermediate per-j sums over index triples are never formed; the
normalisation v_j/(n)_j = 1/((n)_k (j-k)!) is folded in directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .characters import CharacterCombination, IntegerPartition, falling, reduce_basis
from .perm import VincularPattern, all_patterns, parse_pattern

__all__ = [
    "HCLASSES",
    "MSetTemplate",
    "RelativeOrder",
    "h_values",
    "h_char_rows",
    "templates_for_class",
    "relative_orders",
    "order_violates",
    "mset_pattern",
    "pattern_matrix",
    "u_coefficients",
    "v_count",
    "mean_vector7",
    "mean_coefficients",
    "composite_mean",
    "BUILTINS",
    "canonical_table",
]

I1, I2, I3, A4, A5, A6 = "I1", "I2", "I3", "A4", "A5", "A6"
SYMBOLS = (I1, I2, I3, A4, A5, A6)

HCLASSES: tuple[tuple[int, int], ...] = (
    (3, 1), (3, 2), (3, 3),
    (4, 1), (4, 2), (4, 3), (4, 4),
    (5, 1), (5, 2),
    (6, 1),
)


@dataclass(frozen=True)
class MSetTemplate:
    """Values taken at positions (i1, i2, i3), as symbols."""

    slots: tuple[str, str, str]

    def __post_init__(self):
        if len(set(self.slots)) != 3 or not set(self.slots) <= set(SYMBOLS):
            raise ValueError(f"bad template {self.slots}")
        used_a = sorted(s for s in self.slots if s.startswith("A"))
        expected = [f"A{4 + i}" for i in range(len(used_a))]
        if used_a != expected:
            raise ValueError(f"template {self.slots} must use A4, A5, ... without gaps")

    @property
    def j(self) -> int:
        return 3 + sum(1 for s in self.slots if s.startswith("A"))

    def __str__(self) -> str:
        return "M(" + ",".join(s.lower() for s in self.slots) + ")"


@dataclass(frozen=True)
class RelativeOrder:
    """Symbols listed from smallest to largest; I1 < I2 < I3 always."""

    ranking: tuple[str, ...]

    def __post_init__(self):
        j = len(self.ranking)
        if set(self.ranking) != set(SYMBOLS[:j]) or not 3 <= j <= 6:
            raise ValueError(f"bad relative order {self.ranking}")
        pos = {s: i for i, s in enumerate(self.ranking)}
        if not pos[I1] < pos[I2] < pos[I3]:
            raise ValueError(f"relative order {self.ranking} must keep I1 < I2 < I3")

    @property
    def j(self) -> int:
        return len(self.ranking)

    def rank(self, symbol: str) -> int:
        return self.ranking.index(symbol)

    def __str__(self) -> str:
        return "<".join(s.lower() for s in self.ranking)

    @classmethod
    def parse(cls, text: str) -> RelativeOrder:
        """Parse ``"a4<i1<i2<i3"`` (case-insensitive)."""
        return cls(tuple(tok.strip().upper() for tok in text.split("<")))


# --- M-set class sizes ---------------------------------------------------------


def h_values(lam: IntegerPartition) -> dict[tuple[int, int], int]:
    n = lam.n
    if n < 3:
        raise ValueError("h_values needs n >= 3")
    p, q, r = lam.p, lam.q, lam.r
    vals = {
        (3, 1): p * (p - 1) * (p - 2),
        (3, 2): 2 * p * q,
        (3, 3): 3 * r,
        (4, 1): p * (p - 1) * (n - p),
        (4, 2): 2 * q * (n - p - 2),
        (4, 3): p * (n - p - 2 * q),
        (4, 4): n - p - 2 * q - 3 * r,
        (5, 1): p**3 + 3 * p**2 + 2 * p * q - n * (2 * p**2 + 3 * p) + n**2 * p,
        (5, 2): p**2 + 4 * p + 2 * p * q + 8 * q + 3 * r - n * (2 * p + 2 * q + 4) + n**2,
        (6, 1): (-p**3 - 9 * p**2 - 20 * p - 6 * p * q - 24 * q - 6 * r
                 + n * (3 * p**2 + 18 * p + 6 * q + 20) - n**2 * (3 * p + 9) + n**3),
    }
    # an M-set needing j distinct symbols is empty when j > n
    return {key: (v if key[0] <= n else 0) for key, v in vals.items()}


def h_char_rows(n: int) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """Row (j, l) such that row . char7(lambda) == H_jl(lambda)."""
    if n < 3:
        raise ValueError("h_char_rows needs n >= 3")
    rows = {
        (3, 1): (1, 3, 3, 3, 1, 2, 1),
        (3, 2): (1, 1, 1, -1, 1, 0, -1),
        (3, 3): (1, 0, 0, 0, 1, -1, 1),
        (4, 1): (n - 3, 2 * n - 7, n - 5, n - 5, -1, -2, -1),
        (4, 2): (n - 3, -1, n - 3, -n + 3, -1, 0, 1),
        (4, 3): (n - 3, n - 4, -2, 0, -1, 0, 1),
        (4, 4): (n - 3, -1, -1, 1, -1, 1, -1),
        (5, 1): (n * n - 7 * n + 12, n * n - 9 * n + 20, -2 * n + 10, -2 * n + 8, 2, 2, 0),
        (5, 2): (n * n - 7 * n + 12, -2 * n + 8, -n + 6, n - 4, 2, -1, 0),
        (6, 1): (n**3 - 12 * n**2 + 47 * n - 60, -3 * n**2 + 27 * n - 60, 6 * n - 30, 0, -6, 0, 0),
    }
    return {key: tuple(Fraction(x) for x in row) for key, row in rows.items()}


def _t(*slots: str) -> MSetTemplate:
    return MSetTemplate(tuple(slots))  # type: ignore[arg-type]


_TEMPLATES: dict[tuple[int, int], tuple[MSetTemplate, ...]] = {
    (3, 1): (_t(I1, I2, I3),),
    (3, 2): (_t(I1, I3, I2), _t(I3, I2, I1), _t(I2, I1, I3)),
    (3, 3): (_t(I2, I3, I1), _t(I3, I1, I2)),
    (4, 1): (_t(I1, I2, A4), _t(I1, A4, I3), _t(A4, I2, I3)),
    (4, 2): (_t(I2, I1, A4), _t(I3, A4, I1), _t(A4, I3, I2)),
    (4, 3): (_t(I1, I3, A4), _t(I1, A4, I2), _t(I3, I2, A4),
             _t(A4, I2, I1), _t(I2, A4, I3), _t(A4, I1, I3)),
    (4, 4): (_t(I2, I3, A4), _t(I3, A4, I2), _t(I3, I1, A4),
             _t(A4, I3, I1), _t(I2, A4, I1), _t(A4, I1, I2)),
    (5, 1): (_t(I1, A4, A5), _t(A4, I2, A5), _t(A4, A5, I3)),
    (5, 2): (_t(I2, A4, A5), _t(I3, A4, A5), _t(A4, I1, A5),
             _t(A4, I3, A5), _t(A4, A5, I1), _t(A4, A5, I2)),
    (6, 1): (_t(A4, A5, A6),),
}


def templates_for_class(j: int, ell: int) -> list[MSetTemplate]:
    try:
        return list(_TEMPLATES[(j, ell)])
    except KeyError:
        raise ValueError(f"no M-set class ({j},{ell})") from None


@lru_cache(maxsize=None)
def _relative_orders(j: int) -> tuple[RelativeOrder, ...]:
    symbols = SYMBOLS[:j]
    out = []
    for perm in itertools.permutations(symbols):
        pos = {s: i for i, s in enumerate(perm)}
        if pos[I1] < pos[I2] < pos[I3]:
            out.append(RelativeOrder(perm))
    return tuple(out)


def relative_orders(j: int) -> list[RelativeOrder]:
    if not 3 <= j <= 6:
        raise ValueError("j must be between 3 and 6")
    return list(_relative_orders(j))


def order_violates(order: RelativeOrder, phi: VincularPattern) -> bool:
    """True if some outside symbol sits where the pattern's constraints forbid it."""
    i1, i2, i3 = order.rank(I1), order.rank(I2), order.rank(I3)
    for pos, sym in enumerate(order.ranking):
        if not sym.startswith("A"):
            continue
        if phi.adj12 and i1 < pos < i2:
            return True
        if phi.adj23 and i2 < pos < i3:
            return True
        if phi.left_anchor and pos < i1:
            return True
        if phi.right_anchor and pos > i3:
            return True
    return False


def mset_pattern(template: MSetTemplate, order: RelativeOrder) -> tuple[int, int, int]:
    """Classical pattern formed by the template's values under ``order``."""
    if not set(template.slots) <= set(order.ranking):
        raise ValueError(f"{template} uses symbols outside {order}")
    ranks = [order.rank(s) for s in template.slots]
    srt = sorted(ranks)
    return tuple(srt.index(x) + 1 for x in ranks)  # type: ignore[return-value]


def pattern_matrix(j: int, ell: int) -> dict[RelativeOrder, list[tuple[int, int, int]]]:
    """Patterns of every template of class (j, l) for every relative order."""
    templates = templates_for_class(j, ell)
    return {order: [mset_pattern(t, order) for t in templates] for order in relative_orders(j)}


def u_coefficients(phi: VincularPattern) -> dict[tuple[int, int], int]:
    return dict(_u_coefficients(phi))


@lru_cache(maxsize=None)
def _u_coefficients(phi: VincularPattern) -> tuple[tuple[tuple[int, int], int], ...]:
    out = []
    for j, ell in HCLASSES:
        templates = templates_for_class(j, ell)
        count = 0
        for order in relative_orders(j):
            if order_violates(order, phi):
                continue
            count += sum(1 for t in templates if mset_pattern(t, order) == phi.letters)
        out.append(((j, ell), count))
    return tuple(out)


def v_count(phi: VincularPattern, ell: int, n: int) -> int:
    """Number of index suites of length ``ell`` in a fixed admissible relative order."""
    if n < 3:
        raise ValueError("v_count needs n >= 3")
    k = phi.k
    return math.comb(n - k, ell - k) if n - k >= ell - k else 0


def mean_vector7(phi: VincularPattern, n: int) -> tuple[Fraction, ...]:
    """Coefficients of the mean of o_phi against the seven closed-form characters.

    Classes with j > n contribute nothing (their M-sets are empty), which
    keeps the formula valid for n = 3, 4, 5.
    """
    if n < 3:
        raise ValueError("mean_vector7 needs n >= 3")
    k = phi.k
    u = _u_coefficients(phi)
    rows = h_char_rows(n)
    acc = [Fraction(0)] * 7
    for (j, ell), count in u:
        if count == 0 or j > n:
            continue
        weight = Fraction(count, math.factorial(j - k))
        for i, x in enumerate(rows[(j, ell)]):
            acc[i] += weight * x
    norm = falling(n, k)
    return tuple(x / norm for x in acc)


def mean_coefficients(phi: VincularPattern, n: int) -> CharacterCombination:
    return reduce_basis(mean_vector7(phi, n), n)


# --- composite statistics --------------------------------------------------------


def _des(n: int) -> CharacterCombination:
    return CharacterCombination(n, {
        IntegerPartition((n,)): Fraction(n - 1, 2),
        IntegerPartition((n - 1, 1)): Fraction(-1, n),
        IntegerPartition((n - 2, 1, 1)): Fraction(-1, n),
    })


def _asc(n: int) -> CharacterCombination:
    return CharacterCombination(n, {
        IntegerPartition((n,)): Fraction(n - 1, 2),
        IntegerPartition((n - 1, 1)): Fraction(1, n),
        IntegerPartition((n - 2, 1, 1)): Fraction(1, n),
    })


def _peak(n: int) -> CharacterCombination:
    return mean_coefficients(parse_pattern("(132)"), n) + mean_coefficients(parse_pattern("(231)"), n)


BUILTINS = {"peak": _peak, "des": _des, "asc": _asc}

Term = Union[VincularPattern, str]


def _term_mean(term: Term, n: int) -> CharacterCombination:
    if isinstance(term, VincularPattern):
        return mean_coefficients(term, n)
    if term in BUILTINS:
        return BUILTINS[term](n)
    try:
        return mean_coefficients(parse_pattern(term), n)
    except ValueError:
        raise ValueError(f"unknown statistic {term!r}; builtins are {sorted(BUILTINS)}") from None


def composite_mean(terms: Iterable[tuple[Fraction | int, Term]], n: int) -> CharacterCombination:
    """Mean of sum_i c_i * s_i, by linearity of the class mean."""
    if n < 3:
        raise ValueError("composite_mean needs n >= 3")
    total = CharacterCombination(n, {})
    for coeff, term in terms:
        total = total + _term_mean(term, n).scale(coeff)
    return total


def canonical_table(n: int) -> list[tuple[VincularPattern, tuple[Fraction, ...], CharacterCombination]]:
    """(pattern, 7-vector, reduced combination) for every pattern with k <= 3."""
    rows = []
    for phi in all_patterns():
        vec = mean_vector7(phi, n)
        rows.append((phi, vec, reduce_basis(vec, n)))
    return rows
