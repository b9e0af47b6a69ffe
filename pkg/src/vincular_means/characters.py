"""Integer partitions, conjugacy classes and irreducible characters of S_n.

Characters are evaluated exactly by the Murnaghan-Nakayama rule on beta-sets,
and independently through the closed forms for the seven "small" shapes
``(n), (n-1,1), (n-2,2), (n-2,1,1), (n-3,3), (n-3,2,1), (n-3,1,1,1)``.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

__all__ = [
    "IntegerPartition",
    "CharacterCombination",
    "partitions",
    "parse_partition",
    "class_size",
    "mn_character",
    "char7",
    "char7_shapes",
    "reduce_basis",
    "dimension",
    "inner_product",
    "character_values",
    "gbinom",
    "falling",
    "format_rational",
    "parse_rational",
]


def gbinom(m: int, k: int) -> int:
    """Polynomial binomial m(m-1)...(m-k+1)/k!, valid for negative ``m``.

    For 0 <= m < k this is 0; for m < 0 it is the polynomial value, which the
    closed-form characters need when a class has no fixed points.
    """
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // math.factorial(k)


def falling(n: int, k: int) -> int:
    """Falling factorial (n)_k, taken as 0 when k > n >= 0."""
    if k > n >= 0:
        return 0
    out = 1
    for i in range(k):
        out *= n - i
    return out


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True, order=False)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts:
            raise ValueError("empty partition")
        if any(x < 1 for x in parts):
            raise ValueError(f"partition {parts} has a non-positive part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition {parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def multiplicity(self, size: int) -> int:
        return self.parts.count(size)

    @property
    def p(self) -> int:
        return self.multiplicity(1)

    @property
    def q(self) -> int:
        return self.multiplicity(2)

    @property
    def r(self) -> int:
        return self.multiplicity(3)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        out = []
        for size, mult in sorted(Counter(self.parts).items(), reverse=True):
            out.append(str(size) if mult == 1 else f"{size}^{mult}")
        return ",".join(out)

    def __repr__(self) -> str:
        return f"IntegerPartition({self.parts})"

    @classmethod
    def of(cls, *parts: int) -> IntegerPartition:
        return cls(tuple(sorted(parts, reverse=True)))


_PART_RE = re.compile(r"(\d+)(?:\^(\d+))?")


def parse_partition(text: str) -> IntegerPartition:
    """Parse the text form ``"2,1^6"``; parts are sorted before validation."""
    parts: list[int] = []
    for token in text.split(","):
        m = _PART_RE.fullmatch(token.strip())
        if m is None:
            raise ValueError(f"malformed partition {text!r}")
        size = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if size < 1 or mult < 1:
            raise ValueError(f"partition {text!r} contains a zero part or exponent")
        parts.extend([size] * mult)
    parts.sort(reverse=True)
    return IntegerPartition(tuple(parts))


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partition_list(n: int) -> tuple[IntegerPartition, ...]:
    return tuple(IntegerPartition(p) for p in _partitions(n, n))


def partitions(n: int) -> list[IntegerPartition]:
    """All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..."""
    if n < 1:
        raise ValueError("n must be positive")
    return list(_partition_list(n))


def class_size(lam: IntegerPartition) -> int:
    denom = 1
    for size, mult in Counter(lam.parts).items():
        denom *= size**mult * math.factorial(mult)
    return math.factorial(lam.n) // denom


# --- Murnaghan-Nakayama ------------------------------------------------------


def _beta_set(parts: Sequence[int]) -> tuple[int, ...]:
    m = len(parts)
    return tuple(parts[i] + (m - 1 - i) for i in range(m))


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    # beta: strictly decreasing beads; removing a border strip of length k is
    # sliding one bead k steps down onto an empty spot.
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in beads:
            continue
        jumped = sum(1 for c in beta if target < c < b)
        new = tuple(sorted((c if c != b else target for c in beta), reverse=True))
        # drop a trailing zero bead so equivalent beta-sets share cache entries
        if new and new[-1] == 0:
            new = tuple(c - 1 for c in new[:-1])
        total += (-1) ** jumped * _mn(new, rest)
    return total


def mn_character(lam: IntegerPartition, mu: IntegerPartition) -> int:
    """chi^lam evaluated on the class of cycle type mu."""
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: {lam} vs {mu}")
    return _mn(_beta_set(lam.parts), mu.parts)


def dimension(lam: IntegerPartition) -> int:
    """Degree chi^lam(1^n), via the hook length formula."""
    conj = [sum(1 for x in lam.parts if x > j) for j in range(lam.parts[0])]
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.n) // hooks


def character_values(lam: IntegerPartition) -> dict[IntegerPartition, int]:
    return {mu: mn_character(lam, mu) for mu in partitions(lam.n)}


# --- the seven closed forms ----------------------------------------------------


def char7_shapes(n: int) -> list[tuple[int, ...]]:
    """The seven shapes in fixed order; for n < 6 some entries are not partitions."""
    return [(n,), (n - 1, 1), (n - 2, 2), (n - 2, 1, 1), (n - 3, 3), (n - 3, 2, 1), (n - 3, 1, 1, 1)]


def char7(lam: IntegerPartition) -> tuple[int, ...]:
    if lam.n < 3:
        raise ValueError("char7 needs n >= 3")
    p, q, r = lam.p, lam.q, lam.r
    return (
        1,
        p - 1,
        gbinom(p - 1, 2) + q - 1,
        gbinom(p - 1, 2) - q,
        gbinom(p - 1, 3) + (p - 1) * (q - 1) + r,
        2 * gbinom(p - 1, 3) - p - r + 2,
        gbinom(p - 1, 3) - q * (p - 1) + r,
    )


# --- character combinations ----------------------------------------------------


@dataclass(frozen=True)
class CharacterCombination:
    """A class function written as sum_lambda coeffs[lambda] * chi^lambda."""

    n: int
    coeffs: Mapping[IntegerPartition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[IntegerPartition, Fraction] = {}
        for lam, c in self.coeffs.items():
            if lam.n != self.n:
                raise ValueError(f"partition {lam} is not a partition of {self.n}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        order = {lam: i for i, lam in enumerate(partitions(self.n))}
        ordered = {lam: clean[lam] for lam in sorted(clean, key=order.__getitem__) if clean[lam]}
        object.__setattr__(self, "coeffs", ordered)

    def __getitem__(self, lam: IntegerPartition) -> Fraction:
        return self.coeffs.get(lam, Fraction(0))

    def items(self):
        return self.coeffs.items()

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: CharacterCombination) -> CharacterCombination:
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return CharacterCombination(self.n, out)

    def scale(self, factor: Fraction | int) -> CharacterCombination:
        factor = Fraction(factor)
        return CharacterCombination(self.n, {lam: factor * c for lam, c in self.coeffs.items()})

    def __rmul__(self, factor: Fraction | int) -> CharacterCombination:
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterCombination):
            return NotImplemented
        return self.n == other.n and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.coeffs.items())))

    def evaluate(self, mu: IntegerPartition) -> Fraction:
        """Value of the class function on the class of cycle type ``mu``."""
        return sum((c * mn_character(lam, mu) for lam, c in self.coeffs.items()), Fraction(0))

    def values(self) -> dict[IntegerPartition, Fraction]:
        return {mu: self.evaluate(mu) for mu in partitions(self.n)}


def reduce_basis(v: Sequence[Fraction | int], n: int) -> CharacterCombination:
    """Rewrite ``v . char7`` in terms of genuine irreducible characters of S_n.

    For n <= 5 some of the seven closed forms are not irreducible; they vanish
    or coincide (up to sign) with another slot, and are folded accordingly.
    """
    if n < 3:
        raise ValueError("reduce_basis needs n >= 3")
    if len(v) != 7:
        raise ValueError("expected a 7-vector")
    v = [Fraction(x) for x in v]
    shapes = char7_shapes(n)
    # slot index -> list of (target slot, sign); an empty list drops the slot
    if n >= 6:
        fold = {i: [(i, 1)] for i in range(7)}
    elif n == 5:
        fold = {0: [(0, 1)], 1: [(1, 1)], 2: [(2, 1)], 3: [(3, 1)], 4: [], 5: [(5, 1)], 6: [(6, 1)]}
    elif n == 4:
        fold = {0: [(0, 1)], 1: [(1, 1)], 2: [(2, 1)], 3: [(3, 1)], 4: [(2, -1)], 5: [], 6: [(6, 1)]}
    else:
        fold = {0: [(0, 1)], 1: [(1, 1)], 2: [], 3: [(3, 1)], 4: [(1, -1)], 5: [(3, -1)], 6: []}
    coeffs: dict[IntegerPartition, Fraction] = {}
    for slot, targets in fold.items():
        for target, sign in targets:
            lam = IntegerPartition(shapes[target])
            coeffs[lam] = coeffs.get(lam, Fraction(0)) + sign * v[slot]
    return CharacterCombination(n, coeffs)


def inner_product(
    f: Mapping[IntegerPartition, Fraction | int] | Callable[[IntegerPartition], Fraction | int],
    g: Mapping[IntegerPartition, Fraction | int] | Callable[[IntegerPartition], Fraction | int],
    n: int | None = None,
) -> Fraction:
    """<f, g> = (1/n!) sum_lambda |C_lambda| f(lambda) g(lambda).

    All class functions here are rational-valued, so no conjugation is applied.
    """
    f_get = f.__getitem__ if isinstance(f, Mapping) else f
    g_get = g.__getitem__ if isinstance(g, Mapping) else g
    if n is None:
        ns = {lam.n for m in (f, g) if isinstance(m, Mapping) for lam in m}
        if len(ns) != 1:
            raise ValueError("cannot infer a single n from the arguments")
        n = ns.pop()
    for m in (f, g):
        if isinstance(m, Mapping) and set(m) != set(partitions(n)):
            raise ValueError(f"class function is not defined on exactly the partitions of {n}")
    total = Fraction(0)
    for lam in partitions(n):
        total += class_size(lam) * Fraction(f_get(lam)) * Fraction(g_get(lam))
    return total / math.factorial(n)
