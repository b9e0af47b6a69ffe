"""Expected statistic values after t random steps drawn from one conjugacy class."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    CharacterCombination,
    IntegerPartition,
    class_size,
    dimension,
    mn_character,
    parse_partition,
)
from .perm import VincularPattern, parse_pattern

__all__ = [
    "WalkSpec",
    "b_coefficient",
    "expected_value",
    "expected_series",
    "transposition_closed_form",
    "transpositions",
]


@dataclass(frozen=True)
class WalkSpec:
    """t steps, each uniform on the class of cycle type ``mu``."""

    n: int
    mu: IntegerPartition
    t: int

    def __post_init__(self):
        if isinstance(self.mu, str):
            object.__setattr__(self, "mu", parse_partition(self.mu))
        if self.mu.n != self.n:
            raise ValueError(f"cycle type {self.mu} is not a partition of {self.n}")
        if self.t < 0:
            raise ValueError("t must be non-negative")

    @property
    def gamma_size(self) -> int:
        return class_size(self.mu)


def transpositions(n: int) -> IntegerPartition:
    return IntegerPartition((2,) + (1,) * (n - 2))


def _power(base: Fraction, exp: int) -> Fraction:
    # 0**0 == 1 is what Fraction does already; kept explicit for t = 0
    return Fraction(1) if exp == 0 else base**exp


def b_coefficient(lam: IntegerPartition, spec: WalkSpec) -> Fraction:
    """Coefficient of chi^lam in the class function counting t-step walks to each class."""
    if lam.n != spec.n:
        raise ValueError(f"size mismatch: {lam} vs n={spec.n}")
    dim = dimension(lam)
    numer = _power(Fraction(spec.gamma_size * mn_character(lam, spec.mu)), spec.t)
    # dim^(t-1) in the denominator, written so that t = 0 gives dim/n!
    return numer * dim / (math.factorial(spec.n) * _power(Fraction(dim), spec.t))


def expected_value(stat: CharacterCombination, spec: WalkSpec) -> Fraction:
    """E(stat(g_1 ... g_t)) = n!/|Gamma|^t * sum_lam a_lam b_lam."""
    if stat.n != spec.n:
        raise ValueError(f"size mismatch: statistic on S_{stat.n}, walk on S_{spec.n}")
    inner = sum((a * b_coefficient(lam, spec) for lam, a in stat.items()), Fraction(0))
    return Fraction(math.factorial(spec.n)) / Fraction(spec.gamma_size) ** spec.t * inner


def expected_series(stat: CharacterCombination, mu: IntegerPartition | str, t_max: int) -> list[Fraction]:
    if isinstance(mu, str):
        mu = parse_partition(mu)
    if t_max < 0:
        raise ValueError("t_max must be non-negative")
    if mu.n != stat.n:
        raise ValueError(f"size mismatch: statistic on S_{stat.n}, cycle type {mu}")
    return [expected_value(stat, WalkSpec(stat.n, mu, t)) for t in range(t_max + 1)]


def transposition_closed_form(classical: VincularPattern | str, n: int, t: int, *, corrected: bool = True) -> Fraction:
    """Closed forms for classical pattern counts after t random transpositions.

    The (3-2-1) formula as usually printed has ``+`` on its (1 - 4/(n-1))^t
    term; that contradicts the t = 0 value (the identity has no inversions).
    ``corrected=False`` reproduces the printed sign.
    """
    phi = parse_pattern(classical) if isinstance(classical, str) else classical
    if not phi.is_classical:
        raise ValueError(f"{phi} is not a classical pattern")
    if n < 3:
        raise ValueError("n must be >= 3")
    if t < 0:
        raise ValueError("t must be non-negative")
    F = Fraction
    base = F(math.comb(n, 3), 6)
    x1 = _power(1 - F(2, n - 1), t)
    x2 = _power(1 - F(4, n), t)
    x3 = _power(1 - F(4, n - 1), t)
    x4 = _power(1 - F(6, n), t)
    letters = phi.letters
    if letters == (1, 2, 3):
        return (base + F((n + 1) * (n - 1) * (3 * n - 4), 60) * x1 + F((n + 1) * n * (n - 3), 60) * x2
                + F((3 * n - 2) * (n - 1) * (n - 2), 60) * x3 + F(n * (n - 2) * (n - 4), 45) * x4)
    if letters == (3, 2, 1):
        sign = -1 if corrected else 1
        return (base - F((n + 1) * (n - 1) * (n - 3), 30) * x1 + F((n + 1) * n * (n - 3), 60) * x2
                + sign * F((2 * n - 3) * (n - 1) * (n - 2), 60) * x3 + F(n * (n - 2) * (n - 4), 45) * x4)
    if letters in ((1, 3, 2), (2, 1, 3)):
        return (base + F((n + 1) * (n - 1) * (n - 3), 60) * x1 - F((n + 1) * n * (n - 3), 120) * x2
                - F((n + 1) * (n - 1) * (n - 2), 40) * x3 - F(n * (n - 2) * (n - 4), 90) * x4)
    return (base - F((n + 1) * (n - 1) * (3 * n - 4), 120) * x1 - F((n + 1) * n * (n - 3), 120) * x2
            + F((n + 1) * (n - 1) * (n - 2), 60) * x3 - F(n * (n - 2) * (n - 4), 90) * x4)
