"""Brute-force ground truth: class means, exhaustive walks and Monte Carlo walks.

Nothing here touches character theory; every value is obtained by counting
pattern occurrences on explicit permutations.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .characters import IntegerPartition, parse_partition
from .perm import (
    Permutation,
    VincularPattern,
    _letter_positions,
    compose,
    count_occurrences,
    enumerate_class,
    identity,
    occurrence_triples,
    parse_pattern,
)

__all__ = [
    "McEstimate",
    "Statistic",
    "DEFAULT_MEAN_CAP",
    "DEFAULT_WALK_CAP",
    "statistic_function",
    "batch_statistic",
    "class_array",
    "brute_mean",
    "brute_stat_mean",
    "brute_expected",
    "brute_expected_tuples",
    "mc_expected",
    "sample_class",
    "descents",
    "ascents",
    "peaks",
]

DEFAULT_MEAN_CAP = 8
DEFAULT_WALK_CAP = 10**7

Statistic = Union[VincularPattern, str, Sequence[tuple[Union[Fraction, int], Union[VincularPattern, str]]]]


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.stderr < 0:
            raise ValueError("stderr must be non-negative")


# --- plain statistics ------------------------------------------------------------


def descents(pi: Permutation) -> int:
    w = pi.word
    return sum(1 for i in range(len(w) - 1) if w[i] > w[i + 1])


def ascents(pi: Permutation) -> int:
    w = pi.word
    return sum(1 for i in range(len(w) - 1) if w[i] < w[i + 1])


def peaks(pi: Permutation) -> int:
    w = pi.word
    return sum(1 for i in range(1, len(w) - 1) if w[i - 1] < w[i] > w[i + 1])


_PLAIN = {"des": descents, "asc": ascents, "peak": peaks}


def _normalise(stat: Statistic) -> list[tuple[Fraction, VincularPattern | str]]:
    if isinstance(stat, VincularPattern):
        return [(Fraction(1), stat)]
    if isinstance(stat, str):
        return [(Fraction(1), stat if stat in _PLAIN else parse_pattern(stat))]
    out = []
    for coeff, term in stat:
        if isinstance(term, str) and term not in _PLAIN:
            term = parse_pattern(term)
        out.append((Fraction(coeff), term))
    return out


def statistic_function(stat: Statistic) -> Callable[[Permutation], Fraction]:
    """Turn a pattern, builtin name, or weighted list of those into pi -> value."""
    terms = _normalise(stat)

    def evaluate(pi: Permutation) -> Fraction:
        total = Fraction(0)
        for coeff, term in terms:
            value = _PLAIN[term](pi) if isinstance(term, str) else count_occurrences(term, pi)
            total += coeff * value
        return total

    return evaluate


def _batch_pattern(phi: VincularPattern, words: np.ndarray) -> np.ndarray:
    m, n = words.shape
    lo, mid, hi = _letter_positions(phi)
    out = np.zeros(m, dtype=np.int64)
    for triple in occurrence_triples(phi, n):
        a, b, c = triple[lo], triple[mid], triple[hi]
        out += (words[:, a] < words[:, b]) & (words[:, b] < words[:, c])
    return out


def _batch_plain(name: str, words: np.ndarray) -> np.ndarray:
    up = words[:, 1:] > words[:, :-1]
    if name == "asc":
        return up.sum(axis=1)
    if name == "des":
        return (~up).sum(axis=1)
    return (up[:, :-1] & ~up[:, 1:]).sum(axis=1)


def batch_statistic(stat: Statistic, words: np.ndarray) -> list[Fraction] | np.ndarray:
    """Evaluate on a (m, n) array of one-line words.

    Returns an int64 array when every weight is an integer, otherwise a list
    of Fractions.
    """
    terms = _normalise(stat)
    integral = all(c.denominator == 1 for c, _ in terms)
    acc = np.zeros(words.shape[0], dtype=np.int64)
    parts = []
    for coeff, term in terms:
        raw = _batch_plain(term, words) if isinstance(term, str) else _batch_pattern(term, words)
        if integral:
            acc += int(coeff) * raw
        else:
            parts.append((coeff, raw))
    if integral:
        return acc
    return [sum((c * int(r[i]) for c, r in parts), Fraction(0)) for i in range(words.shape[0])]


def _exact_total(values: list[Fraction] | np.ndarray) -> Fraction:
    if isinstance(values, np.ndarray):
        return Fraction(int(values.sum()))
    return sum(values, Fraction(0))


# --- exhaustive class means ----------------------------------------------------------


@lru_cache(maxsize=64)
def _class_array(parts: tuple[int, ...], first: int | None) -> np.ndarray:
    lam = IntegerPartition(parts)
    words = [p.word for p in enumerate_class(lam.n, lam, first=first)]
    arr = np.array(words, dtype=np.int64).reshape(len(words), lam.n)
    arr.setflags(write=False)
    return arr


def class_array(lam: IntegerPartition, first: int | None = None) -> np.ndarray:
    """The class C_lam as a read-only (|C_lam|, n) array in lexicographic order."""
    return _class_array(lam.parts, first)


def _chunk_total(args: tuple[Statistic, tuple[int, ...], int | None]) -> tuple[Fraction, int]:
    stat, parts, first = args
    arr = _class_array(parts, first)
    if arr.shape[0] == 0:
        return Fraction(0), 0
    return _exact_total(batch_statistic(stat, arr)), arr.shape[0]


def brute_stat_mean(
    stat: Statistic,
    mu: IntegerPartition | str,
    *,
    cap: int = DEFAULT_MEAN_CAP,
    workers: int = 1,
) -> Fraction:
    """Exact mean of ``stat`` over the conjugacy class of cycle type ``mu``.

    With ``workers > 1`` the class is split into lexicographic blocks by first
    letter; block totals are exact, so the result does not depend on workers.
    """
    if isinstance(mu, str):
        mu = parse_partition(mu)
    n = mu.n
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    if workers <= 1:
        results = [_chunk_total((stat, mu.parts, None))]
    else:
        jobs = [(stat, mu.parts, first) for first in range(1, n + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chunk_total, jobs))
    total = sum((r[0] for r in results), Fraction(0))
    count = sum(r[1] for r in results)
    return total / count


def brute_mean(phi: VincularPattern, mu: IntegerPartition | str, *, cap: int = DEFAULT_MEAN_CAP,
               workers: int = 1) -> Fraction:
    return brute_stat_mean(phi, mu, cap=cap, workers=workers)


# --- exhaustive walks ------------------------------------------------------------------


def brute_expected(
    stat: Statistic,
    generators: Iterable[Permutation],
    t: int,
    *,
    cap: int = DEFAULT_WALK_CAP,
) -> Fraction:
    """Exact average of ``stat(g_1 ... g_t)`` over all t-tuples of generators.

    Products are accumulated as a multiset of permutations step by step, which
    weights every tuple equally without listing the tuples one by one.
    """
    gens = list(generators)
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        if not gens:
            raise ValueError("need at least one generator to fix n")
        return statistic_function(stat)(identity(gens[0].n))
    if not gens:
        raise ValueError("empty generator set with t >= 1")
    if len(gens) ** t > cap:
        raise ValueError(f"{len(gens)}^{t} products exceed the cap {cap}")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators of different sizes")
    dist: Counter[Permutation] = Counter({identity(n): 1})
    for _ in range(t):
        step: Counter[Permutation] = Counter()
        for w, mult in dist.items():
            for g in gens:
                step[compose(w, g)] += mult
        dist = step
    f = statistic_function(stat)
    total = sum((mult * f(w) for w, mult in dist.items()), Fraction(0))
    return total / len(gens) ** t


def brute_expected_tuples(stat: Statistic, generators: Sequence[Permutation], t: int) -> Fraction:
    """Literal enumeration of every t-tuple; only for tiny cases."""
    gens = list(generators)
    f = statistic_function(stat)
    n = gens[0].n
    total = Fraction(0)
    count = 0
    for tup in itertools.product(gens, repeat=t):
        w = identity(n)
        for g in tup:
            w = compose(w, g)
        total += f(w)
        count += 1
    return total / count


# --- Monte Carlo -----------------------------------------------------------------------


def _representative(mu: IntegerPartition) -> np.ndarray:
    """0-based one-line word of the permutation (1 2 .. m1)(m1+1 ..) ... ."""
    word = np.empty(mu.n, dtype=np.int64)
    start = 0
    for size in mu.parts:
        for i in range(size):
            word[start + i] = start + (i + 1) % size
        start += size
    return word


def sample_class(mu: IntegerPartition, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` uniform draws from C_mu as a 0-based (size, n) array.

    A fixed representative is conjugated by a uniform permutation; by
    orbit-stabiliser every class element is equally likely.
    """
    n = mu.n
    rep = _representative(mu)
    sigma = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
    sigma_inv = np.argsort(sigma, axis=1)
    # sigma o rep o sigma^-1
    return np.take_along_axis(sigma, rep[sigma_inv], axis=1)


def _mc_chunk(stat: Statistic, mu: IntegerPartition, t: int, size: int,
              rng: np.random.Generator) -> np.ndarray:
    n = mu.n
    w = np.tile(np.arange(n), (size, 1))
    for _ in range(t):
        g = sample_class(mu, size, rng)
        w = np.take_along_axis(w, g, axis=1)
    values = batch_statistic(stat, w + 1)
    if isinstance(values, list):
        return np.array([float(v) for v in values])
    return values.astype(np.float64)


def _mc_worker(args: tuple[Statistic, tuple[int, ...], int, int, np.random.SeedSequence, int]) -> np.ndarray:
    stat, parts, t, samples, seq, chunk = args
    rng = np.random.Generator(np.random.Philox(seq))
    mu = IntegerPartition(parts)
    out = []
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        out.append(_mc_chunk(stat, mu, t, size, rng))
        remaining -= size
    return np.concatenate(out)


def mc_expected(
    stat: Statistic,
    mu: IntegerPartition | str,
    t: int,
    samples: int,
    seed: int,
    *,
    workers: int = 1,
    chunk: int = 1 << 15,
) -> McEstimate:
    """Monte Carlo estimate of E(stat(g_1 ... g_t)) with g_i uniform on C_mu.

    Uses Philox streams spawned from ``SeedSequence(seed)``, one per worker, so
    a fixed (seed, samples, workers) reproduces the estimate bit for bit.
    """
    if isinstance(mu, str):
        mu = parse_partition(mu)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        value = statistic_function(stat)(identity(mu.n))
        return McEstimate(float(value), 0.0, samples, seed)
    workers = max(1, workers)
    seqs = np.random.SeedSequence(seed).spawn(workers)
    shares = [samples // workers + (1 if i < samples % workers else 0) for i in range(workers)]
    jobs = [(stat, mu.parts, t, s, seq, chunk) for s, seq in zip(shares, seqs) if s > 0]
    if len(jobs) == 1:
        values = _mc_worker(jobs[0])
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            values = np.concatenate(list(pool.map(_mc_worker, jobs)))
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return McEstimate(mean, stderr, samples, seed)
