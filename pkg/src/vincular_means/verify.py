"""Self-verification: every structural identity checked against brute force.

Failures are reported as data (with a counterexample), never raised.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

import numpy as np

from . import characters as ch
from . import expectation as ex
from . import mset
from . import oracle
from . import perm
from .appendix import REFERENCE_TABLES

__all__ = ["CheckResult", "VerifyReport", "verify_suite", "CHECKS"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    detail: str = ""
    counterexample: dict[str, Any] | None = None

    def as_record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {"check": self.name, "status": "pass" if self.passed else "fail", "cases": self.cases}
        if self.detail:
            rec["detail"] = self.detail
        if self.counterexample is not None:
            rec["counterexample"] = self.counterexample
        return rec


@dataclass
class VerifyReport:
    n_max: int
    mode: str
    seed: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def as_record(self) -> dict[str, Any]:
        return {
            "n_max": self.n_max,
            "mode": self.mode,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [r.as_record() for r in self.results],
        }


class _Fail(Exception):
    def __init__(self, detail: str, **counterexample: Any):
        super().__init__(detail)
        self.detail = detail
        self.counterexample = {k: _plain(v) for k, v in counterexample.items()}


def _plain(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (ch.IntegerPartition, perm.VincularPattern, perm.Permutation)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


@dataclass
class _Ctx:
    n_max: int
    mode: str
    seed: int
    samples: int
    workers: int


# each check yields once per verified case and raises _Fail on the first mismatch
CheckFn = Callable[[_Ctx], Iterator[None]]
CHECKS: dict[str, CheckFn] = {}


def _check(name: str) -> Callable[[CheckFn], CheckFn]:
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn
    return register


def _upto(ctx: _Ctx, hard: int) -> range:
    return range(3, min(ctx.n_max, hard) + 1)


# --- characters ------------------------------------------------------------------


@_check("class-sizes")
def _class_sizes(ctx: _Ctx):
    for n in range(1, max(ctx.n_max, 12) + 1):
        total = sum(ch.class_size(lam) for lam in ch.partitions(n))
        if total != math.factorial(n):
            raise _Fail(f"class sizes of S_{n} sum to {total}", n=n)
        yield


@_check("class-enumeration")
def _class_enumeration(ctx: _Ctx):
    for n in range(1, min(ctx.n_max, 8) + 1):
        for lam in ch.partitions(n):
            got = oracle.class_array(lam).shape[0]
            if got != ch.class_size(lam):
                raise _Fail(f"enumerated {got} elements of C_{lam}, expected {ch.class_size(lam)}", partition=lam)
            yield


@_check("char7-vs-mn")
def _char7_vs_mn(ctx: _Ctx):
    for n in range(3, max(ctx.n_max, 10) + 1):
        shapes = ch.char7_shapes(n)
        for lam in ch.partitions(n):
            v = ch.char7(lam)
            if n >= 6:
                want = tuple(ch.mn_character(ch.IntegerPartition(s), lam) for s in shapes)
                if v != want:
                    raise _Fail(f"char7 mismatch at lambda={lam}", partition=lam, closed_form=v, mn=want)
            else:
                ok = {
                    5: v[4] == 0,
                    4: v[4] == -v[2] and v[5] == 0,
                    3: v[2] == 0 and v[4] == -v[1] and v[5] == -v[3] and v[6] == 0,
                }[n]
                valid = [i for i, s in enumerate(shapes) if s == tuple(sorted(s, reverse=True)) and s[-1] > 0]
                ok = ok and all(v[i] == ch.mn_character(ch.IntegerPartition(shapes[i]), lam) for i in valid)
                if not ok:
                    raise _Fail(f"degeneracy relation fails at n={n}, lambda={lam}", partition=lam, closed_form=v)
            yield


@_check("orthonormality")
def _orthonormality(ctx: _Ctx):
    for n in range(1, min(ctx.n_max, 8) + 1):
        parts = ch.partitions(n)
        table = {lam: ch.character_values(lam) for lam in parts}
        for a, b in itertools.combinations_with_replacement(parts, 2):
            got = ch.inner_product(table[a], table[b], n)
            if got != (1 if a == b else 0):
                raise _Fail(f"<chi^{a}, chi^{b}> = {got}", left=a, right=b, value=got)
            yield


@_check("dimension")
def _dimension(ctx: _Ctx):
    for n in range(1, max(ctx.n_max, 8) + 1):
        one = ch.IntegerPartition((1,) * n)
        for lam in ch.partitions(n):
            if ch.dimension(lam) != ch.mn_character(lam, one):
                raise _Fail(f"hook length and MN disagree on dim {lam}", partition=lam)
            yield


@_check("reduce-basis")
def _reduce_basis(ctx: _Ctx):
    for n in range(3, min(max(ctx.n_max, 6), 8) + 1):
        for slot in range(7):
            v = [0] * 7
            v[slot] = 1
            combo = ch.reduce_basis(v, n)
            for lam in ch.partitions(n):
                if combo.evaluate(lam) != ch.char7(lam)[slot]:
                    raise _Fail(f"reduce_basis slot {slot + 1} wrong at n={n}, lambda={lam}", slot=slot + 1, partition=lam)
                yield


# --- M-set engine ---------------------------------------------------------------


@_check("h-rows")
def _h_rows(ctx: _Ctx):
    for n in range(3, max(ctx.n_max, 10) + 1):
        rows = mset.h_char_rows(n)
        for lam in ch.partitions(n):
            h = mset.h_values(lam)
            c7 = ch.char7(lam)
            for key in mset.HCLASSES:
                dot = sum((x * y for x, y in zip(rows[key], c7)), Fraction(0))
                if dot != h[key]:
                    j, ell = key
                    raise _Fail(f"h-row ({j},{ell}) mismatch at lambda={lam}: row.char7={dot}, H={h[key]}",
                                row=list(key), partition=lam, dot=dot, h=h[key])
                yield


@_check("appendix-tables")
def _appendix(ctx: _Ctx):
    for key, rows in REFERENCE_TABLES.items():
        gen = mset.pattern_matrix(*key)
        if len(gen) != len(rows):
            raise _Fail(f"class {key}: {len(gen)} orders vs {len(rows)} reference rows", row=list(key))
        for order_text, pats in rows:
            order = mset.RelativeOrder.parse(order_text)
            want = [tuple(int(c) for c in p) for p in pats]
            if gen.get(order) != want:
                raise _Fail(f"class {key}, order {order_text}: generated {gen.get(order)}", row=list(key), order=order_text)
            yield


@_check("u61-binomial")
def _u61(ctx: _Ctx):
    for phi in perm.all_patterns():
        u = mset.u_coefficients(phi)[(6, 1)]
        if u != math.comb(6 - phi.k, 3):
            raise _Fail(f"u61({phi}) = {u}", pattern=phi)
        yield


@_check("classical-sum")
def _classical_sum(ctx: _Ctx):
    classical = [perm.VincularPattern(l) for l in perm.CLASSICAL_LETTERS]
    for n in _upto(ctx, 7):
        words = np.array(list(itertools.permutations(range(1, n + 1))))
        total = sum(oracle.batch_statistic(phi, words) for phi in classical)
        bad = np.nonzero(total != math.comb(n, 3))[0]
        if bad.size:
            raise _Fail("classical counts do not sum to C(n,3)", permutation=perm.Permutation(words[bad[0]]))
        yield


@_check("psi-occurrences")
def _psi_occurrences(ctx: _Ctx):
    for n in _upto(ctx, 6):
        words = np.array(list(itertools.permutations(range(1, n + 1))))
        psi_words = n + 1 - words[:, ::-1]
        for phi in perm.all_patterns():
            a = oracle.batch_statistic(phi, words)
            b = oracle.batch_statistic(perm.pattern_pair(phi), psi_words)
            bad = np.nonzero(a != b)[0]
            if bad.size:
                raise _Fail(f"psi symmetry fails for {phi}", pattern=phi, permutation=perm.Permutation(words[bad[0]]))
            yield


@_check("vincular-subset")
def _vincular_subset(ctx: _Ctx):
    for n in _upto(ctx, 6):
        words = np.array(list(itertools.permutations(range(1, n + 1))))
        for phi in perm.all_patterns():
            a = oracle.batch_statistic(phi, words)
            b = oracle.batch_statistic(perm.VincularPattern(phi.letters), words)
            if np.any(a > b):
                raise _Fail(f"{phi} has more occurrences than its classical closure", pattern=phi)
            yield


@_check("oracle-equivalence")
def _oracle_equivalence(ctx: _Ctx):
    hard = 5 if ctx.mode == "mc" else oracle.DEFAULT_MEAN_CAP
    for n in _upto(ctx, hard):
        for phi in perm.all_patterns():
            combo = mset.mean_coefficients(phi, n)
            for mu in ch.partitions(n):
                got = combo.evaluate(mu)
                want = oracle.brute_mean(phi, mu, workers=ctx.workers)
                if got != want:
                    raise _Fail(f"mean of {phi} on C_{mu}: characters give {got}, enumeration {want}",
                                pattern=phi, partition=mu, formula=got, brute=want)
                yield


@_check("psi-means")
def _psi_means(ctx: _Ctx):
    for n in range(3, max(ctx.n_max, 10) + 1):
        for phi in perm.all_patterns():
            if mset.mean_coefficients(phi, n) != mset.mean_coefficients(perm.pattern_pair(phi), n):
                raise _Fail(f"{phi} and its pair have different means at n={n}", pattern=phi, n=n)
            yield


@_check("caption-relations")
def _caption(ctx: _Ctx):
    P = perm.parse_pattern
    for n in range(6, max(ctx.n_max, 12) + 1):
        rels = [
            ("(32-1)", Fraction(n - 1, 2), "(32-1]"),
            ("(123)", Fraction(n - 2), "[123)"),
            ("(321)", Fraction(n - 2), "[321)"),
        ]
        for lhs, factor, rhs in rels:
            if mset.mean_coefficients(P(lhs), n) != mset.mean_coefficients(P(rhs), n).scale(factor):
                raise _Fail(f"{lhs} != {factor} * {rhs} at n={n}", n=n, pattern=lhs)
            yield


@_check("support-in-D_n")
def _support(ctx: _Ctx):
    for n in range(6, max(ctx.n_max, 12) + 1):
        d_n = {ch.IntegerPartition(s) for s in [(n,), (n - 1, 1), (n - 2, 2), (n - 2, 1, 1), (n - 3, 2, 1)]}
        for phi in perm.all_patterns():
            v = mset.mean_vector7(phi, n)
            if v[4] != 0 or v[6] != 0 or not set(mset.mean_coefficients(phi, n)) <= d_n:
                raise _Fail(f"{phi} has weight outside D_n at n={n}", pattern=phi, n=n, vector=v)
            yield


@_check("composite-stats")
def _composite(ctx: _Ctx):
    for n in range(6, max(ctx.n_max, 10) + 1):
        peak = mset.composite_mean([(1, "peak")], n)
        want = {ch.IntegerPartition((n,)): Fraction(n - 2, 3)}
        for s in [(n - 1, 1), (n - 2, 2), (n - 2, 1, 1), (n - 3, 2, 1)]:
            want[ch.IntegerPartition(s)] = Fraction(-1, n * (n - 1))
        if dict(peak.items()) != want:
            raise _Fail(f"peak coefficients wrong at n={n}", n=n)
        yield
    for n in _upto(ctx, 6):
        for name in ("des", "asc", "peak"):
            combo = mset.composite_mean([(1, name)], n)
            for mu in ch.partitions(n):
                if combo.evaluate(mu) != oracle.brute_stat_mean(name, mu):
                    raise _Fail(f"mean of {name} on C_{mu} disagrees with enumeration", stat=name, partition=mu)
                yield


# --- expectations ------------------------------------------------------------------


@_check("transposition-closed-forms")
def _closed_forms(ctx: _Ctx):
    for n in sorted({7, 10, *_upto(ctx, 12)}):
        mu = ex.transpositions(n)
        for letters in perm.CLASSICAL_LETTERS:
            phi = perm.VincularPattern(letters)
            combo = mset.mean_coefficients(phi, n)
            for t in range(7):
                a = ex.transposition_closed_form(phi, n, t)
                b = ex.expected_value(combo, ex.WalkSpec(n, mu, t))
                if a != b:
                    raise _Fail(f"closed form for {phi} at n={n}, t={t}: {a} vs {b}", pattern=phi, n=n, t=t)
                yield


@_check("t0-identity")
def _t0(ctx: _Ctx):
    for n in _upto(ctx, 8):
        ident = perm.identity(n)
        for phi in perm.all_patterns():
            combo = mset.mean_coefficients(phi, n)
            want = perm.count_occurrences(phi, ident)
            dims = sum((a * ch.dimension(lam) for lam, a in combo.items()), Fraction(0))
            for mu in ch.partitions(n):
                got = ex.expected_value(combo, ex.WalkSpec(n, mu, 0))
                if got != want or dims != want:
                    raise _Fail(f"t=0 value of {phi} on C_{mu} is {got}, identity has {want}", pattern=phi, partition=mu)
                yield


@_check("walk-exhaustive")
def _walk_exhaustive(ctx: _Ctx):
    if ctx.mode == "mc":
        return
    n = 4
    mu = ch.IntegerPartition((2, 1, 1))
    gens = list(perm.enumerate_class(n, mu))
    for t in (1, 2, 3):
        for phi in perm.all_patterns():
            got = ex.expected_value(mset.mean_coefficients(phi, n), ex.WalkSpec(n, mu, t))
            want = oracle.brute_expected(phi, gens, t)
            if got != want:
                raise _Fail(f"walk of {t} steps: {phi} gives {got}, enumeration {want}", pattern=phi, t=t)
            yield


@_check("walk-monte-carlo")
def _walk_mc(ctx: _Ctx):
    if ctx.mode != "mc":
        return
    n = max(ctx.n_max, 4)
    for mu in (ex.transpositions(n), ch.IntegerPartition((3,) + (1,) * (n - 3))):
        for i, letters in enumerate(perm.CLASSICAL_LETTERS):
            phi = perm.VincularPattern(letters)
            exact = ex.expected_value(mset.mean_coefficients(phi, n), ex.WalkSpec(n, mu, 4))
            est = oracle.mc_expected(phi, mu, 4, ctx.samples, ctx.seed + i, workers=ctx.workers)
            if abs(est.mean - float(exact)) > 4 * est.stderr + 1e-12:
                raise _Fail(f"Monte Carlo mean of {phi} on C_{mu}^4 is {est.mean:.6f} +- {est.stderr:.6f}, "
                            f"exact {float(exact):.6f}", pattern=phi, partition=mu)
            yield


@_check("uniform-class-sampling")
def _uniform_sampling(ctx: _Ctx):
    if ctx.mode != "mc":
        return
    n = min(max(ctx.n_max, 3), 5)
    rng = np.random.Generator(np.random.Philox(ctx.seed))
    draws = 100_000
    for mu in ch.partitions(n):
        size = ch.class_size(mu)
        sample = oracle.sample_class(mu, draws, rng) + 1
        keys, counts = np.unique(sample, axis=0, return_counts=True)
        members = {tuple(w) for w in oracle.class_array(mu).tolist()}
        if {tuple(k) for k in keys.tolist()} - members:
            raise _Fail(f"sampler left C_{mu}", partition=mu)
        p = 1 / size
        sigma = math.sqrt(draws * p * (1 - p)) if size > 1 else 0.0
        full = np.zeros(size)
        full[: len(counts)] = counts
        if np.any(np.abs(full - draws * p) > 5 * sigma + 1e-9):
            raise _Fail(f"non-uniform sampling of C_{mu}", partition=mu)
        yield


def verify_suite(
    n_max: int,
    mode: str = "brute",
    seed: int = 0,
    *,
    samples: int = 20_000,
    workers: int = 1,
    only: Iterable[str] | None = None,
) -> VerifyReport:
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    if mode not in ("brute", "mc"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = _Ctx(n_max, mode, seed, samples, workers)
    report = VerifyReport(n_max, mode, seed)
    names = list(CHECKS) if only is None else list(only)
    for name in names:
        fn = CHECKS[name]
        cases = 0
        try:
            for _ in fn(ctx):
                cases += 1
        except _Fail as fail:
            report.results.append(CheckResult(name, False, cases, fail.detail, fail.counterexample))
            continue
        report.results.append(CheckResult(name, True, cases))
    return report
