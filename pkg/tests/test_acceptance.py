"""Acceptance criteria, one test each.

Every test records a single "PASS/FAIL criterion N: ..." line; pytest prints
them in an "acceptance criteria" section at the end of the run, and running
this file directly prints them as it goes.  All comparisons are exact except
criterion 8, which uses the pinned 4-standard-error band.
"""

import math
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from table_fixtures import fixture_rows
from vincular_means.appendix import REFERENCE_TABLES
from vincular_means.characters import (
    IntegerPartition,
    char7,
    char7_shapes,
    character_values,
    class_size,
    inner_product,
    mn_character,
    partitions,
)
from vincular_means.expectation import WalkSpec, expected_value, transposition_closed_form, transpositions
from vincular_means.mset import (
    HCLASSES,
    RelativeOrder,
    composite_mean,
    mean_coefficients,
    mean_vector7,
    pattern_matrix,
    u_coefficients,
)
from vincular_means.oracle import brute_expected, brute_mean, brute_stat_mean, mc_expected
from vincular_means.perm import (
    CLASSICAL_LETTERS,
    VincularPattern,
    all_patterns,
    count_occurrences,
    enumerate_class,
    identity,
    parse_pattern,
    pattern_orbits,
)

MC_SEED = 20240601
MC_SAMPLES = 100_000
MC_SIGMAS = 4
MC_BUDGET_S = 30
ORACLE_BUDGET_S = 300


@contextmanager
def criterion(number, title):
    """Collect failures for one criterion; record one line and assert at the end."""
    notes = []
    start = time.perf_counter()
    try:
        yield notes
    except Exception as exc:  # an unexpected error is a failure of the criterion, not a crash
        notes.append(f"error: {exc!r}")
    elapsed = time.perf_counter() - start
    status = "FAIL" if any(n.startswith(("mismatch", "error", "over")) for n in notes) else "PASS"
    detail = "; ".join(notes) if notes else "ok"
    line = f"{status} criterion {number}: {title} [{elapsed:.1f}s] {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert status == "PASS", line


def test_criterion_01_oracle_equivalence():
    with criterion(1, "character means equal class enumeration, every pattern, n=3..7") as notes:
        start = time.perf_counter()
        cases = 0
        for n in range(3, 8):
            for phi in all_patterns():
                combo = mean_coefficients(phi, n)
                for mu in partitions(n):
                    got, want = combo.evaluate(mu), brute_mean(phi, mu)
                    cases += 1
                    if got != want:
                        notes.append(f"mismatch {phi} mu={mu}: {got} vs {want}")
        elapsed = time.perf_counter() - start
        if elapsed > ORACLE_BUDGET_S:
            notes.append(f"over budget: {elapsed:.0f}s > {ORACLE_BUDGET_S}s")
        notes.append(f"{cases} (pattern, class) pairs over {len(all_patterns())} patterns "
                     f"({len(pattern_orbits())} pair-orbits)")


def test_criterion_02_table_fixtures():
    with criterion(2, "published coefficient rows and caption relations, n=6..12") as notes:
        rows = list(fixture_rows())
        for text, row in rows:
            phi = parse_pattern(text)
            for n in range(6, 13):
                if mean_vector7(phi, n) != tuple(Fraction(x) for x in row(n)):
                    notes.append(f"mismatch row {text} at n={n}")
        P = parse_pattern
        for n in range(6, 13):
            if mean_coefficients(P("(32-1)"), n) != mean_coefficients(P("(32-1]"), n).scale(Fraction(n - 1, 2)):
                notes.append(f"mismatch (32-1) relation at n={n}")
            if mean_coefficients(P("(123)"), n) != mean_coefficients(P("[123)"), n).scale(n - 2):
                notes.append(f"mismatch (123) relation at n={n}")
        notes.append(f"{len(rows)} rows x 7 sizes")


def test_criterion_03_worked_example():
    with criterion(3, "worked example u-values and vector; u61 = C(6-k,3)") as notes:
        phi = parse_pattern("[21-3)")
        u = u_coefficients(phi)
        got = tuple(u[key] for key in HCLASSES)
        if got != (0, 1, 0, 1, 2, 2, 1, 4, 5, 4):
            notes.append(f"mismatch u-values {got}")
        F = Fraction
        for n in range(6, 13):
            want = (F(n - 2, 6), F((n - 3) * (n - 4), 6 * n * (n - 1)), F(1, 3 * n), -F(n - 2, n * (n - 1)), 0, 0, 0)
            if mean_vector7(phi, n) != want:
                notes.append(f"mismatch vector at n={n}")
        for p in all_patterns():
            if u_coefficients(p)[(6, 1)] != math.comb(6 - p.k, 3):
                notes.append(f"mismatch u61 for {p}")


def test_criterion_04_appendix_regeneration():
    with criterion(4, "generated M-set pattern matrices equal the transcribed tables") as notes:
        cells = 0
        for key, rows in REFERENCE_TABLES.items():
            gen = pattern_matrix(*key)
            if len(gen) != len(rows):
                notes.append(f"mismatch row count for class {key}")
            for order_text, pats in rows:
                want = [tuple(int(c) for c in p) for p in pats]
                have = gen.get(RelativeOrder.parse(order_text))
                cells += len(want)
                if have != want:
                    notes.append(f"mismatch class {key} order {order_text}")
        notes.append(f"{len(REFERENCE_TABLES)} M-set classes, {cells} cells")


def test_criterion_05_character_layer():
    with criterion(5, "closed-form characters, orthonormality, class sizes") as notes:
        for n in range(3, 11):
            shapes = char7_shapes(n)
            for lam in partitions(n):
                v = char7(lam)
                for i, s in enumerate(shapes):
                    if s[-1] > 0 and list(s) == sorted(s, reverse=True):
                        if v[i] != mn_character(IntegerPartition(s), lam):
                            notes.append(f"mismatch char7 slot {i + 1} at {lam}")
                ok = {5: v[4] == 0,
                      4: v[4] == -v[2] and v[5] == 0,
                      3: v[2] == 0 and v[4] == -v[1] and v[5] == -v[3] and v[6] == 0}.get(n, True)
                if not ok:
                    notes.append(f"mismatch degeneracy at {lam}")
        for n in range(1, 9):
            table = {lam: character_values(lam) for lam in partitions(n)}
            for a in table:
                for b in table:
                    if inner_product(table[a], table[b]) != (1 if a == b else 0):
                        notes.append(f"mismatch <{a},{b}>")
        for n in range(1, 13):
            if sum(class_size(lam) for lam in partitions(n)) != math.factorial(n):
                notes.append(f"mismatch class sizes n={n}")


def test_criterion_06_transposition_closed_forms():
    with criterion(6, "closed forms equal the character pipeline, sign-corrected (3-2-1)") as notes:
        for n in (7, 10):
            mu = transpositions(n)
            for letters in CLASSICAL_LETTERS:
                phi = VincularPattern(letters)
                combo = mean_coefficients(phi, n)
                for t in range(7):
                    if transposition_closed_form(phi, n, t) != expected_value(combo, WalkSpec(n, mu, t)):
                        notes.append(f"mismatch {phi} n={n} t={t}")
                if transposition_closed_form(phi, n, 0) != count_occurrences(phi, identity(n)):
                    notes.append(f"mismatch t=0 value {phi} n={n}")
            if transposition_closed_form("(3-2-1)", n, 0) != 0 or transposition_closed_form("(1-2-3)", n, 0) != math.comb(n, 3):
                notes.append(f"mismatch t=0 anchors n={n}")
        notes.append(f"printed sign would give (3-2-1) at n=7, t=0: "
                     f"{transposition_closed_form('(3-2-1)', 7, 0, corrected=False)}")


def test_criterion_07_walk_ground_truth():
    with criterion(7, "n=4 transposition walks equal exhaustive products, t=1..3") as notes:
        n, mu = 4, IntegerPartition((2, 1, 1))
        gens = list(enumerate_class(n, mu))
        for t in (1, 2, 3):
            for phi in all_patterns():
                got = expected_value(mean_coefficients(phi, n), WalkSpec(n, mu, t))
                if got != brute_expected(phi, gens, t):
                    notes.append(f"mismatch {phi} t={t}")
        notes.append(f"{len(gens)}^3 = {len(gens) ** 3} products at t=3")


def test_criterion_08_monte_carlo():
    with criterion(8, f"Monte Carlo within {MC_SIGMAS} standard errors") as notes:
        start = time.perf_counter()
        n, t = 8, 4
        mu = transpositions(n)
        exact = expected_value(mean_coefficients(parse_pattern("(1-2-3)"), n), WalkSpec(n, mu, t))
        est = mc_expected("(1-2-3)", mu, t, MC_SAMPLES, MC_SEED)
        elapsed = time.perf_counter() - start
        gap = abs(est.mean - float(exact))
        if gap > MC_SIGMAS * est.stderr:
            notes.append(f"mismatch |{est.mean:.5f} - {float(exact):.5f}| > {MC_SIGMAS}*{est.stderr:.5f}")
        if elapsed > MC_BUDGET_S:
            notes.append(f"over budget {elapsed:.1f}s")
        notes.append(f"estimate {est.mean:.5f} +- {est.stderr:.5f}, exact {float(exact):.5f}, seed {MC_SEED}")


def test_criterion_09_composite_statistics():
    with criterion(9, "peak coefficients; descent and ascent means by enumeration") as notes:
        for n in range(6, 11):
            want = {IntegerPartition((n,)): Fraction(n - 2, 3)}
            for s in [(n - 1, 1), (n - 2, 2), (n - 2, 1, 1), (n - 3, 2, 1)]:
                want[IntegerPartition(s)] = Fraction(-1, n * (n - 1))
            if dict(composite_mean([(1, "peak")], n).items()) != want:
                notes.append(f"mismatch peak n={n}")
        for n in range(3, 7):
            for name in ("des", "asc"):
                combo = composite_mean([(1, name)], n)
                for mu in partitions(n):
                    if combo.evaluate(mu) != brute_stat_mean(name, mu):
                        notes.append(f"mismatch {name} mu={mu}")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "vincular_means", *argv], capture_output=True, check=False)


def test_criterion_10_determinism():
    with criterion(10, "worker-count invariance and byte-identical CLI output") as notes:
        for n in (6, 7):
            for mu in partitions(n)[::3]:
                for phi in all_patterns()[::9]:
                    if brute_mean(phi, mu, workers=1) != brute_mean(phi, mu, workers=4):
                        notes.append(f"mismatch workers for {phi} mu={mu}")
        commands = [
            ["table", "--n", "9", "--format", "csv"],
            ["coeffs", "--stat", "peak", "--n", "7", "--approx"],
            ["expect", "--pattern", "(1-2-3)", "--gamma", "2,1^6", "--t-max", "4", "--samples", "5000", "--seed", "3"],
            ["verify", "--n-max", "5", "--mode", "mc", "--seed", "42", "--samples", "4000"],
        ]
        for argv in commands:
            a, b = _cli(*argv), _cli(*argv)
            if a.returncode != 0 or a.stdout != b.stdout or not a.stdout:
                notes.append(f"mismatch output for {' '.join(argv[:1])}")
        notes.append(f"{len(commands)} commands run twice")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
