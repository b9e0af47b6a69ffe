"""Permutations in one-line notation and vincular 3-patterns.

Values and positions are 1-based throughout. Composition uses the
"right factor acts first" convention: ``compose(p, s)(i) == p(s(i))``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .characters import IntegerPartition

__all__ = [
    "Permutation",
    "VincularPattern",
    "PatternError",
    "parse_pattern",
    "format_pattern",
    "count_occurrences",
    "cycle_type",
    "compose",
    "inverse",
    "identity",
    "enumerate_class",
    "psi_conjugate",
    "pattern_pair",
    "all_patterns",
    "pattern_orbits",
    "CLASSICAL_LETTERS",
]

CLASSICAL_LETTERS: tuple[tuple[int, int, int], ...] = tuple(itertools.permutations((1, 2, 3)))


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        if not word:
            raise ValueError("a permutation needs at least one letter")
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    @classmethod
    def from_string(cls, text: str) -> Permutation:
        """Parse ``"2 3 1"``, ``"2,3,1"`` or, for n <= 9, ``"231"``."""
        text = text.strip()
        if re.fullmatch(r"\d+", text):
            return cls(tuple(int(c) for c in text))
        return cls(tuple(int(c) for c in re.split(r"[\s,]+", text) if c))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return " ".join(map(str, self.word))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(pi: Permutation, sigma: Permutation) -> Permutation:
    """Return ``pi o sigma``, i.e. apply ``sigma`` first."""
    if pi.n != sigma.n:
        raise ValueError(f"size mismatch: {pi.n} != {sigma.n}")
    w = pi.word
    return Permutation(tuple(w[s - 1] for s in sigma.word))


def inverse(pi: Permutation) -> Permutation:
    out = [0] * pi.n
    for i, v in enumerate(pi.word, start=1):
        out[v - 1] = i
    return Permutation(tuple(out))


def _cycle_lengths(word: Sequence[int]) -> list[int]:
    n = len(word)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = word[i] - 1
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return lengths


def cycle_type(pi: Permutation) -> IntegerPartition:
    return IntegerPartition(tuple(_cycle_lengths(pi.word)))


def enumerate_class(n: int, lam: IntegerPartition, first: int | None = None) -> Iterator[Permutation]:
    """Yield every permutation of cycle type ``lam`` in lexicographic order.

    ``first`` restricts the stream to words starting with that value, which
    is a contiguous lexicographic block (used to chunk work across workers).
    """
    if lam.n != n:
        raise ValueError(f"partition {lam} does not sum to {n}")
    target = list(lam.parts)
    if first is None:
        words = itertools.permutations(range(1, n + 1))
    else:
        rest = [v for v in range(1, n + 1) if v != first]
        words = ((first,) + w for w in itertools.permutations(rest))
    for w in words:
        if _cycle_lengths(w) == target:
            yield Permutation(w)


def psi_conjugate(pi: Permutation) -> Permutation:
    """Conjugate by the reversal ``n n-1 ... 1``: ``tau_i = n+1 - pi_{n+1-i}``."""
    n = pi.n
    w = pi.word
    return Permutation(tuple(n + 1 - w[n - i] for i in range(1, n + 1)))


# --- vincular patterns -----------------------------------------------------

_PATTERN_RE = re.compile(r"([\[(])([123])(-?)([123])(-?)([123])([\])])")


@dataclass(frozen=True)
class VincularPattern:
    """A vincular 3-pattern stored as its classical letters plus constraint flags.

    ``adj12``/``adj23`` mean the corresponding dash is absent (letters must be
    adjacent in an occurrence); ``left_anchor``/``right_anchor`` mean a square
    bracket on that side (occurrence must start at position 1 / end at n).
    """

    letters: tuple[int, int, int]
    adj12: bool = False
    adj23: bool = False
    left_anchor: bool = False
    right_anchor: bool = False

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if sorted(letters) != [1, 2, 3]:
            raise PatternError(f"letters {letters} are not a permutation of 123")
        object.__setattr__(self, "letters", letters)
        if self.k == 4:
            raise PatternError(
                "patterns of the form [abc] have k=4 and only occur at n=3, "
                "where [abc] is equivalent to (abc); use the parenthesised form"
            )

    @property
    def k(self) -> int:
        """Number of adjacency and anchor conditions."""
        return int(self.adj12) + int(self.adj23) + int(self.left_anchor) + int(self.right_anchor)

    @property
    def classical(self) -> tuple[int, int, int]:
        return self.letters

    @property
    def is_classical(self) -> bool:
        return self.k == 0

    def __str__(self) -> str:
        return format_pattern(self)


def parse_pattern(text: str) -> VincularPattern:
    m = _PATTERN_RE.fullmatch(text)
    if m is None:
        raise PatternError(f"malformed pattern {text!r}; expected e.g. '(1-2-3)' or '[21-3)'")
    open_, a, d1, b, d2, c, close = m.groups()
    return VincularPattern(
        letters=(int(a), int(b), int(c)),
        adj12=d1 == "",
        adj23=d2 == "",
        left_anchor=open_ == "[",
        right_anchor=close == "]",
    )


def format_pattern(phi: VincularPattern) -> str:
    a, b, c = phi.letters
    return "".join(
        [
            "[" if phi.left_anchor else "(",
            str(a),
            "" if phi.adj12 else "-",
            str(b),
            "" if phi.adj23 else "-",
            str(c),
            "]" if phi.right_anchor else ")",
        ]
    )


def _reverse_complement(letters: tuple[int, int, int]) -> tuple[int, int, int]:
    return tuple(4 - x for x in reversed(letters))  # type: ignore[return-value]


def pattern_pair(phi: VincularPattern) -> VincularPattern:
    """The pattern whose occurrences correspond under ``psi_conjugate``."""
    return VincularPattern(
        letters=_reverse_complement(phi.letters),
        adj12=phi.adj23,
        adj23=phi.adj12,
        left_anchor=phi.right_anchor,
        right_anchor=phi.left_anchor,
    )


def all_patterns() -> list[VincularPattern]:
    """Every vincular 3-pattern with k <= 3, in a fixed order (90 in total)."""
    out = []
    for flags in itertools.product((False, True), repeat=4):
        if all(flags):
            continue
        adj12, adj23, left, right = flags
        for letters in CLASSICAL_LETTERS:
            out.append(VincularPattern(letters, adj12, adj23, left, right))
    out.sort(key=lambda p: (p.k, p.adj12 or p.adj23, p.left_anchor or p.right_anchor,
                            p.adj12, p.adj23, p.left_anchor, p.right_anchor, p.letters))
    return out


def pattern_orbits() -> list[VincularPattern]:
    """One representative per {phi, pattern_pair(phi)} orbit (48 in total)."""
    seen: set[VincularPattern] = set()
    reps = []
    for p in all_patterns():
        if p in seen:
            continue
        seen.add(p)
        seen.add(pattern_pair(p))
        reps.append(p)
    return reps


def _occurrence_triples(phi: VincularPattern, n: int) -> Iterator[tuple[int, int, int]]:
    """0-based index triples i1<i2<i3 allowed by the pattern's constraints."""
    if n < 3:
        return
    lo1, hi1 = (0, 0) if phi.left_anchor else (0, n - 3)
    for i1 in range(lo1, hi1 + 1):
        i2_range = (i1 + 1,) if phi.adj12 else range(i1 + 1, n - 1)
        for i2 in i2_range:
            if phi.adj23:
                i3_range: Sequence[int] = (i2 + 1,)
            else:
                i3_range = range(i2 + 1, n)
            for i3 in i3_range:
                if phi.right_anchor and i3 != n - 1:
                    continue
                yield i1, i2, i3


def occurrence_triples(phi: VincularPattern, n: int) -> list[tuple[int, int, int]]:
    return list(_occurrence_triples(phi, n))


def _letter_positions(phi: VincularPattern) -> tuple[int, int, int]:
    """Slots holding the smallest, middle and largest letter."""
    a = phi.letters.index(1)
    b = phi.letters.index(2)
    c = phi.letters.index(3)
    return a, b, c


def count_occurrences(phi: VincularPattern, pi: Permutation) -> int:
    w = pi.word
    lo, mid, hi = _letter_positions(phi)
    total = 0
    for triple in _occurrence_triples(phi, len(w)):
        if w[triple[lo]] < w[triple[mid]] < w[triple[hi]]:
            total += 1
    return total
