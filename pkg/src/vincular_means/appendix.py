"""Reference M-set pattern tables for the classes with j <= 5.

Each entry maps a relative order (smallest symbol first) to the patterns of
the class's templates, in the template order of ``templates_for_class``.
This is transcribed reference data; ``mset.pattern_matrix`` regenerates it.
"""

from __future__ import annotations

REFERENCE_TABLES: dict[tuple[int, int], list[tuple[str, tuple[str, ...]]]] = {
    (3, 1): [
        ("i1<i2<i3", ("123",)),
    ],
    (3, 2): [
        ("i1<i2<i3", ("132", "321", "213")),
    ],
    (3, 3): [
        ("i1<i2<i3", ("231", "312")),
    ],
    (4, 1): [
        ("a4<i1<i2<i3", ("231", "213", "123")),
        ("i1<a4<i2<i3", ("132", "123", "123")),
        ("i1<i2<a4<i3", ("123", "123", "213")),
        ("i1<i2<i3<a4", ("123", "132", "312")),
    ],
    (4, 2): [
        ("a4<i1<i2<i3", ("321", "312", "132")),
        ("i1<a4<i2<i3", ("312", "321", "132")),
        ("i1<i2<a4<i3", ("213", "321", "231")),
        ("i1<i2<i3<a4", ("213", "231", "321")),
    ],
    (4, 3): [
        ("a4<i1<i2<i3", ("231", "213", "321", "132", "213", "123")),
        ("i1<a4<i2<i3", ("132", "123", "321", "231", "213", "213")),
        ("i1<i2<a4<i3", ("132", "132", "312", "321", "123", "213")),
        ("i1<i2<i3<a4", ("123", "132", "213", "321", "132", "312")),
    ],
    (4, 4): [
        ("a4<i1<i2<i3", ("231", "312", "321", "132", "312", "123")),
        ("i1<a4<i2<i3", ("231", "312", "312", "231", "321", "213")),
        ("i1<i2<a4<i3", ("132", "321", "312", "231", "231", "312")),
        ("i1<i2<i3<a4", ("123", "231", "213", "321", "231", "312")),
    ],
    (5, 1): [
        ("a4<i1<a5<i2<i3", ("213", "132", "123")),
        ("a5<i1<a4<i2<i3", ("231", "231", "213")),
        ("a4<i1<i2<a5<i3", ("213", "123", "123")),
        ("a5<i1<i2<a4<i3", ("231", "321", "213")),
        ("i1<a4<a5<i2<i3", ("123", "132", "123")),
        ("i1<a5<a4<i2<i3", ("132", "231", "213")),
        ("i1<a4<i2<a5<i3", ("123", "123", "123")),
        ("i1<a5<i2<a4<i3", ("132", "321", "213")),
        ("i1<a4<i2<i3<a5", ("123", "123", "132")),
        ("i1<a5<i2<i3<a4", ("132", "321", "312")),
        ("i1<i2<a4<a5<i3", ("123", "213", "123")),
        ("i1<i2<a5<a4<i3", ("132", "312", "213")),
        ("i1<i2<a4<i3<a5", ("123", "213", "132")),
        ("i1<i2<a5<i3<a4", ("132", "312", "312")),
        ("a4<a5<i1<i2<i3", ("312", "132", "123")),
        ("a5<a4<i1<i2<i3", ("321", "231", "213")),
        ("a4<i1<i2<i3<a5", ("213", "123", "132")),
        ("a5<i1<i2<i3<a4", ("231", "321", "312")),
        ("i1<i2<i3<a4<a5", ("123", "213", "231")),
        ("i1<i2<i3<a5<a4", ("132", "312", "321")),
    ],
    (5, 2): [
        ("a4<i1<a5<i2<i3", ("312", "312", "123", "132", "132", "123")),
        ("a5<i1<a4<i2<i3", ("321", "321", "321", "231", "312", "213")),
        ("a4<i1<i2<a5<i3", ("213", "312", "123", "132", "132", "132")),
        ("a5<i1<i2<a4<i3", ("231", "321", "321", "231", "312", "312")),
        ("i1<a4<a5<i2<i3", ("312", "312", "213", "132", "231", "123")),
        ("i1<a5<a4<i2<i3", ("321", "321", "312", "231", "321", "213")),
        ("i1<a4<i2<a5<i3", ("213", "312", "213", "132", "231", "132")),
        ("i1<a5<i2<a4<i3", ("231", "321", "312", "231", "321", "312")),
        ("i1<a4<i2<i3<a5", ("213", "213", "213", "123", "231", "132")),
        ("i1<a5<i2<i3<a4", ("231", "231", "312", "321", "321", "312")),
        ("i1<i2<a4<a5<i3", ("123", "312", "213", "132", "231", "231")),
        ("i1<i2<a5<a4<i3", ("132", "321", "312", "231", "321", "321")),
        ("i1<i2<a4<i3<a5", ("123", "213", "213", "123", "231", "231")),
        ("i1<i2<a5<i3<a4", ("132", "231", "312", "321", "321", "321")),
        ("a4<a5<i1<i2<i3", ("312", "312", "132", "132", "123", "123")),
        ("a5<a4<i1<i2<i3", ("321", "321", "231", "231", "213", "213")),
        ("a4<i1<i2<i3<a5", ("213", "213", "123", "123", "132", "132")),
        ("a5<i1<i2<i3<a4", ("231", "231", "321", "321", "312", "312")),
        ("i1<i2<i3<a4<a5", ("123", "123", "213", "213", "231", "231")),
        ("i1<i2<i3<a5<a4", ("132", "132", "312", "312", "321", "321")),
    ],
}
