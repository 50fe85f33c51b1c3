"""Built-in benchmark instances.

Matrices are given as column lists ``(e_a e_b ...)`` (1-based), primaries as
polynomial strings over ``x1..xn``.  ``expected`` holds the published counts:
(number of secondaries, their maximal degree, number of irreducible
secondaries, their maximal degree).
"""

from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .group import MatrixGroup, as_matrix, from_columns
from .poly import Ring


@dataclass(frozen=True)
class Instance:
    number: int
    title: str
    n: int
    generators: tuple
    primaries: tuple | None
    expected: tuple
    stretch: bool = False
    note: str = ""
    extra: dict = field(default_factory=dict)

    def ring(self, order="degrevlex"):
        return Ring(self.n, order)

    def group(self):
        return MatrixGroup(self.generators, self.n)

    def primary_polys(self, ring=None):
        if self.primaries is None:
            raise LookupError(f"example {self.number}: primary invariants are not published")
        ring = ring or self.ring()
        return [ring.parse(s) for s in self.primaries]


def elementary_symmetric(n):
    names = [f"x{i + 1}" for i in range(n)]
    return tuple("+".join("*".join(c) for c in combinations(names, k)) for k in range(1, n + 1))


def _cols(*images):
    return from_columns(images)


_T = mpq(1, 3)
_TT = mpq(2, 3)

_EX9_M1 = as_matrix([
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, _T, _T, _T, 0, 0, 0, 0, 0],
    [0, 0, _T, -_TT, -_TT, 0, 0, 0, 0, 0],
    [0, 0, -_TT, _T, -_TT, 0, 0, 0, 0, 0],
    [0, 0, -_TT, -_TT, _T, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
])

_EX9_M2 = as_matrix([
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, _T, -_TT, -_TT, 0, 0, 0, 0, 0],
    [0, 0, -_TT, _T, -_TT, 0, 0, 0, 0, 0],
    [0, 0, -_TT, -_TT, _T, 0, 0, 0, 0, 0],
    [0, 1, _T, _T, _T, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, -1, 1, 1, 0],
    [0, 0, 0, 0, 0, -1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, -1, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 1, 0, 0],
])


INSTANCES = {
    1: Instance(
        1, "13-dimensional representation of S2", 13,
        (_cols(2, 1, 13, 12, 11, 8, 10, 6, 9, 7, 5, 4, 3),),
        ("x9", "x7+x10", "x6+x8", "x5+x11", "x4+x12", "x3+x13", "x1+x2",
         "x3*x13", "x4*x12", "x5*x11", "x7*x10", "x6*x8", "x1*x2"),
        (32, 6, 15, 2),
    ),
    2: Instance(
        2, "6-dimensional representation of S4", 6,
        (_cols(1, 4, 5, 2, 3, 6), _cols(4, 1, 5, 2, 6, 3)),
        ("x3+x5+x6", "x1+x2+x4", "x3*x5+x3*x6+x5*x6", "x3*x4+x2*x5+x1*x6", "x1*x2*x4",
         "x1^3*x2^3+x1^3*x4^3+x2^3*x4^3+x3^2*x5^2*x6^2"),
        (12, 9, 4, 3),
    ),
    3: Instance(
        3, "6-dimensional representation of A4", 6,
        (_cols(4, 1, 5, 2, 6, 3), _cols(2, 3, 1, 6, 4, 5)),
        ("x1+x2+x3+x4+x5+x6",
         "x3*x4+x2*x5+x1*x6",
         "x1*x2+x1*x3+x2*x3+x1*x4+x2*x4+x1*x5+x3*x5+x4*x5+x2*x6+x3*x6+x4*x6+x5*x6",
         "x3^2*x4+x3*x4^2+x2^2*x5+x2*x5^2+x1^2*x6+x1*x6^2",
         "x1*x2*x4+x1*x3*x5+x2*x3*x6+x4*x5*x6",
         "x1^2*x2^4+x1^4*x3^2+x2^2*x3^4+x1^4*x4^2+x2^2*x4^4+x3^4*x5^2+x4^4*x5^2"
         "+x1^2*x5^4+x2^4*x6^2+x5^4*x6^2+x3^2*x6^4+x4^2*x6^4"),
        (18, 11, 8, 5),
    ),
    4: Instance(
        4, "6-dimensional representation of D6", 6,
        (_cols(6, 5, 4, 3, 2, 1), _cols(3, 1, 2, 6, 4, 5)),
        elementary_symmetric(6),
        (120, 14, 10, 4),
    ),
    5: Instance(
        5, "8-dimensional representation of D8", 8,
        (_cols(8, 7, 6, 5, 4, 3, 2, 1), _cols(4, 1, 2, 3, 8, 5, 6, 7)),
        ("x1+x2+x3+x4+x5+x6+x7+x8",
         "x4*x5+x1*x6+x2*x7+x3*x8", "x3*x5+x4*x6+x1*x7+x2*x8",
         "x2*x5+x3*x6+x4*x7+x1*x8", "x1*x5+x2*x6+x3*x7+x4*x8",
         "x1*x3+x2*x4+x5*x7+x6*x8", "x1*x2*x3*x4+x5*x6*x7*x8",
         "x1*x2^3+x2*x3^3+x1^3*x4+x3*x4^3+x5^3*x6+x6^3*x7+x7^3*x8+x5*x8^3"),
        (64, 11, 24, 5),
    ),
    6: Instance(
        6, "7-dimensional representation of D14", 7,
        (_cols(2, 3, 4, 5, 6, 7, 1), _cols(1, 7, 6, 5, 4, 3, 2)),
        elementary_symmetric(7),
        (360, 18, 19, 7),
    ),
    7: Instance(
        7, "15-dimensional representation of S3", 15,
        (_cols(2, 1, 3, 4, 7, 14, 5, 8, 11, 13, 9, 15, 10, 6, 12),
         _cols(1, 3, 2, 4, 5, 9, 8, 7, 6, 13, 12, 11, 10, 15, 14)),
        ("x1+x2+x3", "x1*x2+x1*x3+x2*x3", "x1*x2*x3",
         "x10+x13", "x10*x13", "x6+x9+x11+x12+x14+x15",
         "x11*x12+x6*x14+x9*x15", "x9*x11+x6*x12+x14*x15",
         "x6*x11+x9*x12+x9*x14+x12*x14+x6*x15+x11*x15",
         "x6*x9*x14+x6*x11*x14+x11*x12*x14+x6*x9*x15+x9*x12*x15+x11*x12*x15",
         "x6^6+x9^6+x11^6+x12^6+x14^6+x15^6", "x4", "x5+x7+x8",
         "x5*x7+x5*x8+x7*x8", "x5*x7*x8"),
        (1728, 17, 76, 4),
        stretch=True,
        note="stretch: may exceed desk-scale resources",
    ),
    8: Instance(
        8, "18-dimensional representation of S3", 18,
        (_cols(2, 1, 3, 4, 12, 10, 7, 11, 14, 6, 8, 5, 15, 9, 13, 17, 16, 18),
         _cols(1, 3, 2, 14, 8, 7, 6, 5, 9, 10, 15, 13, 12, 4, 11, 16, 18, 17)),
        ("x1+x2+x3", "x1*x2+x1*x3+x2*x3", "x1*x2*x3",
         "x4+x9+x14", "x4*x9+x4*x14+x9*x14", "x4*x9*x14",
         "x16+x17+x18", "x16*x17+x16*x18+x17*x18", "x16*x17*x18",
         "x6+x7+x10", "x6*x7+x6*x10+x7*x10", "x6*x7*x10",
         "x5+x8+x11+x12+x13+x15",
         "x5*x12+x8*x13+x11*x15", "x8*x11+x12*x13+x5*x15",
         "x5*x11+x8*x12+x5*x13+x11*x13+x8*x15+x12*x15",
         "x5*x8*x12+x5*x11*x12+x5*x8*x13+x11*x12*x15+x8*x13*x15+x11*x13*x15",
         "x5^6+x8^6+x11^6+x12^6+x13^6+x15^6"),
        (31104, 22, 137, 4),
        stretch=True,
        note="stretch: may exceed desk-scale resources",
    ),
    9: Instance(
        9, "10-dimensional representation of S5", 10,
        (_EX9_M1, _EX9_M2),
        None,
        (720, 22, 46, 9),
        note="primary invariants are not published for this example",
    ),
}


def get_instance(number):
    try:
        return INSTANCES[number]
    except KeyError:
        raise LookupError(f"no built-in example {number}; choose 1-9") from None
