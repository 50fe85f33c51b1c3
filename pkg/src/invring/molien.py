"""Molien series and per-degree secondary-invariant counts.

The Molien series is (1/|G|) * sum_g 1/det(I - t*M_g), expanded as a truncated
power series with exact rationals.  Multiplying it by prod_i (1 - t^{d_i})
gives a polynomial whose coefficients count the secondary invariants in each
degree.
"""

from collections import Counter
from dataclasses import dataclass
from math import prod

from gmpy2 import mpq

from .errors import InvalidPrimariesError, InvringError
from .group import monomial_form


class MolienConsistencyError(InvringError):
    """A series coefficient came out non-integral (arithmetic or closure bug)."""


@dataclass(frozen=True)
class MolienProfile:
    series_coeffs: tuple
    m: tuple
    total: int

    @property
    def max_degree(self):
        nz = [d for d, c in enumerate(self.m) if c]
        return nz[-1] if nz else 0


def det_one_minus_t(matrix):
    """Coefficients ``[1, c1, ..., cn]`` of det(I - t*M) as a polynomial in t."""
    form = monomial_form(matrix)
    n = len(matrix)
    if form is not None:
        # Each cycle of length L with scale product s contributes (1 - s t^L).
        targets, scales = form
        poly = [mpq(1)]
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            j, length, s = start, 0, mpq(1)
            while not seen[j]:
                seen[j] = True
                s *= scales[j]
                j = targets[j]
                length += 1
            factor = [mpq(0)] * (length + 1)
            factor[0] = mpq(1)
            factor[length] = -s
            poly = _poly_mul(poly, factor)
        return poly
    return _faddeev_leverrier(matrix)


def _faddeev_leverrier(a):
    """det(I - t*A) from the characteristic polynomial of A."""
    n = len(a)
    coeffs = [mpq(1)]
    mk = [[mpq(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # M_k = A @ M_{k-1} + c_{k-1} I
        mk = [
            [sum((a[i][l] * mk[l][j] for l in range(n)), mpq(0)) + (c_prev if i == j else 0)
             for j in range(n)]
            for i in range(n)
        ]
        tr = sum((sum((a[i][l] * mk[l][i] for l in range(n)), mpq(0)) for i in range(n)), mpq(0))
        coeffs.append(-tr / k)
    return coeffs


def _poly_mul(a, b):
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _series_inverse(p, D):
    """Power series 1/p up to t^D, for p with p[0] == 1."""
    inv = [mpq(0)] * (D + 1)
    inv[0] = 1 / p[0]
    for k in range(1, D + 1):
        acc = mpq(0)
        for j in range(1, min(k, len(p) - 1) + 1):
            if p[j]:
                acc += p[j] * inv[k - j]
        inv[k] = -acc * inv[0]
    return inv


def molien_series(G, D):
    """Coefficients a_0..a_D: dimensions of the invariant subspaces of each degree."""
    if D < 0:
        raise ValueError("D must be non-negative")
    classes = Counter(tuple(det_one_minus_t(g)) for g in G.elements)
    total = [mpq(0)] * (D + 1)
    for poly, count in classes.items():
        for k, c in enumerate(_series_inverse(list(poly), D)):
            total[k] += count * c
    order = G.order
    out = []
    for k, c in enumerate(total):
        v = c / order
        if v.denominator != 1:
            raise MolienConsistencyError(f"Molien coefficient {k} is not an integer: {v}")
        out.append(int(v))
    return tuple(out)


def degree_cap(primary_degrees):
    """Largest degree a secondary invariant can have: sum(d_i - 1)."""
    return sum(d - 1 for d in primary_degrees)


def secondary_counts(series, primary_degrees, D=None, group_order=None):
    """Counts m_0..m_D from the Molien series times prod(1 - t^{d_i}).

    ``series`` must reach degree D.  Raises when a count is negative, when the
    counts do not sum to prod(d_i)/|G| (if ``group_order`` is given), or when
    counts beyond the degree cap are nonzero.
    """
    degs = list(primary_degrees)
    if any(d < 1 for d in degs):
        raise InvalidPrimariesError("primary degrees must be positive")
    cap = degree_cap(degs)
    if D is None:
        D = cap
    if len(series) < D + 1:
        raise ValueError(f"series has {len(series)} coefficients, need {D + 1}")
    num = [0] * (D + 1)
    for k in range(D + 1):
        num[k] = series[k]
    for d in degs:
        for k in range(D, d - 1, -1):
            num[k] -= num[k - d]
    for k, c in enumerate(num):
        if c < 0:
            raise InvalidPrimariesError(
                f"negative secondary count m_{k} = {c}: primaries are not a system of parameters"
            )
        if k > cap and c:
            raise InvalidPrimariesError(f"nonzero count m_{k} beyond degree cap {cap}")
    total = sum(num)
    if group_order is not None:
        expected = prod(degs)
        if expected % group_order:
            raise InvalidPrimariesError(
                f"prod(deg p_i) = {expected} is not divisible by |G| = {group_order}"
            )
        if total != expected // group_order and D >= cap:
            raise InvalidPrimariesError(
                f"secondary counts sum to {total}, expected {expected // group_order}"
            )
    return tuple(num), total


def molien_profile(G, primary_degrees, D=None):
    """Series and counts up to ``max(D, degree cap)``."""
    cap = degree_cap(primary_degrees)
    D = cap if D is None else max(D, cap)
    series = molien_series(G, D)
    m, total = secondary_counts(series, primary_degrees, D, G.order)
    return MolienProfile(series, m, total)
