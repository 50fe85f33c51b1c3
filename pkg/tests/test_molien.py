from math import comb, prod

import pytest

from helpers import invariant_dimension, make_rng, random_permutation_group
from invring.benchmarks import INSTANCES, get_instance
from invring.errors import InvalidPrimariesError
from invring.group import MatrixGroup, from_columns
from invring.molien import (
    degree_cap,
    det_one_minus_t,
    molien_profile,
    molien_series,
    secondary_counts,
)
from invring.poly import Ring


def test_trivial_group():
    for n in (1, 3, 4):
        G = MatrixGroup([], n)
        assert molien_series(G, 6) == tuple(comb(n + d - 1, d) for d in range(7))
        m, total = secondary_counts(molien_series(G, n), [1] * n, group_order=1)
        assert total == 1 and m[0] == 1 and not any(m[1:])


def test_swap_and_sign():
    swap = MatrixGroup([from_columns([2, 1])])
    assert molien_series(swap, 7) == (1, 1, 2, 2, 3, 3, 4, 4)
    sign = MatrixGroup([[[-1]]])
    assert molien_series(sign, 6) == (1, 0, 1, 0, 1, 0, 1)


def test_det_paths_agree():
    # a monomial matrix with signs, evaluated by the cycle path and by Faddeev-LeVerrier
    from invring.molien import _faddeev_leverrier

    m = ((0, 0, -1), (1, 0, 0), (0, 1, 0))
    from invring.group import as_matrix

    m = as_matrix(m)
    assert det_one_minus_t(m) == _faddeev_leverrier(m)


def test_published_totals():
    for k, total in ((1, 32), (2, 12), (3, 18), (4, 120), (5, 64), (6, 360)):
        inst = get_instance(k)
        degs = [p.degree() for p in inst.primary_polys()]
        prof = molien_profile(inst.group(), degs)
        assert prof.total == total == prod(degs) // inst.group().order
        assert prof.series_coeffs[0] == 1 and prof.m[0] == 1
        assert all(c >= 0 for c in prof.m)
        assert prof.max_degree <= degree_cap(degs)


def test_counts_reject_bad_degrees():
    swap = MatrixGroup([from_columns([2, 1])])
    series = molien_series(swap, 4)
    # degrees (1, 1) are impossible for S2 (there is only one linear invariant)
    with pytest.raises(InvalidPrimariesError):
        secondary_counts(series, [1, 1], group_order=2)
    m, total = secondary_counts(series, [1, 2], group_order=2)
    assert m[:2] == (1, 0) and total == 1


def test_series_matches_oracle_small():
    for k in (2, 3, 4, 6):
        inst = get_instance(k)
        G, ring = inst.group(), inst.ring()
        assert molien_series(G, 5) == tuple(invariant_dimension(G, ring, d) for d in range(6))


def test_series_matches_oracle_random_groups():
    rng = make_rng(4)
    for _ in range(8):
        n = rng.randint(2, 4)
        G = random_permutation_group(n, rng, max_order=24)
        ring = Ring(n)
        assert molien_series(G, 4) == tuple(invariant_dimension(G, ring, d) for d in range(5))


def test_non_monomial_group_series():
    inst = INSTANCES[9]
    s = molien_series(inst.group(), 4)
    assert s[:2] == (1, 1)
    assert s == tuple(invariant_dimension(inst.group(), inst.ring(), d) for d in range(5))
