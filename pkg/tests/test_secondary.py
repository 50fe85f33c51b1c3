import pytest

from helpers import make_rng, random_homogeneous
from invring.benchmarks import elementary_symmetric, get_instance
from invring.group import MatrixGroup, from_columns, is_invariant, iter_reynolds_images, reynolds
from invring.groebner import buchberger, extend_truncated, reduce
from invring.poly import Ring
from invring.secondary import (
    POWER_PRODUCT,
    REYNOLDS_IMAGE,
    InvariantContext,
    Secondary,
    candidate_products,
    compute_secondaries,
    irreducible_only,
    power_products,
)


def _run(k, algorithm="improved", **kw):
    inst = get_instance(k)
    return compute_secondaries(inst.primary_polys(), inst.group(), algorithm, **kw)


def _sec(label_factors, degree, irreducible=False):
    return Secondary(None, degree, tuple(label_factors), REYNOLDS_IMAGE if irreducible else POWER_PRODUCT)


def test_candidate_products_example():
    a = _sec([0], 1, True)
    b = _sec([1], 2, True)
    tables = {
        1: [a],
        2: [_sec([0, 0], 2), b],
        3: [_sec([0, 0, 0], 3), _sec([0, 1], 3)],
    }
    got = [c.factors for c in candidate_products([a, b], tables, 4)]
    assert got == [(0, 0, 0, 0), (0, 0, 1), (1, 1)]
    # brute force: every factorisation i*s, one per product
    brute = {tuple(sorted(s.factors + i.factors)) for i in (a, b) for s in tables.get(4 - i.degree, ())}
    assert set(got) == brute
    assert list(candidate_products([], tables, 4)) == []
    assert [c.factors for c in candidate_products([a], {1: [a]}, 2)] == [(0, 0)]


def test_candidate_products_is_lazy():
    a = _sec([0], 1, True)
    stream = candidate_products([a], {1: [a]}, 2)
    assert next(stream).factors == (0, 0)
    with pytest.raises(StopIteration):
        next(stream)


def test_power_products():
    a, b = _sec([0], 1, True), _sec([1], 2, True)
    assert sorted(power_products([a, b], 4)) == [(0, 0, 0, 0), (0, 0, 1), (1, 1)]
    assert list(power_products([a], 1)) == []


def test_trivial_group():
    ring = Ring(3)
    G = MatrixGroup([], 3)
    for algo in ("basic", "refined", "new", "improved", "irreducible"):
        res = compute_secondaries(ring.gens(), G, algo)
        assert res.total == 1 and res.counts == {0: 1}
        assert res.irreducibles == []


def test_swap_group():
    ring = Ring(["x", "y"])
    G = MatrixGroup([from_columns([2, 1])])
    res = compute_secondaries([ring.parse("x+y"), ring.parse("x*y")], G)
    assert res.total == 1
    res = compute_secondaries([ring.parse("x+y"), ring.parse("x^2+y^2")], G, "basic")
    assert res.total == 1


def test_sign_group_needs_secondary():
    # Z2 acting by -1 on both variables, primaries x^2, y^2: secondaries 1 and xy
    ring = Ring(["x", "y"])
    G = MatrixGroup([[[-1, 0], [0, -1]]])
    for algo in ("basic", "refined", "new", "improved", "irreducible"):
        res = compute_secondaries([ring.parse("x^2"), ring.parse("y^2")], G, algo)
        assert res.counts == {0: 1, 1: 0, 2: 1}
    assert res.irreducibles[0].nf == ring.parse("x*y")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cross_variant_counts(k):
    counts = {a: _run(k, a).counts for a in ("basic", "refined", "new", "improved", "irreducible")}
    base = counts.pop("basic")
    for a, c in counts.items():
        assert {d: v for d, v in c.items() if v} == {d: v for d, v in base.items() if v}, a


def test_refined_new_improved_irreducible_labels_agree():
    res = {a: _run(3, a) for a in ("refined", "new", "improved")}
    assert res["refined"].irreducible_counts == res["new"].irreducible_counts == res["improved"].irreducible_counts


@pytest.mark.parametrize("k", [1, 2])
def test_secondaries_are_invariant_and_homogeneous(k):
    inst = get_instance(k)
    res = _run(k)
    G = inst.group()
    for s in res.secondaries:
        assert s.poly.is_homogeneous() == s.degree
        assert is_invariant(s.poly, G)
        if s.provenance == POWER_PRODUCT:
            assert len(s.factors) >= 2


@pytest.mark.parametrize("k", [1, 2])
def test_independence(k):
    inst = get_instance(k)
    prims = inst.primary_polys()
    res = _run(k)
    for d, rec in res.records.items():
        if d == 0:
            continue
        S = [s.poly for s in rec.secondaries]
        for i, s in enumerate(S):
            others = S[:i] + S[i + 1:]
            gb = buchberger(prims + others)
            assert reduce(s, gb).coeffs, (d, i)


def test_generation_soundness_example_2():
    inst = get_instance(2)
    prims, G, ring = inst.primary_polys(), inst.group(), inst.ring()
    res = _run(2)
    S = [s.poly for s in res.secondaries if s.degree > 0]
    gb = buchberger(prims + S)
    for d in range(1, res.max_degree + 1):
        for _, b in iter_reynolds_images(d, G, ring, dedup=False):
            assert reduce(b, gb).coeffs == {}


@pytest.mark.parametrize("k", [1, 2])
def test_final_truncated_basis_matches_full(k):
    inst = get_instance(k)
    prims, ring = inst.primary_polys(), inst.ring()
    res = _run(k)
    ctx = InvariantContext(prims, inst.group())
    for d, rec in res.records.items():
        if d == 0 or not rec.secondaries:
            continue
        gb = ctx.gb_p.truncate(d)
        for s in rec.secondaries:
            gb = extend_truncated(gb, s.poly)
        full = buchberger(prims + [s.poly for s in rec.secondaries])
        for m in ring.monomials_of_degree(d):
            assert gb.normal_form({m: 1}) == full.normal_form({m: 1})


def test_irreducible_only_keeps_normal_forms():
    inst = get_instance(2)
    res = irreducible_only(inst.primary_polys(), inst.group())
    full = _run(2)
    assert [str(s.poly) for s in res.irreducibles] == [str(s.poly) for s in full.irreducibles]
    reducible = [s for s in res.secondaries if s.degree > 0 and not s.is_irreducible]
    assert reducible and all(s.poly is None and s.nf is not None for s in reducible)
    ctx = InvariantContext(inst.primary_polys(), inst.group())
    for s, t in zip(res.secondaries, full.secondaries):
        assert s.factors == t.factors
        assert s.nf == ctx.gb_p.normal_form(t.poly)


def test_normal_form_multiplicativity():
    inst = get_instance(3)
    ctx = InvariantContext(inst.primary_polys(), inst.group())
    ring, G = inst.ring(), inst.group()
    rng = make_rng(9)
    nf = ctx.gb_p.normal_form
    for _ in range(15):
        p = reynolds(random_homogeneous(ring, rng.randint(1, 4), rng), G)
        q = reynolds(random_homogeneous(ring, rng.randint(1, 4), rng), G)
        if p.degree() + q.degree() > ctx.cap:
            continue
        assert nf(nf(p) * nf(q)) == nf(p * q)


def test_threads_match_sequential():
    seq = _run(3)
    par = _run(3, threads=3, batch_size=7)
    assert [str(s.poly) for s in seq.secondaries] == [str(s.poly) for s in par.secondaries]
    assert [s.factors for s in seq.secondaries] == [s.factors for s in par.secondaries]


def test_partial_run():
    res = _run(2, max_degree=4)
    assert max(res.records) == 4 and not res.complete
    assert _run(2).complete


def test_stats_are_counted():
    res = _run(2)
    st = res.stats
    assert st.candidates_accepted == res.total - 1
    assert st.extensions == st.candidates_accepted
    assert st.full_gb_computations == 0
    assert st.candidates_generated == st.products_tried + st.reynolds_tried
    assert _run(2, "refined").stats.full_gb_computations > 0


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        _run(2, "magic")


@pytest.mark.parametrize("n", [2, 3])
def test_symmetric_group_has_only_unit(n):
    ring = Ring(n)
    gens = [from_columns(list(range(2, n + 1)) + [1]), from_columns([2, 1] + list(range(3, n + 1)))]
    res = compute_secondaries([ring.parse(e) for e in elementary_symmetric(n)], MatrixGroup(gens), "improved")
    assert res.total == 1


def test_cyclic_group_counts():
    # C3 on 3 variables: 6/3 = 2 secondaries, degrees 0 and 3
    ring = Ring(3)
    G = MatrixGroup([from_columns([2, 3, 1])])
    res = compute_secondaries([ring.parse(e) for e in elementary_symmetric(3)], G)
    assert res.counts == {0: 1, 1: 0, 2: 0, 3: 1}
    assert res.irreducibles[0].degree == 3
