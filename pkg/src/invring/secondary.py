"""Secondary and irreducible secondary invariants for given primary invariants.

Four search strategies share one per-degree loop:

``basic``
    every Reynolds image of degree d, full Groebner basis recomputed after each
    acceptance, no use of the Molien counts.
``refined``
    all power products of lower-degree irreducibles first, then Reynolds
    images; stops once m_d invariants are found; full recomputation.
``new``
    same candidates as ``refined``, but the basis of <P + S_d> is extended
    by one remainder per acceptance instead of being recomputed.
``improved``
    like ``new`` but the products are restricted to i*s with i irreducible
    and s a secondary of complementary degree, each product considered once.

``irreducible`` runs ``improved`` while keeping only normal forms modulo the
primaries' basis for the reducible secondaries.

Every degree starts again from the basis of <P>: a degree-d candidate is new
iff it is not in <P + S_d>.  Lower-degree secondaries are deliberately
absent from that ideal, otherwise their products could never be chosen.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from .errors import InvalidPrimariesError
from .groebner import (
    TruncatedGroebnerBasis, buchberger, extend_truncated, interreduce, truncated_gb,
)
from .group import DEFAULT_BATCH_SIZE, PrimarySystem, iter_reynolds_images, validate_primaries
from .molien import degree_cap, molien_profile
from .poly import Poly, mul_dicts

ALGORITHMS = ("basic", "refined", "new", "improved", "irreducible")

UNIT = "unit"
POWER_PRODUCT = "power-product"
REYNOLDS_IMAGE = "reynolds-image"


@dataclass
class Stats:
    reductions: int = 0
    full_gb_computations: int = 0
    extensions: int = 0
    candidates_generated: int = 0
    candidates_accepted: int = 0
    products_tried: int = 0
    reynolds_tried: int = 0
    max_basis_size: int = 0
    elapsed: float = 0.0

    def as_dict(self):
        return dict(self.__dict__)


@dataclass(eq=False)
class Secondary:
    """One secondary invariant.

    ``poly`` is the invariant itself, or None when only its normal form was
    kept.  ``factors`` lists the labels of its irreducible factors in
    ascending order.  ``nf`` is the normal form modulo the basis of <P>.
    """

    poly: Poly | None
    degree: int
    factors: tuple
    provenance: str
    source: tuple | None = None
    nf: Poly | None = None

    @property
    def value(self):
        return self.poly if self.poly is not None else self.nf

    @property
    def is_irreducible(self):
        # the basic search labels nothing, so it never claims irreducibility
        return self.provenance == REYNOLDS_IMAGE and len(self.factors) == 1


@dataclass(eq=False)
class CandidateProduct:
    """A product ``factor * cofactor`` with ``factor`` irreducible."""

    factor: Secondary
    cofactor: Secondary
    factors: tuple

    @property
    def degree(self):
        return self.factor.degree + self.cofactor.degree

    @property
    def product(self):
        return self.factor.value * self.cofactor.value


@dataclass
class DegreeRecord:
    degree: int
    target: int
    secondaries: list = field(default_factory=list)

    @property
    def irreducible(self):
        return [s for s in self.secondaries if s.is_irreducible]


@dataclass
class SecondaryResult:
    algorithm: str
    ring: object
    group_order: int
    primaries: tuple
    profile: object
    records: dict = field(default_factory=dict)
    irreducibles: list = field(default_factory=list)
    stats: Stats = field(default_factory=Stats)
    normal_forms: bool = False

    def table(self, d):
        rec = self.records.get(d)
        return rec.secondaries if rec else []

    @property
    def secondaries(self):
        return [s for d in sorted(self.records) for s in self.records[d].secondaries]

    @property
    def counts(self):
        return {d: len(r.secondaries) for d, r in sorted(self.records.items())}

    @property
    def irreducible_counts(self):
        return {d: len(r.irreducible) for d, r in sorted(self.records.items())}

    @property
    def total(self):
        return sum(self.counts.values())

    @property
    def max_degree(self):
        return max((d for d, c in self.counts.items() if c), default=0)

    @property
    def max_irreducible_degree(self):
        return max((s.degree for s in self.irreducibles), default=0)

    @property
    def complete(self):
        return all(len(r.secondaries) == r.target for r in self.records.values()) and (
            self.total == self.profile.total
        )


class InvariantContext:
    """Everything the per-degree searches share for one problem."""

    def __init__(self, primaries, group, *, threads=1, batch_size=DEFAULT_BATCH_SIZE,
                 validate=True, stats=None):
        if isinstance(primaries, PrimarySystem):
            system = primaries
        elif validate:
            system = validate_primaries(primaries, group)
        else:
            system = PrimarySystem(primaries, group)
        self.system = system
        self.primaries = list(system.polys)
        self.ring = self.primaries[0].ring
        self.group = group
        self.degrees = [p.degree() for p in self.primaries]
        self.cap = degree_cap(self.degrees)
        self.profile = molien_profile(group, self.degrees)
        self.threads = threads
        self.batch_size = batch_size
        self.stats = stats or Stats()
        self._gb_p = None
        self._full_gb_p = None

    @property
    def gb_p(self):
        """Reduced basis of <P>, valid up to the degree cap."""
        if self._gb_p is None:
            gb = self.system.gb
            if gb is None or gb.valid_up_to < self.cap:
                gb = truncated_gb(self.primaries, self.cap)
            gb = gb.truncate(self.cap)
            self._gb_p = TruncatedGroebnerBasis(self.ring, interreduce(gb.elements), self.cap)
        return self._gb_p

    @property
    def full_gb_p(self):
        if self._full_gb_p is None:
            self._full_gb_p = buchberger(self.primaries)
            self.stats.full_gb_computations += 1
        return self._full_gb_p

    def target(self, d):
        m = self.profile.m
        return m[d] if d < len(m) else 0

    def nf_p(self, coeffs):
        self.stats.reductions += 1
        return self.gb_p.normal_form(coeffs)


# -- membership engines ----------------------------------------------------


class _Truncated:
    """Basis of <P + S_d> up to degree d, grown one remainder at a time."""

    def __init__(self, ctx, d):
        self.ctx = ctx
        self.gb = ctx.gb_p.truncate(d)
        self.version = 0

    def remainder(self, coeffs):
        self.ctx.stats.reductions += 1
        return self.gb.normal_form(coeffs)

    def accept(self, candidate_poly, rem):
        self.gb = extend_truncated(self.gb, rem, remainder=rem)
        self.version += 1
        st = self.ctx.stats
        st.extensions += 1
        st.max_basis_size = max(st.max_basis_size, len(self.gb))


class _Recomputed:
    """Full Groebner basis of <P + S_d>, recomputed after every acceptance."""

    def __init__(self, ctx, d):
        self.ctx = ctx
        self.base = list(ctx.full_gb_p.elements)
        self.accepted = []
        self.gb = ctx.full_gb_p
        self.version = 0

    def remainder(self, coeffs):
        self.ctx.stats.reductions += 1
        return self.gb.normal_form(coeffs)

    def accept(self, candidate_poly, rem):
        self.accepted.append(candidate_poly)
        self.gb = buchberger(self.base + self.accepted)
        self.version += 1
        st = self.ctx.stats
        st.full_gb_computations += 1
        st.max_basis_size = max(st.max_basis_size, len(self.gb))


# -- candidates --------------------------------------------------------------


class _Cand:
    __slots__ = ("kind", "factors", "source", "raw", "nf", "cp", "input")

    def __init__(self, kind, factors, source=None, raw=None, cp=None):
        self.kind = kind
        self.factors = factors
        self.source = source
        self.raw = raw
        self.cp = cp
        self.nf = None
        self.input = None


def candidate_products(irreducibles, tables, d):
    """Lazily yield each product i*s of degree ``d`` once.

    ``i`` ranges over irreducibles of degree < d (ascending degree, then
    label) and ``s`` over ``tables[d - deg i]`` in stored order.  A product
    whose multiset of irreducible factors was already produced is skipped.
    The first factorisation met is kept, which is the one with the least
    irreducible factor label available.
    """
    seen = set()
    for i in sorted(irreducibles, key=lambda s: (s.degree, s.factors)):
        k = i.degree
        if k >= d or k <= 0:
            continue
        label = i.factors[0]
        for s in tables.get(d - k, ()):
            key = tuple(sorted(s.factors + (label,)))
            if key in seen:
                continue
            seen.add(key)
            yield CandidateProduct(i, s, key)


def power_products(irreducibles, d):
    """All multisets of irreducibles (as label tuples) with degree sum ``d``."""
    irr = sorted(irreducibles, key=lambda s: s.factors[0])
    degs = [s.degree for s in irr]
    labels = [s.factors[0] for s in irr]

    def rec(start, rest, acc):
        if rest == 0:
            if len(acc) > 1:
                yield tuple(acc)
            return
        for j in range(start, len(irr)):
            if 0 < degs[j] <= rest:
                acc.append(labels[j])
                yield from rec(j, rest - degs[j], acc)
                acc.pop()

    yield from rec(0, d, [])


def _chunks(it, size):
    it = iter(it)
    while True:
        batch = list(islice(it, size))
        if not batch:
            return
        yield batch


# -- per-degree search -------------------------------------------------------


def _search_degree(ctx, d, result, *, products, engine, stop_at_target, normal_forms,
                   keep_raw=True, pool=None):
    """Find S_d; returns the DegreeRecord and the final membership engine.

    ``products`` is None, "all" (every power product of irreducibles) or
    "restricted" (i*s products).  With ``normal_forms`` products are formed
    from the stored normal forms modulo <P>, and each accepted invariant gets
    its own normal form stored.
    """
    st = ctx.stats
    target = ctx.target(d)
    record = DegreeRecord(d, target)
    member = _Truncated(ctx, d) if engine == "truncated" else _Recomputed(ctx, d)
    if stop_at_target and target == 0:
        return record, member
    ring = ctx.ring
    irr_by_label = {s.factors[0]: s for s in result.irreducibles}
    new_irreducibles = []
    prod_cache = {}

    def power_product_raw(key):
        if key in prod_cache:
            return prod_cache[key]
        if len(key) == 1:
            val = irr_by_label[key[0]].poly.coeffs
        else:
            val = mul_dicts(power_product_raw(key[:-1]), irr_by_label[key[-1]].poly.coeffs)
        prod_cache[key] = val
        return val

    def prepare(c):
        if c.kind == "restricted":
            cp = c.cp
            if normal_forms:
                # Normal forms modulo a basis valid in degree d are unique, so
                # rem(i*s; G_d) == rem(nf(nf(i)*nf(s)); G_d).  Reducing modulo
                # <P> first gives the stored normal form and a shorter input.
                c.nf = ctx.nf_p(mul_dicts(cp.factor.nf.coeffs, cp.cofactor.nf.coeffs))
                c.input = c.nf.coeffs
            else:
                c.raw = Poly(ring, mul_dicts(cp.factor.poly.coeffs, cp.cofactor.poly.coeffs))
                c.input = c.raw.coeffs
        elif c.kind == "all":
            c.raw = Poly(ring, power_product_raw(c.factors))
            c.input = c.raw.coeffs
        else:
            c.input = c.raw.coeffs
        return c

    def stream():
        if products == "restricted":
            for cp in candidate_products(result.irreducibles, _tables(result), d):
                yield _Cand("restricted", cp.factors, cp=cp)
        elif products == "all":
            for key in power_products(result.irreducibles, d):
                yield _Cand("all", key)
        label = len(result.irreducibles)
        for source, b in iter_reynolds_images(d, ctx.group, ring, ctx.batch_size):
            yield _Cand("reynolds", (label,), source=source, raw=b)

    def accept(c, rem):
        member.accept(c.raw if c.raw is not None else Poly(ring, c.input), rem)
        st.candidates_accepted += 1
        if normal_forms and c.nf is None:
            c.nf = ctx.nf_p(c.input)
        if c.kind == "reynolds":
            sec = Secondary(c.raw, d, c.factors, REYNOLDS_IMAGE, c.source, c.nf)
            new_irreducibles.append(sec)
        else:
            raw = c.raw
            if raw is None and keep_raw:
                raw = c.cp.product
            sec = Secondary(raw, d, c.factors, POWER_PRODUCT, None, c.nf)
        record.secondaries.append(sec)

    def batches():
        if pool is None:
            # sequential: candidates are produced one at a time
            for c in stream():
                prepare(c)
                yield [(c, None)]
            return
        for batch in _chunks(stream(), ctx.batch_size):
            gb = member.gb
            version = member.version

            def work(c):
                prepare(c)
                return gb.normal_form(c.input)

            rems = list(pool.map(work, batch))
            st.reductions += len(batch)
            yield [(c, (version, r)) for c, r in zip(batch, rems)]

    for batch in batches():
        for c, pre in batch:
            st.candidates_generated += 1
            if c.kind == "reynolds":
                st.reynolds_tried += 1
            else:
                st.products_tried += 1
            if pre is None:
                rem = member.remainder(c.input)
            else:
                version, rem = pre
                # a remainder against an older basis only needs re-reducing
                if rem.coeffs and member.version != version:
                    rem = member.remainder(rem.coeffs)
            if rem.coeffs:
                if c.kind == "reynolds":
                    c.factors = (len(result.irreducibles) + len(new_irreducibles),)
                accept(c, rem)
                if stop_at_target and len(record.secondaries) == target:
                    break
        else:
            continue
        break
    result.irreducibles.extend(new_irreducibles)
    return record, member


def _tables(result):
    return {d: r.secondaries for d, r in result.records.items()}


def _new_result(ctx, algorithm, normal_forms=False):
    one = ctx.ring.one()
    res = SecondaryResult(
        algorithm, ctx.ring, ctx.group.order, tuple(ctx.primaries), ctx.profile,
        stats=ctx.stats, normal_forms=normal_forms,
    )
    res.records[0] = DegreeRecord(0, 1, [Secondary(one, 0, (), UNIT, None, one)])
    return res


def _check_degree(record, strict):
    if strict and len(record.secondaries) != record.target:
        raise InvalidPrimariesError(
            f"degree {record.degree}: found {len(record.secondaries)} secondary invariants, "
            f"Molien series predicts {record.target}"
        )


# -- per-degree entry points -------------------------------------------------


def basic_algorithm(ctx, d, result):
    """S_d from Reynolds images only, recomputing the full basis after each hit.

    Every image is tried; the Molien count is only checked afterwards.  No
    irreducibility is tracked, so factor labels are left empty.
    """
    record, _ = _search_degree(ctx, d, result, products=None, engine="recompute",
                               stop_at_target=False, normal_forms=False)
    result.records[d] = record
    result.irreducibles.clear()
    for s in record.secondaries:
        s.factors = ()
    return record.secondaries


def refined_algorithm(ctx, d, result):
    """(S_d, IS_d): power products first, then Reynolds images; full recomputation."""
    record, _ = _search_degree(ctx, d, result, products="all", engine="recompute",
                               stop_at_target=True, normal_forms=False)
    result.records[d] = record
    return record.secondaries, record.irreducible


def new_algorithm(ctx, d, result):
    """(S_d, IS_d, basis): like refined, with one basis extension per acceptance."""
    record, member = _search_degree(ctx, d, result, products="all", engine="truncated",
                                    stop_at_target=True, normal_forms=False)
    result.records[d] = record
    return record.secondaries, record.irreducible, member.gb


def improved_degree(ctx, d, result, normal_forms=False, pool=None):
    """One degree of the improved algorithm; returns (S_d, IS_d, basis)."""
    record, member = _search_degree(
        ctx, d, result, products="restricted", engine="truncated", stop_at_target=True,
        normal_forms=True, keep_raw=not normal_forms, pool=pool,
    )
    result.records[d] = record
    return record.secondaries, record.irreducible, member.gb


# -- drivers -----------------------------------------------------------------


def compute_secondaries(primaries, group, algorithm="improved", *, threads=1,
                        batch_size=DEFAULT_BATCH_SIZE, validate=True, progress=None,
                        max_degree=None):
    """Run one algorithm over all degrees and return a :class:`SecondaryResult`.

    ``max_degree`` stops the degree loop early; the result is then partial
    (``complete`` is False when secondaries remain above that degree).
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    t0 = time.perf_counter()
    ctx = InvariantContext(primaries, group, threads=threads, batch_size=batch_size,
                           validate=validate)
    normal_forms = algorithm == "irreducible"
    result = _new_result(ctx, algorithm, normal_forms)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        full = ctx.profile.max_degree if algorithm != "basic" else ctx.cap
        last = full if max_degree is None else min(full, max_degree)
        for d in range(1, last + 1):
            if algorithm == "basic":
                basic_algorithm(ctx, d, result)
            elif algorithm == "refined":
                refined_algorithm(ctx, d, result)
            elif algorithm == "new":
                new_algorithm(ctx, d, result)
            else:
                improved_degree(ctx, d, result, normal_forms=normal_forms, pool=pool)
            _check_degree(result.records[d], strict=True)
            if progress is not None:
                progress(d, result)
    finally:
        if pool is not None:
            pool.shutdown()
    ctx.stats.elapsed = time.perf_counter() - t0
    if last == full and result.total != ctx.profile.total:
        raise InvalidPrimariesError(
            f"found {result.total} secondary invariants, expected {ctx.profile.total}"
        )
    return result


def improved_new_algorithm(primaries, group, **kwargs):
    return compute_secondaries(primaries, group, "improved", **kwargs)


def irreducible_only(primaries, group, **kwargs):
    return compute_secondaries(primaries, group, "irreducible", **kwargs)
