"""Division, S-polynomials, Buchberger, and degree-truncated homogeneous bases.

Reduction is a full normal form: the largest reducible monomial is always
treated first, and the divisor is the first basis element (insertion order)
whose leading monomial divides it.
"""

import heapq
import math

from .errors import AlreadyMemberError, DegreeError, DimensionError, ZeroPolynomialError
from .poly import Poly, ZERO_DEGREE

__all__ = [
    "TruncatedGroebnerBasis",
    "s_polynomial",
    "reduce",
    "buchberger",
    "truncated_gb",
    "extend_truncated",
    "member_up_to_degree",
    "interreduce",
    "is_truncated_gb",
]


class _Reducer:
    """Leading monomials, scaled tails and a divisor cache for one basis.

    ``cache`` maps a packed monomial to the index of its first divisor, or to
    ``~k`` when none of the first ``k`` elements divides it.  Appending keeps
    both kinds of entry valid, so :meth:`extended` hands the cache over to the
    child instead of copying it.
    """

    __slots__ = ("ring", "lms", "tails", "cache")

    def __init__(self, ring, lms, tails, cache=None):
        self.ring = ring
        self.lms = lms
        self.tails = tails
        self.cache = {} if cache is None else cache

    @classmethod
    def from_polys(cls, ring, polys):
        lms, tails = [], []
        for g in polys:
            lm, tail = _split(g)
            lms.append(lm)
            tails.append(tail)
        return cls(ring, lms, tails)

    def extended(self, g):
        lm, tail = _split(g)
        child = _Reducer(self.ring, self.lms + [lm], self.tails + [tail], self.cache)
        self.cache = {}
        return child

    def normal_form(self, coeffs):
        """Full remainder of a packed-monomial dict; returns a new dict."""
        ring = self.ring
        x = ring.rank_xor
        g = ring.guard
        lms = self.lms
        tails = self.tails
        cache = self.cache
        k = len(lms)
        terms = dict(coeffs)
        heap = [-(m ^ x) for m in terms]
        heapq.heapify(heap)
        push = heapq.heappush
        pop = heapq.heappop
        get = terms.get
        out = {}
        while heap:
            m = (-pop(heap)) ^ x
            c = terms.pop(m, None)
            if c is None:
                continue
            j = cache.get(m)
            if j is None or j < 0:
                start = 0 if j is None else ~j
                j = -1
                if start < k:
                    mg = m | g
                    for i in range(start, k):
                        if (mg - lms[i]) & g == g:
                            j = i
                            break
                cache[m] = j if j >= 0 else ~k
                if j < 0:
                    out[m] = c
                    continue
            shift = m - lms[j]
            for mt, ct in tails[j]:
                mm = mt + shift
                v = get(mm)
                if v is None:
                    terms[mm] = -c * ct
                    push(heap, -(mm ^ x))
                else:
                    v -= c * ct
                    if v:
                        terms[mm] = v
                    else:
                        del terms[mm]
        return out


def _split(g):
    """Leading monomial and tail scaled by 1/lc."""
    coeffs = g.coeffs
    if not coeffs:
        raise ZeroPolynomialError("zero polynomial in a basis")
    lm = g._lm()
    lc = coeffs[lm]
    if lc == 1:
        tail = [(m, c) for m, c in coeffs.items() if m != lm]
    else:
        inv = 1 / lc
        tail = [(m, c * inv) for m, c in coeffs.items() if m != lm]
    return lm, tail


class TruncatedGroebnerBasis:
    """Ordered homogeneous basis that decides ideal membership up to a degree.

    For every pair whose S-polynomial has degree at most ``valid_up_to`` the
    S-polynomial reduces to zero.  ``valid_up_to`` is ``math.inf`` for a full
    Groebner basis.  ``pending`` holds ideal generators of degree above the
    bound that have not been processed yet.
    """

    __slots__ = ("ring", "elements", "valid_up_to", "pending", "_red")

    def __init__(self, ring, elements, valid_up_to=math.inf, pending=(), _reducer=None):
        self.ring = ring
        self.elements = tuple(elements)
        self.valid_up_to = valid_up_to
        self.pending = tuple(pending)
        self._red = _reducer if _reducer is not None else _Reducer.from_polys(ring, self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return (
            f"TruncatedGroebnerBasis({len(self.elements)} elements, "
            f"valid_up_to={self.valid_up_to})"
        )

    @property
    def leading_monomials(self):
        return [g.lm for g in self.elements]

    def normal_form(self, p):
        """``reduce(p, self)`` for a Poly or a packed dict."""
        coeffs = p.coeffs if isinstance(p, Poly) else p
        return Poly(self.ring, self._red.normal_form(coeffs))

    def truncate(self, d):
        """Same basis viewed up to degree ``d``; higher-degree elements move to pending."""
        if d > self.valid_up_to:
            raise DegreeError(f"basis is only valid up to degree {self.valid_up_to}")
        low = [g for g in self.elements if g.degree() <= d]
        high = [g for g in self.elements if g.degree() > d]
        return TruncatedGroebnerBasis(self.ring, low, d, tuple(high) + self.pending)

    def raise_to(self, d):
        """Extend validity to degree ``d`` by processing S-pairs of degree in (valid_up_to, d]."""
        if d <= self.valid_up_to:
            return self
        elems = list(self.elements)
        red = _Reducer.from_polys(self.ring, elems)
        # replaying the pair updates over the existing elements recreates the
        # queue; pairs of degree <= valid_up_to already reduce to zero
        pairs = _Pairs(self.ring, above=self.valid_up_to)
        for k in range(len(elems)):
            pairs.add(red.lms, k)
        elems, red, pending = _complete(self.ring, elems, red, pairs, self.pending, d)
        return TruncatedGroebnerBasis(self.ring, elems, d, pending, red)


def _check_ring(ring, polys):
    for p in polys:
        if p.ring != ring:
            raise DimensionError("polynomials belong to different rings")


def s_polynomial(p, q):
    """(L/lt(p))*p - (L/lt(q))*q with L the lcm of the leading monomials."""
    if not p.coeffs or not q.coeffs:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    if p.ring != q.ring:
        raise DimensionError("polynomials belong to different rings")
    ring = p.ring
    a, b = p._lm(), q._lm()
    lcm = ring.lcm(a, b)
    fa = 1 / p.coeffs[a]
    fb = 1 / q.coeffs[b]
    sa, sb = lcm - a, lcm - b
    out = {}
    for m, c in p.coeffs.items():
        out[m + sa] = c * fa
    for m, c in q.coeffs.items():
        mm = m + sb
        v = out.get(mm)
        if v is None:
            out[mm] = -c * fb
        else:
            v -= c * fb
            if v:
                out[mm] = v
            else:
                del out[mm]
    return Poly(ring, out)


def reduce(p, basis):
    """Remainder of ``p`` modulo an ordered basis (a sequence of Polys or a basis object)."""
    if isinstance(basis, TruncatedGroebnerBasis):
        if basis.ring != p.ring:
            raise DimensionError("polynomial and basis belong to different rings")
        return basis.normal_form(p)
    basis = [g for g in basis]
    _check_ring(p.ring, basis)
    return Poly(p.ring, _Reducer.from_polys(p.ring, basis).normal_form(p.coeffs))


def _monic_dict(coeffs, ring):
    p = Poly(ring, coeffs)
    return p.monic()


class _Pairs:
    """S-pair queue with the Gebauer-Moeller criteria.

    Pairs are kept in a heap keyed by (lcm degree, lcm rank, i, j); pairs
    removed by the chain criterion stay in the heap and are skipped on pop.
    With ``criteria=False`` every pair is kept.
    """

    def __init__(self, ring, criteria=True, above=-1):
        self.ring = ring
        self.criteria = criteria
        self.above = above
        self.heap = []
        self.alive = {}

    def __bool__(self):
        self._drop_dead()
        return bool(self.heap)

    def _drop_dead(self):
        heap, alive = self.heap, self.alive
        while heap and (heap[0][2], heap[0][3]) not in alive:
            heapq.heappop(heap)

    def next_degree(self):
        self._drop_dead()
        return self.heap[0][0] if self.heap else math.inf

    def pop(self):
        self._drop_dead()
        _, _, i, j = heapq.heappop(self.heap)
        del self.alive[(i, j)]
        return i, j

    def add(self, lms, k):
        """Register element ``k`` (pairs with 0..k-1)."""
        ring = self.ring
        lcm = ring.lcm
        divides = ring.divides
        a = lms[k]
        new = [(lcm(lms[i], a), i) for i in range(k)]
        if not self.criteria:
            for l, i in new:
                self._push(l, i, k)
            return
        # chain criterion on old pairs
        dead = [
            ij for ij, l in self.alive.items()
            if divides(a, l) and new[ij[0]][0] != l and new[ij[1]][0] != l
        ]
        for ij in dead:
            del self.alive[ij]
        # among new pairs: drop those whose lcm is a proper multiple of another
        lcms = {l for l, _ in new}
        minimal = {l for l in lcms if not any(o != l and divides(o, l) for o in lcms)}
        groups = {}
        for l, i in new:
            if l in minimal:
                groups.setdefault(l, []).append(i)
        for l, idx in groups.items():
            # a coprime pair in the group means the whole lcm class reduces to 0
            if any(l == lms[i] + a for i in idx):
                continue
            self._push(l, idx[0], k)

    def _push(self, l, i, k):
        d = self.ring.mdegree(l)
        if d <= self.above:
            return
        self.alive[(i, k)] = l
        heapq.heappush(self.heap, (d, self.ring.rank(l), i, k))


def _complete(ring, elems, red, pairs, gens, up_to):
    """Degree-by-degree Buchberger loop.

    Processes generators and S-pairs in ascending degree until everything of
    degree <= ``up_to`` is done.  Returns the new element list, its reducer and
    the generators left for later.
    """
    gens = sorted(gens, key=lambda g: g.degree())
    gi = 0
    while True:
        next_gen = gens[gi].degree() if gi < len(gens) else math.inf
        next_pair = pairs.next_degree()
        deg = min(next_gen, next_pair)
        if deg > up_to or deg == math.inf:
            break
        if next_gen <= next_pair:
            candidate = gens[gi].coeffs
            gi += 1
        else:
            i, j = pairs.pop()
            candidate = s_polynomial(elems[i], elems[j]).coeffs
        r = red.normal_form(candidate)
        if not r:
            continue
        g = _monic_dict(r, ring)
        red = red.extended(g)
        elems.append(g)
        pairs.add(red.lms, len(elems) - 1)
    return elems, red, gens[gi:]


def _nonzero(gens):
    gens = [g for g in gens if g.coeffs]
    if gens:
        _check_ring(gens[0].ring, gens)
    return gens


def buchberger(gens, ring=None, criteria=True):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Zero generators are dropped.  The result is monic, autoreduced and sorted by
    ascending leading monomial, so it does not depend on generator order.
    """
    gens = _nonzero(gens)
    if not gens:
        if ring is None:
            raise ValueError("ring required for an empty generator list")
        return TruncatedGroebnerBasis(ring, [], math.inf)
    ring = gens[0].ring
    elems, _, _ = _complete(
        ring, [], _Reducer(ring, [], []), _Pairs(ring, criteria), gens, math.inf
    )
    return TruncatedGroebnerBasis(ring, interreduce(elems), math.inf)


def interreduce(polys):
    """Minimal, tail-reduced, monic basis sorted by ascending leading monomial."""
    polys = [p.monic() for p in polys if p.coeffs]
    if not polys:
        return []
    ring = polys[0].ring
    polys.sort(key=lambda p: ring.rank(p._lm()))
    kept = []
    for p in polys:
        lm = p._lm()
        if not any(ring.divides(q._lm(), lm) for q in kept):
            kept.append(p)
    out = []
    for i, p in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        lm = p._lm()
        tail = {m: c for m, c in p.coeffs.items() if m != lm}
        red = _Reducer.from_polys(ring, others).normal_form(tail)
        red[lm] = p.coeffs[lm]
        out.append(Poly(ring, red))
    return out


def truncated_gb(gens, d, ring=None):
    """Homogeneous Groebner basis of ``<gens>`` valid up to degree ``d``.

    Built degree by degree; generators of degree above ``d`` are kept as pending.
    """
    gens = _nonzero(gens)
    for g in gens:
        if g.is_homogeneous() is None:
            raise DegreeError(f"generator is not homogeneous: {g}")
    if not gens:
        if ring is None:
            raise ValueError("ring required for an empty generator list")
        return TruncatedGroebnerBasis(ring, [], d)
    ring = gens[0].ring
    elems, red, pending = _complete(ring, [], _Reducer(ring, [], []), _Pairs(ring), gens, d)
    return TruncatedGroebnerBasis(ring, elems, d, pending, red)


def _require_homogeneous(p):
    h = p.is_homogeneous()
    if h is None:
        raise DegreeError(f"polynomial is not homogeneous: {p}")
    return h


def extend_truncated(G, p, remainder=None):
    """Append monic rem(p; G) to ``G`` (the incremental extension step).

    ``p`` must be homogeneous of degree ``G.valid_up_to`` and not already in
    the ideal.  A remainder computed earlier against ``G`` may be passed in.
    """
    h = _require_homogeneous(p)
    if h == ZERO_DEGREE:
        raise AlreadyMemberError("zero polynomial is in every ideal")
    if h != G.valid_up_to:
        raise DegreeError(f"degree {h} differs from basis degree {G.valid_up_to}")
    r = G.normal_form(p) if remainder is None else remainder
    if not r.coeffs:
        raise AlreadyMemberError("polynomial already lies in the ideal")
    g = r.monic()
    red = G._red.extended(g)
    return TruncatedGroebnerBasis(G.ring, G.elements + (g,), G.valid_up_to, G.pending, red)


def member_up_to_degree(p, G):
    """Ideal membership of a homogeneous ``p`` with deg p <= G.valid_up_to."""
    h = _require_homogeneous(p)
    if h == ZERO_DEGREE:
        return True
    if h > G.valid_up_to:
        raise DegreeError(f"degree {h} exceeds basis validity {G.valid_up_to}")
    return not G.normal_form(p).coeffs


def is_truncated_gb(G):
    """Check the definition directly: every S-pair of degree <= bound reduces to 0."""
    elems = G.elements
    for j in range(len(elems)):
        for i in range(j):
            s = s_polynomial(elems[i], elems[j])
            if not s.coeffs or s.degree() > G.valid_up_to:
                continue
            if reduce(s, elems).coeffs:
                return False
    return True
