"""Finite matrix groups over Q acting on a polynomial ring.

Column convention: a matrix M sends the variable x_j to sum_i M[i][j] * x_i,
so the j-th column is the image of x_j.  With this convention
``act(g, act(h, p)) == act(g @ h, p)``.
"""

from collections import deque

from gmpy2 import mpq

from .errors import DimensionError, GroupTooLargeError, InvalidPrimariesError, ValidationError
from .groebner import truncated_gb
from .poly import Poly, to_rational

DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_BATCH_SIZE = 1000


def as_matrix(rows):
    """Normalise a nested sequence of exact scalars to a tuple-of-tuples of mpq."""
    m = tuple(tuple(to_rational(v) for v in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("matrix is not square")
    return m


def from_columns(images, n=None):
    """Permutation matrix whose j-th column is e_{images[j]} (1-based), as written
    ``(e_2 e_1 e_3 ...)``."""
    n = len(images) if n is None else n
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        rows[i - 1][j] = 1
    return as_matrix(rows)


def identity(n):
    return as_matrix([[int(i == j) for j in range(n)] for i in range(n)])


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), mpq(0)) for col in bt) for row in a)


def determinant(m):
    """Exact determinant by Gaussian elimination over Q."""
    a = [list(row) for row in m]
    n = len(a)
    det = mpq(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return mpq(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def monomial_form(m):
    """For a monomial matrix return ``(targets, scales)`` with x_j -> scales[j] * x_targets[j];
    otherwise None."""
    n = len(m)
    targets, scales = [], []
    for j in range(n):
        nz = [(i, m[i][j]) for i in range(n) if m[i][j]]
        if len(nz) != 1:
            return None
        targets.append(nz[0][0])
        scales.append(nz[0][1])
    if sorted(targets) != list(range(n)):
        return None
    return tuple(targets), tuple(scales)


def _check_generator(g):
    det = determinant(g)
    if det == 0:
        raise ValidationError("singular generator matrix")
    # a rational matrix of finite order has determinant +-1
    if det != 1 and det != -1:
        raise ValidationError(f"generator has determinant {det}, so it has infinite order")


class MatrixGroup:
    """Finite group generated by invertible rational matrices.

    ``elements`` is the breadth-first closure starting from the identity and
    right-multiplying by generators.  It is computed on first use.
    """

    def __init__(self, generators, n=None, cap=DEFAULT_CLOSURE_CAP):
        gens = [as_matrix(g) for g in generators]
        if n is None:
            if not gens:
                raise ValueError("need n when there are no generators")
            n = len(gens[0])
        for g in gens:
            if len(g) != n:
                raise DimensionError(f"generator is {len(g)}x{len(g)}, expected {n}x{n}")
            _check_generator(g)
        self.n = n
        self.generators = tuple(gens)
        self.cap = cap
        self._elements = None
        self._elem_forms = None
        forms = [monomial_form(g) for g in gens]
        self.is_monomial = all(f is not None for f in forms)
        self.is_permutation = self.is_monomial and all(
            all(s == 1 for s in f[1]) for f in forms
        )

    @property
    def elements(self):
        if self._elements is None:
            self._elements = close_group(self.generators, self.n, self.cap)
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"MatrixGroup(n={self.n}, generators={len(self.generators)})"

    # -- action -----------------------------------------------------------
    def _images(self):
        if self._elem_forms is None:
            self._elem_forms = [_Action(g) for g in self.elements]
        return self._elem_forms

    def act(self, g, p):
        return act(g, p)

    def reynolds(self, p):
        return reynolds(p, self)

    def is_invariant(self, p):
        return is_invariant(p, self)


class _Action:
    """Precomputed substitution for one matrix."""

    __slots__ = ("matrix", "form", "linear")

    def __init__(self, matrix):
        self.matrix = matrix
        self.form = monomial_form(matrix)
        n = len(matrix)
        self.linear = [[(i, matrix[i][j]) for i in range(n) if matrix[i][j]] for j in range(n)]

    def apply(self, ring, coeffs):
        """Image of a packed-monomial dict."""
        if self.form is not None:
            return self._apply_monomial(ring, coeffs)
        return self._apply_general(ring, coeffs)

    def _apply_monomial(self, ring, coeffs):
        targets, scales = self.form
        unpack, pack = ring.unpack, ring.pack
        n = ring.n
        out = {}
        unit = all(s == 1 for s in scales)
        for m, c in coeffs.items():
            e = unpack(m)
            img = [0] * n
            f = c
            for j, ej in enumerate(e):
                if ej:
                    img[targets[j]] = ej
                    if not unit:
                        f = f * scales[j] ** ej
            mm = pack(img)
            v = out.get(mm)
            if v is None:
                out[mm] = f
            else:
                v += f
                if v:
                    out[mm] = v
                else:
                    del out[mm]
        return out

    def _apply_general(self, ring, coeffs):
        from .poly import mul_dicts

        linear = [{ring.var(i): c for i, c in col} for col in self.linear]
        powers = {}

        def power(j, k):
            key = (j, k)
            if key not in powers:
                powers[key] = {0: mpq(1)} if k == 0 else mul_dicts(power(j, k - 1), linear[j])
            return powers[key]

        out = {}
        for m, c in coeffs.items():
            term = {0: c}
            for j, ej in enumerate(ring.unpack(m)):
                if ej:
                    term = mul_dicts(term, power(j, ej))
            for mm, v in term.items():
                w = out.get(mm, 0) + v
                if w:
                    out[mm] = w
                else:
                    out.pop(mm, None)
        return out


def close_group(generators, n=None, cap=DEFAULT_CLOSURE_CAP):
    """All products of the generators, breadth-first from the identity."""
    gens = [as_matrix(g) for g in generators]
    if n is None:
        n = len(gens[0])
    for g in gens:
        if len(g) != n:
            raise DimensionError("generators of different sizes")
        _check_generator(g)
    ident = identity(n)
    seen = {ident}
    elements = [ident]
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = matmul(a, g)
            if b not in seen:
                if len(elements) >= cap:
                    raise GroupTooLargeError(f"group closure exceeds {cap} elements")
                seen.add(b)
                elements.append(b)
                queue.append(b)
    return tuple(elements)


def act(g, p):
    """Image of ``p`` under the matrix ``g``."""
    ring = p.ring
    if len(g) != ring.n:
        raise DimensionError(f"{len(g)}x{len(g)} matrix acting on {ring.n} variables")
    action = g if isinstance(g, _Action) else _Action(as_matrix(g))
    return Poly(ring, action.apply(ring, p.coeffs))


def reynolds(p, G):
    """(1/|G|) * sum of g.p over the group."""
    ring = p.ring
    if G.n != ring.n:
        raise DimensionError("group and ring have different dimensions")
    acc = {}
    for a in G._images():
        for m, c in a.apply(ring, p.coeffs).items():
            v = acc.get(m)
            if v is None:
                acc[m] = c
            else:
                v += c
                if v:
                    acc[m] = v
                else:
                    del acc[m]
    inv = mpq(1, G.order)
    return Poly(ring, {m: c * inv for m, c in acc.items()})


def is_invariant(p, G):
    """True iff every generator fixes ``p``."""
    return all(act(g, p) == p for g in G.generators)


def _is_orbit_representative(ring, m, actions):
    """For monomial groups: is ``m`` the largest monomial of its orbit?"""
    x = ring.rank_xor
    r = m ^ x
    e = ring.unpack(m)
    n = ring.n
    for a in actions:
        targets = a.form[0]
        img = [0] * n
        for j, ej in enumerate(e):
            img[targets[j]] = ej
        if ring.pack(img) ^ x > r:
            return False
    return True


def reynolds_degree_basis(d, G, ring, batch_size=DEFAULT_BATCH_SIZE, dedup=None):
    """Yield batches of ``(source monomial, Reynolds image)`` for degree ``d``.

    Source monomials come in descending monomial order and zero images are
    skipped.  For monomial groups only the largest monomial of each orbit is
    expanded, because the other orbit members give scalar multiples of its
    image.  ``dedup=False`` turns that off.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if dedup is None:
        dedup = G.is_monomial
    if dedup and not G.is_monomial:
        raise ValueError("orbit dedup needs a monomial group")
    actions = G._images()
    inv = mpq(1, G.order)
    batch = []
    for m in ring.monomials_of_degree(d):
        if dedup and not _is_orbit_representative(ring, m, actions):
            continue
        acc = {}
        for a in actions:
            for mm, c in a.apply(ring, {m: mpq(1)}).items():
                v = acc.get(mm, 0) + c
                if v:
                    acc[mm] = v
                else:
                    acc.pop(mm, None)
        if not acc:
            continue
        batch.append((ring.unpack(m), Poly(ring, {mm: c * inv for mm, c in acc.items()})))
        if len(batch) >= batch_size:
            yield batch
            batch = []
    if batch:
        yield batch


def iter_reynolds_images(d, G, ring, batch_size=DEFAULT_BATCH_SIZE, dedup=None):
    """Flat stream over :func:`reynolds_degree_basis`."""
    for batch in reynolds_degree_basis(d, G, ring, batch_size, dedup):
        yield from batch


class PrimarySystem:
    """Validated primary invariants."""

    def __init__(self, polys, group, gb=None):
        self.polys = tuple(polys)
        self.group = group
        self.degrees = tuple(p.degree() for p in self.polys)
        # truncated basis of <P> built during validation, reused by the searches
        self.gb = gb

    @property
    def ring(self):
        return self.polys[0].ring

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def validate_primaries(polys, G):
    """Check count, homogeneity, invariance and zero-dimensionality.

    Zero-dimensionality is read off the leading monomials of a Groebner basis of
    ``<P>``: every variable needs a pure power among them.  For a homogeneous
    system of parameters the quotient vanishes above degree sum(deg p_i - 1).
    So a basis truncated one degree higher already shows all pure powers.
    """
    polys = list(polys)
    n = G.n
    if len(polys) != n:
        raise InvalidPrimariesError(f"expected {n} primary invariants, got {len(polys)}")
    for k, p in enumerate(polys):
        if p.ring.n != n:
            raise DimensionError(f"primary {k + 1} lives in a ring with {p.ring.n} variables")
        h = p.is_homogeneous()
        if h is None:
            raise InvalidPrimariesError(f"primary {k + 1} is not homogeneous: {p}")
        if h == "zero" or h == 0:
            raise InvalidPrimariesError(f"primary {k + 1} is constant: {p}")
    for k, p in enumerate(polys):
        if not is_invariant(p, G):
            raise InvalidPrimariesError(f"primary {k + 1} is not invariant: {p}")
    ring = polys[0].ring
    bound = sum(p.degree() - 1 for p in polys) + 1
    gb = truncated_gb(polys, bound)
    lms = [ring.unpack(g._lm()) for g in gb.elements]
    for i in range(n):
        if not any(e[i] > 0 and sum(e) == e[i] for e in lms):
            raise InvalidPrimariesError(
                f"primaries do not form a system of parameters: no pure power of "
                f"{ring.names[i]} among the leading monomials"
            )
    return PrimarySystem(polys, G, gb)
