"""Independent oracles and random generators shared by the test modules."""

import random
from itertools import permutations

from gmpy2 import mpq

from invring.group import MatrixGroup, from_columns
from invring.poly import Poly


def exact_rank(rows):
    """Rank over Q of sparse rows given as {column: value} dicts."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: mpq(v) for k, v in row.items() if v}
        while row:
            col = max(row)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / row[col]
                pivots[col] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
            f = row[col]
            for k, v in piv.items():
                w = row.get(k, 0) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return rank


def substitute(matrix, ring):
    """Naive action of a matrix on monomials, by expanding products of linear forms."""
    n = ring.n
    x = ring.gens()
    forms = []
    for j in range(n):
        f = ring.zero()
        for i in range(n):
            if matrix[i][j]:
                f = f + x[i].scale(matrix[i][j])
        forms.append(f)
    powers = {}

    def power(j, k):
        if (j, k) not in powers:
            powers[(j, k)] = ring.one() if k == 0 else power(j, k - 1) * forms[j]
        return powers[(j, k)]

    def image(m):
        out = ring.one()
        for j, e in enumerate(ring.unpack(m)):
            if e:
                out = out * power(j, e)
        return out

    return image


def invariant_dimension(G, ring, d):
    """dim of the degree-d invariants: nullity of the stacked (g - I), g a generator."""
    monos = list(ring.monomials_of_degree(d))
    images = [substitute(g, ring) for g in G.generators]
    columns = []
    for m in monos:
        col = {}
        for gi, image in enumerate(images):
            img = dict(image(m).coeffs)
            img[m] = img.get(m, 0) - 1
            for mm, c in img.items():
                if c:
                    col[(gi, mm)] = c
        columns.append(col)
    return len(monos) - exact_rank(columns)


def span_contains(vectors, probe):
    """Is ``probe`` (a coeff dict) in the Q-span of ``vectors``?"""
    base = exact_rank(vectors)
    return exact_rank(list(vectors) + [probe]) == base


def random_homogeneous(ring, d, rng, terms=3, coeff_range=5):
    monos = list(ring.monomials_of_degree(d))
    out = {}
    for m in rng.sample(monos, min(terms, len(monos))):
        c = mpq(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
        if c:
            out[m] = c
    return Poly(ring, out)


def random_poly(ring, rng, max_deg=3, terms=4):
    out = Poly(ring, {})
    for _ in range(terms):
        out = out + random_homogeneous(ring, rng.randint(0, max_deg), rng, terms=1)
    return out


def random_permutation_group(n, rng, max_order=8):
    """A permutation group on n points given by 1-2 random generators, |G| <= max_order."""
    perms = list(permutations(range(1, n + 1)))
    while True:
        gens = [from_columns(rng.choice(perms)) for _ in range(rng.randint(1, 2))]
        G = MatrixGroup(gens, n)
        if G.order <= max_order:
            return G


def make_rng(seed):
    return random.Random(seed)
