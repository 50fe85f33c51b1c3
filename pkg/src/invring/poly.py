"""Sparse multivariate polynomials over Q.

A monomial is packed into a single Python ``int``: one ``width``-bit field per
variable plus one degree field.  Multiplying monomials is integer
addition and divisibility is a guard-bit test.  The field layout depends on
the monomial order, so comparing two monomials is an int comparison of their
``rank``.  Exponent tuples are only used at the API boundary.

Coefficients are :class:`gmpy2.mpq`, which are always kept in lowest terms.
"""

from fractions import Fraction
from numbers import Integral

from gmpy2 import mpq

from .errors import DimensionError, ParseError, UnknownVariableError, ZeroPolynomialError

ORDERS = ("degrevlex", "deglex", "lex")

ZERO_DEGREE = "zero"

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value):
    """Coerce an exact scalar to ``mpq``.  Floats are refused."""
    if isinstance(value, type(_ONE)):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, Integral):
        return mpq(int(value))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


def parse_rational(text):
    """Parse ``[-]digits[/digits]``."""
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            if not den.strip().isdigit():
                raise ValueError
            q = mpq(int(num), int(den))
        else:
            q = mpq(int(s))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational literal {text!r}") from None
    return q


def format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Ring:
    """Polynomial ring Q[x_1..x_n] with a fixed monomial order.

    ``names`` is either a list of variable names or an int (names become
    ``x1..xn``).
    """

    def __init__(self, names, order="degrevlex", width=10):
        if isinstance(names, int):
            names = [f"x{i + 1}" for i in range(names)]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}; expected one of {ORDERS}")
        n = len(names)
        self.names = names
        self.n = n
        self.order = order
        self.width = width
        self.field = (1 << width) - 1
        self.max_exp = (1 << (width - 1)) - 1
        if order == "degrevlex":
            # x_n most significant; flipping the variable bits makes a larger
            # int mean a larger monomial.
            self.offsets = tuple(i * width for i in range(n))
            self.deg_off = n * width
            self.rank_xor = (1 << self.deg_off) - 1
        elif order == "deglex":
            self.offsets = tuple((n - 1 - i) * width for i in range(n))
            self.deg_off = n * width
            self.rank_xor = 0
        else:
            # lex ignores degree, so the degree field sits below the variables.
            self.offsets = tuple((n - i) * width for i in range(n))
            self.deg_off = 0
            self.rank_xor = 0
        self.guard = sum(1 << (k * width + width - 1) for k in range(n + 1))
        self._index = {name: i for i, name in enumerate(names)}

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.order == other.order
            and self.width == other.width
        )

    def __hash__(self):
        return hash((self.names, self.order, self.width))

    def __repr__(self):
        return f"Ring({list(self.names)!r}, order={self.order!r})"

    def with_order(self, order):
        return Ring(self.names, order, self.width)

    # -- monomials --------------------------------------------------------
    def pack(self, exps):
        if len(exps) != self.n:
            raise DimensionError(f"expected {self.n} exponents, got {len(exps)}")
        m = 0
        deg = 0
        for e, off in zip(exps, self.offsets):
            if e < 0:
                raise ValueError("negative exponent")
            m |= e << off
            deg += e
        if deg > self.max_exp:
            raise OverflowError(f"degree {deg} exceeds ring limit {self.max_exp}")
        return m | (deg << self.deg_off)

    def unpack(self, m):
        f = self.field
        return tuple((m >> off) & f for off in self.offsets)

    def mdegree(self, m):
        return (m >> self.deg_off) & self.field

    def divides(self, a, b):
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a, b):
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def var(self, i):
        return (1 << self.offsets[i]) | (1 << self.deg_off)

    def rank(self, m):
        """Integer whose natural order is the monomial order (an involution)."""
        return m ^ self.rank_xor

    def compare(self, a, b):
        """-1, 0 or 1 for exponent tuples (or packed ints) a, b."""
        if not isinstance(a, int):
            a = self.pack(a)
        if not isinstance(b, int):
            b = self.pack(b)
        ra, rb = self.rank(a), self.rank(b)
        return (ra > rb) - (ra < rb)

    def monomial_str(self, m):
        parts = []
        for name, e in zip(self.names, self.unpack(m)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def monomials_of_degree(self, d):
        """Packed monomials of total degree ``d``, largest first, generated lazily."""
        n = self.n
        if n == 0:
            if d == 0:
                yield 0
            return
        base = d << self.deg_off
        offs = self.offsets
        if self.order == "degrevlex":
            # Descending revlex: smallest e_n first, then smallest e_{n-1}, ...
            def rec(i, rest, acc):
                if i == 0:
                    yield acc | (rest << offs[0])
                    return
                for e in range(rest + 1):
                    yield from rec(i - 1, rest - e, acc | (e << offs[i]))

            yield from rec(n - 1, d, base)
        else:
            def rec(i, rest, acc):
                if i == n - 1:
                    yield acc | (rest << offs[i])
                    return
                for e in range(rest, -1, -1):
                    yield from rec(i + 1, rest - e, acc | (e << offs[i]))

            yield from rec(0, d, base)

    # -- polynomials ------------------------------------------------------
    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {0: _ONE})

    def const(self, c):
        c = to_rational(c)
        return Poly(self, {0: c} if c else {})

    def gen(self, i):
        if isinstance(i, str):
            i = self._index[i]
        return Poly(self, {self.var(i): _ONE})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps, coeff=1):
        c = to_rational(coeff)
        return Poly(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms):
        """Build from ``(exponent tuple, coefficient)`` pairs; duplicates are summed."""
        out = {}
        for exps, c in terms:
            m = self.pack(exps)
            v = out.get(m, _ZERO) + to_rational(c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self, out)

    def from_dict(self, coeffs):
        """Trusted constructor from a packed-monomial dict without zero values."""
        return Poly(self, coeffs)

    def parse(self, text):
        return parse_polynomial(text, self)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None


class Poly:
    """Immutable polynomial.  ``coeffs`` maps packed monomials to nonzero ``mpq``."""

    __slots__ = ("ring", "coeffs", "_keys")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs
        self._keys = None

    # -- structure --------------------------------------------------------
    def keys_sorted(self):
        """Packed monomials in descending monomial order (cached)."""
        if self._keys is None:
            self._keys = sorted(self.coeffs, key=self.ring.rank, reverse=True)
        return self._keys

    def terms(self):
        """``(exponent tuple, coefficient)`` pairs, strictly descending."""
        unpack = self.ring.unpack
        c = self.coeffs
        return [(unpack(m), c[m]) for m in self.keys_sorted()]

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def _lm(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        if self._keys is not None:
            return self._keys[0]
        return max(self.coeffs, key=self.ring.rank)

    @property
    def lm(self):
        return self.ring.unpack(self._lm())

    @property
    def lc(self):
        return self.coeffs[self._lm()]

    @property
    def lt(self):
        m = self._lm()
        return (self.ring.unpack(m), self.coeffs[m])

    def leading_parts(self):
        """``(lm, lc, lt)``; raises on the zero polynomial."""
        m = self._lm()
        c = self.coeffs[m]
        exps = self.ring.unpack(m)
        return exps, c, Poly(self.ring, {m: c})

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        s, f = self.ring.deg_off, self.ring.field
        return max((m >> s) & f for m in self.coeffs)

    def is_homogeneous(self):
        """The common degree of all terms, ``ZERO_DEGREE`` for 0, or None."""
        if not self.coeffs:
            return ZERO_DEGREE
        s, f = self.ring.deg_off, self.ring.field
        it = iter(self.coeffs)
        d = (next(it) >> s) & f
        for m in it:
            if (m >> s) & f != d:
                return None
        return d

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly(self.ring, {m: c * inv for m, c in self.coeffs.items()})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise DimensionError("polynomials belong to different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_rational(c)
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if self.coeffs and other.coeffs:
            if self.degree() + other.degree() > self.ring.max_exp:
                raise OverflowError("product degree exceeds ring limit")
        return Poly(self.ring, mul_dicts(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        try:
            other = self.ring.const(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Poly({format_polynomial(self)!r})"


def mul_dicts(a, b):
    """Product of two packed-monomial dicts."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = ma + mb
            v = get(m)
            if v is None:
                out[m] = ca * cb
            else:
                v += ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def format_polynomial(p):
    if not p.coeffs:
        return "0"
    ring = p.ring
    out = []
    for m in p.keys_sorted():
        c = p.coeffs[m]
        neg = c < 0
        a = -c if neg else c
        mono = ring.monomial_str(m)
        if mono == "1":
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


# -- parser ---------------------------------------------------------------

_PUNCT = set("+-*/^()")


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
        elif ch in _PUNCT:
            toks.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.pos += 1
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return p

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = _add(acc, rhs) if op == "+" else _add(acc, _neg(rhs))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = mul_dicts(acc, self.factor())
        return acc

    def factor(self):
        kind, val, where = self.peek()
        ring = self.ring
        if kind == "int":
            self.take()
            q = mpq(int(val))
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], self.text)
                q = mpq(int(val), int(den[1]))
            return {0: q} if q else {}
        if kind == "name":
            self.take()
            if val not in ring._index:
                raise UnknownVariableError(f"unknown variable {val!r}", where, self.text)
            e = 1
            if self.peek()[0] == "^":
                self.take()
                e = int(self.take("int")[1])
                if e > ring.max_exp:
                    raise ParseError("exponent too large", where, self.text)
            return {ring.var(ring._index[val]) * e: _ONE} if e else {0: _ONE}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return _neg(self.factor())
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", where, self.text)


def _add(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, _ZERO) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _neg(a):
    return {m: -c for m, c in a.items()}


def parse_polynomial(text, ring):
    """Parse ``text`` over ``ring`` (a :class:`Ring` or list of variable names).

    Grammar: ``expr := term (('+'|'-') term)*``, ``term := factor ('*' factor)*``,
    ``factor := rational | var ['^' uint] | '(' expr ')' | '-' factor``.
    Multiplication must be written explicitly.
    """
    if not isinstance(ring, Ring):
        ring = Ring(ring)
    return Poly(ring, _Parser(text, ring).parse())
