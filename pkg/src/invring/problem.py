"""Problem files: variables, group generators, primary invariants, order.

    # comment
    variables: x, y, z
    order: degrevlex
    generators:
      0,1,0; 1,0,0; 0,0,1
      -1,0,0; 0,1,0; 0,0,1
    primaries:
      x^2+y^2
      ...

Each generator is one line of semicolon-separated rows of comma-separated
rational literals.  Column j of a matrix is the image of the j-th variable.
A section may also start on its header line (``variables: x, y``).
"""

import re
from dataclasses import dataclass

from .errors import ParseError
from .group import MatrixGroup, as_matrix
from .poly import ORDERS, Ring, parse_rational

SECTIONS = ("variables", "generators", "primaries", "order")
_HEADER = re.compile(r"^\s*([A-Za-z_]+)\s*:(.*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass
class Problem:
    variables: list
    generators: list
    primaries: list
    order: str = "degrevlex"

    def ring(self):
        return Ring(self.variables, self.order)

    def group(self, **kwargs):
        return MatrixGroup(self.generators, len(self.variables), **kwargs)

    def primary_polys(self, ring=None):
        ring = ring or self.ring()
        return [ring.parse(s) for s in self.primaries]


def _error(msg, lineno, col=None):
    where = f"line {lineno}" if col is None else f"line {lineno}, column {col}"
    return ParseError(f"{msg} ({where})")


def parse_matrix(text, n=None, lineno=0):
    rows = []
    for row in text.split(";"):
        if not row.strip():
            raise _error("empty matrix row", lineno)
        entries = []
        for lit in row.split(","):
            try:
                entries.append(parse_rational(lit))
            except ParseError:
                raise _error(f"bad rational literal {lit.strip()!r}", lineno) from None
        rows.append(entries)
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise _error("matrix is not square", lineno)
    if n is not None and size != n:
        raise _error(f"{size}x{size} matrix for {n} variables", lineno)
    return as_matrix(rows)


def parse_problem(text):
    """Parse problem text; polynomials are checked against the variables."""
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m:
            # polynomials and matrices never contain ':'
            if m.group(1).lower() not in SECTIONS:
                raise _error(f"unknown section {m.group(1)!r}", lineno)
            current = m.group(1).lower()
            if current in sections:
                raise _error(f"duplicate section {current!r}", lineno)
            sections[current] = []
            rest = m.group(2).strip()
            if rest:
                sections[current].append((lineno, rest))
            continue
        if current is None:
            raise _error("content before any section header", lineno)
        sections[current].append((lineno, line.strip()))

    for name in ("variables", "generators", "primaries"):
        if name not in sections:
            raise ParseError(f"missing section {name!r}")

    names = []
    for lineno, line in sections["variables"]:
        for tok in line.replace(",", " ").split():
            if not _NAME.match(tok):
                raise _error(f"bad variable name {tok!r}", lineno)
            if tok in names:
                raise _error(f"duplicate variable {tok!r}", lineno)
            names.append(tok)
    if not names:
        raise ParseError("no variables given")

    order = "degrevlex"
    if "order" in sections:
        vals = sections["order"]
        if len(vals) != 1:
            raise ParseError("order section needs exactly one value")
        lineno, order = vals[0]
        if order not in ORDERS:
            raise _error(f"unknown monomial order {order!r}; choose from {ORDERS}", lineno)

    gens = [parse_matrix(line, len(names), lineno) for lineno, line in sections["generators"]]
    ring = Ring(names, order)
    prims = []
    for lineno, line in sections["primaries"]:
        try:
            ring.parse(line)
        except ParseError as exc:
            err = ParseError(f"{exc} (line {lineno})")
            err.position, err.text = exc.position, line
            raise err from None
        prims.append(line)
    return Problem(names, gens, prims, order)


def load_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def format_problem(names, generators, primaries, order="degrevlex"):
    """Inverse of :func:`parse_problem`."""
    from .poly import format_rational

    lines = [f"variables: {', '.join(names)}", f"order: {order}", "generators:"]
    for g in generators:
        lines.append("  " + "; ".join(", ".join(format_rational(v) for v in row) for row in g))
    lines.append("primaries:")
    lines.extend(f"  {p}" for p in primaries)
    return "\n".join(lines) + "\n"
