"""Command line front end.

    invring molien     PROBLEM | --example N  [--max-degree D]
    invring secondary  PROBLEM | --example N  [--algorithm A] [--show-invariants]
    invring irred      PROBLEM | --example N
    invring verify     PROBLEM | --example N
    invring bench      --example N [--algorithm A]

``--out structured`` writes JSON lines; each record carries ``schema`` and
``record`` fields (see SCHEMA).  Exit codes: 0 success, 1 incomplete run or
other error, 2 parse error, 3 validation error, 4 resource cap.
"""

import argparse
import json
import sys

from . import __version__
from .benchmarks import get_instance
from .errors import InvringError, ParseError
from .group import DEFAULT_BATCH_SIZE, DEFAULT_CLOSURE_CAP, MatrixGroup, validate_primaries
from .molien import degree_cap, molien_profile
from .poly import format_polynomial
from .problem import load_problem
from .secondary import ALGORITHMS, compute_secondaries

SCHEMA = "invring.report/1"


class Emitter:
    def __init__(self, mode, stream=None):
        self.mode = mode
        self.stream = stream or sys.stdout

    def record(self, kind, **fields):
        if self.mode == "structured":
            self.stream.write(json.dumps({"schema": SCHEMA, "record": kind, **fields}) + "\n")

    def text(self, line=""):
        if self.mode == "text":
            self.stream.write(line + "\n")


def _load(args):
    """Returns (label, primaries or None, group)."""
    if args.example is not None:
        inst = get_instance(args.example)
        group = MatrixGroup(inst.generators, inst.n, cap=args.closure_cap)
        prims = inst.primary_polys() if inst.primaries is not None else None
        return f"example {inst.number}: {inst.title}", prims, group, inst
    if args.problem is None:
        raise ParseError("give a problem file or --example N")
    prob = load_problem(args.problem)
    return args.problem, prob.primary_polys(), prob.group(cap=args.closure_cap), None


def _require_primaries(prims, inst):
    if prims is None:
        raise InvringError(f"example {inst.number}: {inst.note}")
    return prims


def cmd_molien(args, out):
    label, prims, group, inst = _load(args)
    prims = _require_primaries(prims, inst)
    degs = [p.degree() for p in prims]
    prof = molien_profile(group, degs, args.max_degree)
    out.record("header", command="molien", source=label, group_order=group.order,
               primary_degrees=degs, degree_cap=degree_cap(degs))
    out.text(f"{label}")
    out.text(f"|G| = {group.order}, primary degrees {degs}")
    out.text(f"{'d':>4} {'dim':>8} {'m_d':>6}")
    for d, a in enumerate(prof.series_coeffs):
        m = prof.m[d] if d < len(prof.m) else 0
        out.record("degree", d=d, series=a, m=m)
        out.text(f"{d:>4} {a:>8} {m:>6}")
    out.record("summary", total=prof.total, max_degree=prof.max_degree)
    out.text(f"total secondaries {prof.total}, maximal degree {prof.max_degree}")
    return 0


def _report(result, label, out, show):
    st = result.stats
    out.record("header", command=result.algorithm, source=label, group_order=result.group_order,
               primary_degrees=[p.degree() for p in result.primaries],
               normal_forms=result.normal_forms)
    out.text(label)
    out.text(f"algorithm {result.algorithm}, |G| = {result.group_order}")
    out.text(f"{'d':>4} {'m_d':>6} {'|S_d|':>6} {'|IS_d|':>7}")
    for d, rec in sorted(result.records.items()):
        out.record("degree", d=d, m=rec.target, s=len(rec.secondaries), irreducible=len(rec.irreducible))
        out.text(f"{d:>4} {rec.target:>6} {len(rec.secondaries):>6} {len(rec.irreducible):>7}")
    if show:
        for s in result.secondaries:
            poly = s.poly if s.poly is not None else s.nf
            fields = dict(d=s.degree, factors=list(s.factors), provenance=s.provenance,
                          irreducible=s.is_irreducible, normal_form=s.poly is None,
                          poly=format_polynomial(poly))
            out.record("invariant", **fields)
            tag = "irr" if s.is_irreducible else "   "
            kind = " (normal form)" if s.poly is None else ""
            out.text(f"[{s.degree}] {tag} {format_polynomial(poly)}{kind}")
    summary = dict(
        total=result.total, max_degree=result.max_degree,
        irreducible=len(result.irreducibles),
        irreducible_max_degree=result.max_irreducible_degree,
        complete=result.complete, counters=st.as_dict(),
    )
    out.record("summary", **summary)
    out.text(f"secondaries {result.total} (max degree {result.max_degree}), "
             f"irreducible {len(result.irreducibles)} (max degree {result.max_irreducible_degree})")
    out.text(f"reductions {st.reductions}, candidates {st.candidates_generated} tried / "
             f"{st.candidates_accepted} accepted, max basis {st.max_basis_size}, "
             f"full GBs {st.full_gb_computations}, {st.elapsed:.2f}s")
    return 0 if result.complete else 1


def _run(args, out, algorithm):
    label, prims, group, inst = _load(args)
    prims = _require_primaries(prims, inst)
    if inst is not None and inst.stretch:
        out.text(inst.note)
        out.record("notice", message=inst.note)
    result = compute_secondaries(
        prims, group, algorithm, threads=args.threads, batch_size=args.batch_size,
        max_degree=args.max_degree,
    )
    code = _report(result, label, out, getattr(args, "show_invariants", False))
    if inst is not None and result.complete:
        got = (result.total, result.max_degree, len(result.irreducibles),
               result.max_irreducible_degree)
        ok = got == inst.expected
        out.record("expected", published=list(inst.expected), got=list(got), match=ok)
        out.text(f"published {inst.expected}: {'match' if ok else 'MISMATCH'}")
    return code


def cmd_secondary(args, out):
    return _run(args, out, args.algorithm)


def cmd_irred(args, out):
    return _run(args, out, "irreducible")


def cmd_verify(args, out):
    label, prims, group, inst = _load(args)
    prims = _require_primaries(prims, inst)
    system = validate_primaries(prims, group)
    degs = list(system.degrees)
    prof = molien_profile(group, degs)
    out.record("verify", source=label, valid=True, group_order=group.order,
               primary_degrees=degs, secondary_total=prof.total)
    out.text(f"{label}: primaries valid; |G| = {group.order}, degrees {degs}, "
             f"{prof.total} secondary invariants expected")
    return 0


def cmd_bench(args, out):
    if args.example is None:
        raise ParseError("bench needs --example N")
    inst = get_instance(args.example)
    if inst.primaries is None:
        out.record("error", exit_code=3, message=inst.note)
        print(f"example {inst.number} rejected: {inst.note}", file=sys.stderr)
        return 3
    args.show_invariants = False
    return _run(args, out, args.algorithm)


def build_parser():
    p = argparse.ArgumentParser(prog="invring", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"invring {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("problem", nargs="?", help="problem file")
        sp.add_argument("--example", type=int, help="built-in example 1-9")
        sp.add_argument("--out", choices=("text", "structured"), default="text")
        sp.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP,
                        help="largest group order accepted")

    def running(sp):
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--batch-size", type=int, default=DEFAULT_BATCH_SIZE)
        sp.add_argument("--max-degree", type=int, help="stop after this degree")

    sp = sub.add_parser("molien", help="Molien series and secondary counts")
    common(sp)
    sp.add_argument("--max-degree", type=int, help="expand the series to this degree")
    sp.set_defaults(func=cmd_molien)

    sp = sub.add_parser("secondary", help="secondary invariants")
    common(sp)
    running(sp)
    sp.add_argument("--algorithm", choices=ALGORITHMS[:4], default="improved")
    sp.add_argument("--show-invariants", action="store_true")
    sp.set_defaults(func=cmd_secondary)

    sp = sub.add_parser("irred", help="irreducible secondary invariants only")
    common(sp)
    running(sp)
    sp.add_argument("--show-invariants", action="store_true")
    sp.set_defaults(func=cmd_irred)

    sp = sub.add_parser("verify", help="check the primary invariants")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="run a built-in example and compare with published counts")
    common(sp, file=False)
    running(sp)
    sp.add_argument("--algorithm", choices=ALGORITHMS, default="improved")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Emitter(args.out)
    try:
        return args.func(args, out)
    except (InvringError, LookupError) as exc:
        code = getattr(exc, "exit_code", 1)
        if isinstance(exc, LookupError):
            code = 2
        out.record("error", exit_code=code, type=type(exc).__name__, message=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        out.record("error", exit_code=2, type=type(exc).__name__, message=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
