"""Command-line front end.

Exit codes: 0 Equivalent (or success), 1 NotEquivalent, 4 Unknown,
2 unparsable input, 3 violated precondition.

Presentation arguments are paths to JSON files, or ``fixture:<name>`` for
the bundled corpus.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileio
from .errors import ParseError, PresentationError, SurgeqError
from .homology import first_homology, linking_form
from .linking_iso import DEFAULT_BOUND
from .milnor import MilnorCalculator, free_nilpotent_h3_rank
from .presentation import expand_to_integral, presentation_matrix
from .trilinear import DEFAULT_DEPTH, TrilinearForm, equivalent, orbit_invariants
from .verdict import (
    Verdict,
    VerdictStatus,
    compare_integral_2,
    compare_rational_2,
    k_equiv_to_standard,
    lens_compare,
    triple_cup_form,
)

EXIT = {VerdictStatus.EQUIVALENT: 0, VerdictStatus.NOT_EQUIVALENT: 1, VerdictStatus.UNKNOWN: 4}
EXIT_PARSE, EXIT_PRECONDITION = 2, 3


def _load(arg: str):
    if arg.startswith("fixture:"):
        return fileio.fixture(arg.split(":", 1)[1])
    return fileio.load(arg)


def _emit(doc, out=None):
    print(json.dumps(doc, indent=2), file=out or sys.stdout)


def _emit_verdict(verdict, full: bool) -> int:
    doc = verdict.to_json()
    if not full:
        doc["certificate"] = {k: v for k, v in doc["certificate"].items() if k not in ("a", "b")}
    _emit(doc)
    return EXIT[verdict.status]


def cmd_invariants(args) -> int:
    link = _load(args.file)
    V = presentation_matrix(expand_to_integral(link))
    h1 = first_homology(V)
    report = {"h1": h1.to_json(), "linking_form": linking_form(V).to_json()}
    tri = triple_cup_form(link)
    report["trilinear"] = tri.to_json() if tri is not None else None
    if tri is not None and args.certificate:
        report["trilinear_invariants"] = orbit_invariants(tri)
    if link.has_link_data:
        calc = MilnorCalculator(link, args.max_length)
        report["mu_bar"] = {
            "max_length": args.max_length,
            "nonzero": [mu.to_json() for mu in calc.table()],
        }
    _emit(report)
    return 0


def _relation(text: str):
    if text in ("integral2", "rational2"):
        return text, None
    if text.startswith("k="):
        try:
            k = int(text[2:])
        except ValueError:
            k = 0
        if k >= 2:
            return "k", k
    raise argparse.ArgumentTypeError(f"relation must be integral2, rational2 or k=K (K >= 2), not {text!r}")


def cmd_compare(args) -> int:
    kind, k = args.relation
    a, b = _load(args.file_a), _load(args.file_b)
    if kind == "integral2":
        verdict = compare_integral_2(a, b, depth=args.depth, bound=args.bound)
    elif kind == "rational2":
        verdict = compare_rational_2(a, b, depth=args.depth)
    else:
        va, vb = k_equiv_to_standard(a, k), k_equiv_to_standard(b, k)
        verdict = _combine_k(va, vb, a.m, b.m, k)
    return _emit_verdict(verdict, args.certificate)


def _combine_k(va, vb, ma, mb, k):
    """Two manifolds vs each other through the standard model ``#^m S^1 x S^2``."""
    relation = f"k={k}"
    cert = {"case": "via-standard", "a": va.to_json(), "b": vb.to_json()}
    if ma != mb:
        return Verdict(VerdictStatus.NOT_EQUIVALENT, relation, cert, f"H1 ranks differ: {ma} vs {mb}")
    sa, sb = va.status, vb.status
    if sa is VerdictStatus.EQUIVALENT and sb is VerdictStatus.EQUIVALENT:
        return Verdict(VerdictStatus.EQUIVALENT, relation, cert, "both equivalent to the standard model")
    if {sa, sb} == {VerdictStatus.EQUIVALENT, VerdictStatus.NOT_EQUIVALENT}:
        return Verdict(VerdictStatus.NOT_EQUIVALENT, relation, cert,
                       "exactly one side is equivalent to the standard model")
    return Verdict(VerdictStatus.UNKNOWN, relation, cert, "neither side is equivalent to the standard model")


def cmd_expand(args) -> int:
    text = fileio.dumps(expand_to_integral(_load(args.file)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_lens(args) -> int:
    return _emit_verdict(lens_compare(args.n, args.q, args.n2, args.q2), True)


def cmd_milnor(args) -> int:
    link = _load(args.file)
    if args.index:
        index = [int(t) for t in args.index.replace(",", " ").split()]
        calc = MilnorCalculator(link, max(len(index), 2))
        _emit(calc.mu_bar(index).to_json())
        return 0
    calc = MilnorCalculator(link, args.max_length)
    first = calc.first_nonvanishing()
    _emit({
        "max_length": args.max_length,
        "first_nonvanishing_length": None if first is None else len(first.index),
        "first_nonvanishing": None if first is None else first.to_json(),
        "nonzero": [mu.to_json() for mu in calc.table()] if args.certificate else None,
    })
    return 0


def _form(arg: str) -> TrilinearForm:
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {arg}: {exc}") from None
    try:
        return TrilinearForm.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad trilinear form: {exc}") from None


def cmd_orbit(args) -> int:
    f1 = _form(args.form)
    if args.other is None:
        _emit({"form": f1.to_json(), "invariants": orbit_invariants(f1)})
        return 0
    f2 = _form(args.other)
    ans = equivalent(f1, f2, args.depth)
    _emit({
        "status": ans.status.value,
        "witness": [list(r) for r in ans.witness] if ans.witness is not None else None,
        "reason": ans.reason,
        "invariants": [orbit_invariants(f1), orbit_invariants(f2)],
    })
    return {"Yes": 0, "No": 1, "Unknown": 4}[ans.status.value]


def cmd_nilpotent_ranks(args) -> int:
    print(free_nilpotent_h3_rank(args.m, args.k))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surgeq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--certificate", action="store_true", help="print full invariant values")
        return sp

    sp = common(sub.add_parser("invariants", help="H1, linking form, trilinear form, mu-bar table"))
    sp.add_argument("file")
    sp.add_argument("--max-length", type=int, default=4)
    sp.set_defaults(func=cmd_invariants)

    sp = common(sub.add_parser("compare", help="decide a surgery equivalence relation"))
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--relation", type=_relation, default=("integral2", None))
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("expand", help="rewrite rational framings as integral chains")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("lens", help="compare L(n,q) with L(n2,q2)")
    for name in ("n", "q", "n2", "q2"):
        sp.add_argument(name, type=int)
    sp.set_defaults(func=cmd_lens)

    sp = common(sub.add_parser("milnor", help="mu-bar invariants"))
    sp.add_argument("file")
    sp.add_argument("--index", help="e.g. 1,1,2,2")
    sp.add_argument("--max-length", type=int, default=8)
    sp.set_defaults(func=cmd_milnor)

    sp = sub.add_parser("orbit", help="GL_m(Z) orbit invariants / equivalence of trilinear forms")
    sp.add_argument("form", help='JSON literal like {"m": 4, "coeffs": {"1,2,3": 1}} or a file')
    sp.add_argument("other", nargs="?")
    sp.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("nilpotent-ranks", help="rank of H3 of the free nilpotent quotient F/F_k")
    sp.add_argument("m", type=int)
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_nilpotent_ranks)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SurgeqError, ValueError) as exc:
        condition = getattr(exc, "condition", type(exc).__name__)
        print(f"precondition failed [{condition}]: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
