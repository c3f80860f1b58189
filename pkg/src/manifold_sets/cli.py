"""Command-line front end.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import homology as hom
from . import lattice, lpoly, surgery

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; keep that but route through run()
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _matrix(text: str) -> list[list[int]]:
    return [_int_list(row) for row in text.split(";") if row.strip()]


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="descriptor JSON file")
    src.add_argument("--builtin", help="built-in manifold, e.g. cpn:3 or mrg:3,6,1")
    p.add_argument("--t", type=_positive, default=1, help="integrality parameter t (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="manifold-sets", description="Exact surgery-theoretic invariants of manifolds.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lpoly", help="Hirzebruch L-polynomial and its denominators")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--t", type=_positive, default=1)
    p.add_argument("--no-cap", action="store_true", help="lift the soft degree cap")

    p = sub.add_parser("divspec", help="distinct divisibilities realised in a full affine sublattice")
    p.add_argument("--offset", type=_int_list, required=True, help="offset vector, e.g. 1,0")
    p.add_argument("--basis", type=_matrix, required=True, help="sublattice basis vectors, e.g. '2,0;0,2'")
    p.add_argument("--count", type=_positive, default=5)

    p = sub.add_parser("lgroup", help="L-groups of Z or Z[Z^r]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_natural, default=None, help="rank of the free abelian group (omit for L_n(Z))")

    for name, text in [
        ("normal", "normal invariants (rational and integral)"),
        ("structure", "structure-set presentation"),
        ("decide", "infinitude verdict for simply connected manifolds"),
        ("validate", "check a descriptor"),
    ]:
        _add_source(sub.add_parser(name, help=text))

    p = sub.add_parser("theorem-b", help="sufficient conditions for an infinite manifold set")
    _add_source(p)
    p.add_argument("--condition", choices=("parallelizable", "lattice-pair", "pd-group"), required=True)
    p.add_argument("--k", type=_positive, help="lattice-pair: degree 4k")
    p.add_argument("--lattice", type=_matrix, help="lattice-pair: basis of L, e.g. '2'")
    p.add_argument("--superlattice", type=_matrix, help="lattice-pair: basis of L', e.g. '1'")
    p.add_argument("--l-vector", type=_int_list, help="lattice-pair: coordinates of L_k(M) (default: descriptor)")
    p.add_argument("--c-matrix", action="append", default=[], metavar="DEG:ROWS",
                   help="pd-group: c_* in degree DEG, e.g. '1:0,0;0,0' (repeatable)")
    p.add_argument("--degree", type=int, help="pd-group: degree of the classifying map")
    p.add_argument("--pd-dimension", type=int, help="pd-group: dimension of the PD group (default: rank for Z^r)")
    eta = p.add_mutually_exclusive_group()
    eta.add_argument("--eta-infinite", dest="eta", action="store_const", const=True, default=None)
    eta.add_argument("--eta-finite", dest="eta", action="store_const", const=False)

    p = sub.add_parser("theorem-c", help="structure set versus polarized manifold set of M_{r,g}")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--g", type=_natural, required=True)
    p.add_argument("--k", type=_positive, default=1)

    p = sub.add_parser("theorem-e", help="bound on the smooth polarized manifold set of M_{r,g}")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--g", type=_natural, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--orders", type=_int_list, help="|Θ_{4k+2}|,|Θ_{4k+1}/bP_{4k+2}|,|Θ_{4k}|")
    return parser


def _load(args) -> hom.ManifoldDescriptor:
    if args.file:
        d = hom.load_descriptor(args.file)
    else:
        name, params = hom.parse_builtin_spec(args.builtin)
        d = hom.builtin(name, params, t=args.t)
    problems = hom.validate(d)
    if problems:
        raise hom.DescriptorError("invalid descriptor:\n" + "\n".join(f"  {p}" for p in problems))
    return d


def _table(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _group_json(g: hom.FgAbelianGroup) -> dict[str, Any]:
    return {**g.to_dict(), "text": str(g)}


# Each handler returns (text, json_document); nothing is printed until the
# whole result exists.


def _cmd_lpoly(args):
    cap = None if args.no_cap else lpoly.DEFAULT_MAX_DEGREE
    poly = lpoly.l_polynomial(args.k, cap)
    dc = lpoly.denominator_constants(args.k, args.t, cap)
    text = f"L_{args.k} = {poly}; c_{args.k} = {dc.c}"
    if args.t != 1:
        text += f"\nr_{args.k} = c_{args.k} * t = {dc.c} * {dc.t} = {dc.r}"
    doc = {
        "k": args.k,
        "polynomial": str(poly),
        "terms": [{"partition": list(part), "coefficient": str(c)} for part, c in poly.terms],
        "c": dc.c,
        "t": dc.t,
        "r": dc.r,
    }
    return text, doc


def _cmd_divspec(args):
    basis = lattice.LatticeBasis.of(args.basis, ambient_rank=len(args.offset))
    S = lattice.AffineSublattice(tuple(args.offset), basis)
    pairs = lattice.spectrum_witnesses(S, args.count)
    index = S.index()
    rows = [(d, ",".join(map(str, w))) for d, w in pairs]
    text = f"index of sublattice: {index}\n" + _table(rows, ("div", "witness"))
    doc = {"index": index, "spectrum": [{"div": d, "witness": list(w)} for d, w in pairs]}
    return text, doc


def _cmd_lgroup(args):
    if args.r is None:
        g = surgery.l_group_z(args.n)
        label = f"L_{args.n}(Z)"
    else:
        g = surgery.l_group_free_abelian(args.n, args.r)
        label = f"L_{args.n}(Z[Z^{args.r}])"
    return f"{label} = {g}", {"n": args.n, "r": args.r, "group": _group_json(g)}


def _cmd_normal(args):
    d = _load(args)
    rational = surgery.normal_invariants_rational(d)
    integral = surgery.normal_invariants_integral(d, d.dimension) if d.flags.ahss_collapses else None
    text = f"{d.name} (n = {d.dimension})\nrational normal invariants:\n"
    text += _table(rational, ("degree", "rank"))
    doc: dict[str, Any] = {"name": d.name, "dimension": d.dimension, "rational": [{"degree": a, "rank": b} for a, b in rational]}
    if integral is None:
        text += "\nintegral: spectral sequence collapse not asserted"
        doc["integral"] = None
    else:
        text += "\nintegral summands of H_n(M; L<1>):\n"
        text += _table([(s.degree, s.coefficient, s.group) for s in integral], ("degree", "coefficient", "group"))
        doc["integral"] = [
            {"degree": s.degree, "coefficient": _group_json(s.coefficient), "group": _group_json(s.group)}
            for s in integral
        ]
    return text, doc


def _cmd_structure(args):
    d = _load(args)
    pres = surgery.structure_set(d)
    text = f"{d.name}: {pres}\nsub (image of L_{{n+1}}): {pres.sub}\nquotient (image of eta): {pres.quotient}"
    doc = {"name": d.name, "sub": _group_json(pres.sub), "quotient": _group_json(pres.quotient),
           "isomorphism": pres.is_isomorphism, "text": str(pres)}
    return text, doc


def _verdict_text(v: surgery.Verdict) -> str:
    lines = [v.summary()]
    for h in v.hypotheses:
        mark = "ok  " if h.holds else "FAIL"
        lines.append(f"  [{mark}] {h.name}" + (f": {h.detail}" if h.detail else ""))
    return "\n".join(lines)


def _cmd_decide(args):
    v = surgery.decide_simply_connected(_load(args))
    return _verdict_text(v), v.to_dict()


def _cmd_validate(args):
    d = _load(args)
    return f"{d.name}: valid", {"name": d.name, "valid": True, "violations": []}


def _cmd_theorem_b(args):
    d = _load(args)
    if args.condition == "parallelizable":
        cond = surgery.Parallelizable()
    elif args.condition == "lattice-pair":
        if args.k is None or args.lattice is None or args.superlattice is None:
            raise UsageError("lattice-pair needs --k, --lattice and --superlattice")
        b = d.betti(4 * args.k)
        cond = surgery.LatticePair(
            lattice.LatticeBasis.of(args.lattice, b),
            lattice.LatticeBasis.of(args.superlattice, b),
            args.k,
            tuple(args.l_vector) if args.l_vector else None,
        )
    else:
        if args.degree is None:
            raise UsageError("pd-group needs --degree")
        mats = {}
        for item in args.c_matrix:
            deg, _, body = item.partition(":")
            try:
                mats[int(deg)] = _matrix(body)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"bad --c-matrix {item!r}") from exc
        cond = surgery.PdGroup(mats, args.degree, args.pd_dimension)
    v = surgery.theorem_b_check(d, cond, args.eta)
    return _verdict_text(v), v.to_dict()


def _flag(value: bool | None) -> str:
    return "true" if value else "NOT-ESTABLISHED"


def _cmd_theorem_c(args):
    s = surgery.theorem_c_summary(args.r, args.g, args.k)
    text = "\n".join([
        f"M_{{{args.r},{args.g}}} (k = {args.k}, dimension {4 * args.k + 2})",
        f"structure set: {s.presentation}",
        f"|S| infinite: {_flag(s.structure_set_infinite)}",
        f"|M_pi| = 1: {_flag(s.polarized_manifold_set_size_one)}",
        _verdict_text(s.structure_verdict),
        _verdict_text(s.polarized_verdict),
    ])
    doc = {
        "r": args.r, "g": args.g, "k": args.k,
        "structure_set_infinite": s.structure_set_infinite if s.structure_set_infinite else "NOT-ESTABLISHED",
        "polarized_manifold_set_size_one": (
            s.polarized_manifold_set_size_one if s.polarized_manifold_set_size_one else "NOT-ESTABLISHED"
        ),
        "presentation": {"sub": _group_json(s.presentation.sub), "quotient": _group_json(s.presentation.quotient),
                         "text": str(s.presentation)},
        "verdicts": [s.structure_verdict.to_dict(), s.polarized_verdict.to_dict()],
    }
    return text, doc


def _cmd_theorem_e(args):
    if args.k >= 2 and (args.orders is None or len(args.orders) != 3):
        raise UsageError("--orders a,b,c is required for k >= 2")
    bound = surgery.theorem_e_bound(args.r, args.g, args.k, args.orders)
    applies = args.r >= 3 and args.g >= args.r + 3
    text = f"bound on |M^s_Diff,pi(M_{{{args.r},{args.g}}})|: {bound}"
    if not applies:
        text += f"\nnote: hypotheses r >= 3 and g >= r + 3 do not hold for r = {args.r}, g = {args.g}"
    return text, {"r": args.r, "g": args.g, "k": args.k, "bound": bound, "hypotheses_hold": applies}


HANDLERS = {
    "lpoly": _cmd_lpoly,
    "divspec": _cmd_divspec,
    "lgroup": _cmd_lgroup,
    "normal": _cmd_normal,
    "structure": _cmd_structure,
    "decide": _cmd_decide,
    "validate": _cmd_validate,
    "theorem-b": _cmd_theorem_b,
    "theorem-c": _cmd_theorem_c,
    "theorem-e": _cmd_theorem_e,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, doc = HANDLERS[args.command](args)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        stdout.write(json.dumps(doc, indent=2, ensure_ascii=False, default=str) + "\n")
    else:
        stdout.write(text + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
