"""gramcert command line.

Exit codes: 0 certified or affirmed, 1 refuted, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Sequence

from ..certify import (
    ALL_VANISH,
    INCONCLUSIVE,
    NEVER_PSD,
    NON_UNIQUE,
    NONCOERCIVE_CONFIRMED,
    NOT_PSD,
    UNIQUE,
    BoardError,
    GameBoard,
    NotPsdError,
    NotPsdOnNullError,
    forced_delta_analysis,
    game_search,
    game_verify,
    gamematrix_board,
    perturb_check,
    replay_quartic,
    replay_sextic,
    stored_certificate,
    uniqueness_pipeline,
    witness_verify,
)
from ..certify.game import DEFAULT_BUDGET, parse_minor
from ..certify.obstruction import PRECONDITION_FAILED
from ..forms import FormSyntaxError, SosExpression, build_named, read_form_file
from ..gramlin import change_basis, change_count, gram_from_sos, null_space, psd_check_exact, rep_to_form
from ..scalarfield import parse_gauss
from ..symtensor import BasisOrder, MultiIndex, dim_sym, enumerate_basis
from . import reproduce as rep
from .serialize import (
    coords_to_json,
    dumps,
    load_json,
    matrix_from_json,
    matrix_rows,
    matrix_to_json,
    plain_matrix_from_json,
    schema,
    vector,
)

OK, REFUTED, UNDECIDED, BAD_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(BAD_INPUT, f"{self.prog}: error: {message}\n")


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _color(text: str, good: bool | None) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty() or good is None:
        return text
    return f"\033[{32 if good else 31}m{text}\033[0m"


class Out:
    def __init__(self, as_json: bool):
        self.json = as_json

    def emit(self, doc: dict, lines: Sequence[str]):
        if self.json:
            print(dumps(doc))
        else:
            for line in lines:
                print(line)


# -- input helpers ----------------------------------------------------------


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = _frac(v)
    return out


def _read_forms(path: str, params=None) -> SosExpression:
    try:
        forms = read_form_file(path, params)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    if not forms:
        raise InputError(f"{path}: no forms found")
    return SosExpression.unit(forms)


def _order_from_flag(text: str | None, n: int, p: int) -> BasisOrder:
    """Graded-lex order, or the given labels first followed by the rest."""
    base = enumerate_basis(n, p)
    if not text:
        return base
    try:
        head = [MultiIndex.parse(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise InputError(f"bad --order: {exc}") from exc
    for a in head:
        if a.n != n or a.order != p:
            raise InputError(f"--order label {a.label()} is not in S^{p}(R^{n})")
    if len(set(head)) != len(head):
        raise InputError("--order repeats a label")
    rest = [a for a in base if a not in set(head)]
    return BasisOrder(n, p, tuple(head + rest))


def _read_matrix(path: str):
    doc = load_json(path)
    return matrix_from_json(doc)


def _read_plain(path: str):
    return plain_matrix_from_json(load_json(path))


def _gram_input(args):
    if getattr(args, "matrix", None):
        return _read_matrix(args.matrix)
    if getattr(args, "forms", None):
        e = _read_forms(args.forms, _parse_params(getattr(args, "param", None)))
    else:
        obj = build_named(args.named, **_parse_params(args.param))
        e = obj if isinstance(obj, SosExpression) else None
        if e is None:
            raise InputError(f"{args.named} is a single form, not a sum of squares")
    order = _order_from_flag(getattr(args, "order", None), e.n, e.p)
    return gram_from_sos(e, order)


def _point(text: str) -> list:
    try:
        return [parse_gauss(s) for s in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad point {text!r}: {exc}") from exc


# -- subcommands ------------------------------------------------------------


def cmd_dims(args, out: Out) -> int:
    d = dim_sym(args.n, args.p)
    out.emit({"schema": schema("dims"), "n": args.n, "p": args.p, "dim": d}, [str(d)])
    return OK


def cmd_basis(args, out: Out) -> int:
    order = _order_from_flag(args.order, args.n, args.p)
    labels = order.labels()
    out.emit({"schema": schema("basis"), "n": args.n, "p": args.p, "basis_order": labels},
             [f"{i + 1}: E{s}" for i, s in enumerate(labels)])
    return OK


def cmd_changes(args, out: Out) -> int:
    if args.count:
        c = change_count(args.n, args.p)
        out.emit({"schema": schema("changes"), "n": args.n, "p": args.p, "count": c}, [str(c)])
        return OK
    order = _order_from_flag(args.order, args.n, args.p)
    basis = change_basis(args.n, args.p, order)
    labels = [str(x) for x in basis.labels]
    out.emit({"schema": schema("changes"), "n": args.n, "p": args.p, "count": len(labels), "changes": labels},
             [f"Delta_{i + 1} = {s}" for i, s in enumerate(labels)])
    return OK


def cmd_gram(args, out: Out) -> int:
    g = _gram_input(args)
    lines = ["basis: " + " ".join(g.order.labels())]
    lines += [" ".join(str(x) for x in row) for row in g.rows()]
    out.emit(matrix_to_json(g), lines)
    return OK


def cmd_form_of(args, out: Out) -> int:
    g = _read_matrix(args.matrix)
    f = rep_to_form(g)
    out.emit({"schema": schema("form"), "form": f.to_str(), "n": f.n, "degree": f.degree}, [f.to_str()])
    return OK


def cmd_nullspace(args, out: Out) -> int:
    g = _read_matrix(args.matrix)
    null = null_space(g)
    out.emit({"schema": schema("nullspace"), "dimension": len(null), "basis": [coords_to_json(t) for t in null]},
             [f"dimension {len(null)}"] + [str(t) for t in null])
    return OK


def cmd_check_psd(args, out: Out) -> int:
    rows = _read_plain(args.matrix)
    cert = psd_check_exact(rows)
    verdict = ("PD" if cert.positive_definite else "PSD") if cert.accepted else NOT_PSD
    doc = {"schema": schema("psd"), "verdict": verdict, "rank": cert.rank if cert.accepted else None,
           "ldl_verified": cert.verify(rows)}
    if cert.accepted:
        doc.update(perm=list(cert.perm), L=matrix_rows(cert.L), D=vector(cert.D))
        lines = [_color(verdict, True), f"rank {cert.rank}"]
    else:
        doc["refutation"] = vector(cert.refutation)
        lines = [_color(verdict, False), "z = (" + ", ".join(str(x) for x in cert.refutation) + ") gives z^T M z < 0"]
    out.emit(doc, lines)
    return OK if cert.accepted else REFUTED


def cmd_unique(args, out: Out) -> int:
    g = _gram_input(args)
    try:
        r = uniqueness_pipeline(g)
    except NotPsdError as exc:
        out.emit({"schema": schema("uniqueness"), "verdict": NOT_PSD, "refutation": vector(exc.refutation or [])},
                 [f"{NOT_PSD}: {exc}"])
        return BAD_INPUT
    doc = {
        "schema": schema("uniqueness"),
        "verdict": r.verdict,
        "null_dimension": len(r.null_basis),
        "equivalent_quadratics": r.quadratic_strings(),
        "notes": r.notes,
    }
    lines = [_color(r.verdict, r.verdict == UNIQUE if r.verdict != INCONCLUSIVE else None),
             f"null space dimension {len(r.null_basis)}"]
    lines += [f"  {q} = 0" for q in r.quadratic_strings()]
    if r.witness is not None and r.verdict == NON_UNIQUE:
        doc["witness"] = matrix_rows(r.witness.rows())
        doc["epsilon"] = str(r.epsilon)
        lines.append(f"G + eps*Delta is psd for eps = {r.epsilon}")
    lines += r.notes
    out.emit(doc, lines)
    return {UNIQUE: OK, NON_UNIQUE: REFUTED}.get(r.verdict, UNDECIDED)


def cmd_perturb(args, out: Out) -> int:
    a, b = _read_plain(args.a), _read_plain(args.b)
    if len(a) != len(b):
        raise InputError("A and B differ in size")
    try:
        r = perturb_check(a, b)
    except NotPsdOnNullError as exc:
        out.emit({"schema": schema("perturb"), "verdict": "NOT_PSD_ON_NULL", "witness": vector(exc.witness)},
                 [f"NOT_PSD_ON_NULL: {exc}"])
        return BAD_INPUT
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    doc = {"schema": schema("perturb"), "verdict": r.verdict}
    lines = [_color(r.verdict, r.verdict != NEVER_PSD)]
    if r.verdict == NEVER_PSD:
        doc["kernel_violation"] = vector(r.kernel_violation)
        lines.append("z in Null(A) with B z outside Null(A): " + ", ".join(str(x) for x in r.kernel_violation))
    else:
        doc["epsilon"] = str(r.epsilon)
        lines.append(f"A + eps*B is psd for eps = {r.epsilon}")
    out.emit(doc, lines)
    return REFUTED if r.verdict == NEVER_PSD else OK


def cmd_witness(args, out: Out) -> int:
    e = _read_forms(args.forms, _parse_params(args.param))
    z = _point(args.point)
    if len(z) != e.n:
        raise InputError(f"point has {len(z)} coordinates, forms have {e.n} variables")
    try:
        w = witness_verify(e, z)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    doc = {"schema": schema("witness"), "verdict": w.verdict, "index": w.index, "values": vector(w.values)}
    lines = [_color(str(w), w.verdict == ALL_VANISH)]
    if args.forced:
        forced = forced_delta_analysis(enumerate_basis(e.n, e.p), z)
        doc["forced_changes"] = [f.label for f in forced]
        lines += [f"forced: Delta_{f.index} = {f.label}" for f in forced]
    out.emit(doc, lines)
    return OK if w.verdict == ALL_VANISH else REFUTED


def cmd_obstruct(args, out: Out) -> int:
    if args.script == "noncoercive-quartic":
        r = replay_quartic(args.gamma)
    else:
        if args.gamma is not None:
            raise InputError("--gamma only applies to noncoercive-quartic")
        r = replay_sextic()
    steps = [
        {"step": s.label, "derived": s.derived, "claim": s.claim, "ok": s.ok,
         "polynomial": s.polynomial.to_str() if s.polynomial is not None else None}
        for s in r.transcript
    ]
    doc = {
        "schema": schema("obstruction"),
        "script": args.script,
        "verdict": str(r),
        "preconditions": [{"check": c, "ok": ok, "detail": d} for c, ok, d in r.preconditions],
        "transcript": steps,
        "substitutions": {k: v.to_str() for k, v in sorted(r.substitutions.items())},
    }
    lines = [f"{'ok ' if ok else 'BAD'} {c}" for c, ok, _ in r.preconditions]
    for s in r.transcript:
        poly = f" {s.polynomial.to_str()}" if s.polynomial is not None else ""
        lines.append(f"{s.label}:{poly} => {s.derived} [{'ok' if s.ok else 'FAILED'}]")
    lines.append(_color(str(r), r.verdict == NONCOERCIVE_CONFIRMED))
    out.emit(doc, lines)
    if r.verdict == NONCOERCIVE_CONFIRMED:
        return OK
    return UNDECIDED if r.verdict == PRECONDITION_FAILED else REFUTED


def _read_board(path: str | None) -> GameBoard:
    if not path:
        return gamematrix_board()
    doc = load_json(path)
    try:
        return GameBoard.parse(doc["entries"], doc.get("variables"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: board needs 'entries' (and optionally 'variables')") from exc


def cmd_game(args, out: Out) -> int:
    board = _read_board(args.board)
    if args.search:
        s = game_search(board, args.budget)
        doc = {"schema": schema("game"), "mode": "search", "verdict": s.verdict, "attempts": s.attempts,
               "coefficients": {str(m): str(v) for m, v in s.coefficients.items()}}
        lines = [_color(s.verdict, s.verdict == "FOUND"), f"attempts {s.attempts}"]
        if s.result is not None:
            doc["result"] = s.result.verdict
            doc["quadratic"] = s.result.quadratic.to_str()
            lines.append(f"{s.result.verdict}: {s.result.quadratic.to_str()}")
        out.emit(doc, lines)
        return OK if s.verdict == "FOUND" else UNDECIDED
    if args.certificate:
        raw = load_json(args.certificate)
        if not isinstance(raw, dict):
            raise InputError("certificate must be a JSON object minor -> coefficient")
        coeffs = {parse_minor(k): _frac(str(v)) for k, v in raw.items() if k != "schema"}
    else:
        coeffs = stored_certificate()
    r = game_verify(board, coeffs)
    doc = {"schema": schema("game"), "mode": "verify", "verdict": r.verdict, "quadratic": r.quadratic.to_str(),
           "minors_used": r.used, "matrix": matrix_rows(r.matrix)}
    lines = [_color(r.verdict, r.verdict != NOT_PSD), f"quadratic: {r.quadratic.to_str()}", f"minors used: {r.used}"]
    if r.witness:
        doc["witness"] = {k: str(v) for k, v in r.witness.items()}
        lines.append("negative at " + ", ".join(f"{k} = {v}" for k, v in r.witness.items()))
    out.emit(doc, lines)
    return REFUTED if r.verdict == NOT_PSD else OK


def cmd_reproduce(args, out: Out) -> int:
    if args.all:
        if args.case:
            raise InputError("give a case name or --all, not both")
        names = list(rep.CASES)
    elif not args.case:
        raise InputError("give a case name or --all")
    else:
        names = [args.case]
    params = {"gamma": args.gamma, "rho": args.rho}
    results = []
    for name in names:
        kw = {}
        if name == "cone-quartic" or name == "noncoercive-quartic":
            kw["gamma"] = params["gamma"]
        elif name == "frho-column":
            kw["rho"] = params["rho"]
        elif name == "game-n4":
            kw["search"] = args.search
        try:
            results.append(rep.run_case(name, **kw))
        except rep.CaseInputError as exc:
            raise InputError(str(exc)) from exc
    if out.json:
        docs = [r.to_json() for r in results]
        print(dumps(docs[0] if len(docs) == 1 and not args.all else {"schema": schema("reproduction-set"), "cases": docs}))
    else:
        for r in results:
            print(f"{r.case}: {_color('OK' if r.ok else 'MISMATCH', r.ok)}")
            for k, v in r.summary.items():
                print(f"  {k}: {_short(v)}")
            for d in r.diff():
                print(f"  - expected {d['key']} = {d['expected']!r}")
                print(f"  + got      {d['key']} = {d['got']!r}")
            for note in r.notes:
                print(f"  note: {note}")
    return OK if all(r.ok for r in results) else REFUTED


def _short(v):
    if isinstance(v, list) and len(v) > 8 and not any(isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return v


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gramcert", description="Exact Gram-matrix certificates for sums of squares.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit a JSON document")
        sp.set_defaults(func=fn)
        return sp

    def np_flags(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)

    def gram_source(sp, allow_matrix):
        g = sp.add_mutually_exclusive_group(required=True)
        if allow_matrix:
            g.add_argument("--matrix", help="matrix JSON file")
        g.add_argument("--forms", help="file of forms whose squares are summed")
        g.add_argument("--named", help="built-in sum of squares, e.g. f_rho or cone_quartic")
        sp.add_argument("--param", action="append", metavar="NAME=VALUE", help="form parameter")
        sp.add_argument("--order", help="basis labels to place first, e.g. 011000,200000")

    sp = add("dims", cmd_dims, "dimension of S^p(R^n)")
    np_flags(sp)
    sp = add("basis", cmd_basis, "list the basis E_alpha")
    np_flags(sp)
    sp.add_argument("--order")
    sp = add("changes", cmd_changes, "list or count the change basis")
    np_flags(sp)
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--order")
    gram_source(add("gram", cmd_gram, "Gram matrix of a sum of squares"), False)
    add("form-of", cmd_form_of, "form represented by a matrix").add_argument("--matrix", required=True)
    add("nullspace", cmd_nullspace, "null space of a representation matrix").add_argument("--matrix", required=True)
    add("check-psd", cmd_check_psd, "exact psd test with certificate").add_argument("--matrix", required=True)
    gram_source(add("unique", cmd_unique, "decide Gram-matrix uniqueness"), True)
    sp = add("perturb", cmd_perturb, "is A + eps*B psd for small eps")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp = add("witness", cmd_witness, "evaluate squared forms at a complex point")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--point", required=True, help='e.g. "1,i,0,0"')
    sp.add_argument("--param", action="append", metavar="NAME=VALUE")
    sp.add_argument("--forced", action="store_true", help="also list forced changes")
    sp = add("obstruct", cmd_obstruct, "replay a noncoercivity obstruction")
    sp.add_argument("script", choices=["noncoercive-quartic", "noncoercive-sextic"])
    sp.add_argument("--gamma", type=_frac, help="numeric gamma; symbolic if omitted")
    sp = add("game", cmd_game, "minor-combination game on a board")
    sp.add_argument("--board", help="board JSON {variables, entries}")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--stored", action="store_true", help="verify the stored certificate (default)")
    g.add_argument("--certificate", help="JSON object minor -> coefficient")
    g.add_argument("--search", action="store_true")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = add("reproduce", cmd_reproduce, "rerun a named result against its stored summary")
    sp.add_argument("case", nargs="?", help=", ".join(rep.CASES))
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--gamma", type=_frac)
    sp.add_argument("--rho", type=_frac)
    sp.add_argument("--search", action="store_true", help="game-n4: also run the search")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(args.json)
    try:
        return args.func(args, out)
    except (InputError, FormSyntaxError, BoardError) as exc:
        print(f"gramcert: error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (OSError, ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"gramcert: error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
