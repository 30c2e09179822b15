"""Command-line interface.

Exit status: 0 on success, 1 when the mathematics says no (no relation, a
failed check), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List

from . import walks
from .errors import (
    BadDimension,
    DimensionCapExceeded,
    DimensionMismatch,
    LetterOutOfRange,
    NoRelation,
    NotInDomain,
    PolySyntaxError,
    VerificationFailure,
)
from .polyring import Poly, format_latex
from .relations import EntrySet, classify_subsets, find_relation, relation_report
from .render import FORMATS, render
from .symmatrix import (
    SYMBOLIC_DIM_CAP,
    PowerTable,
    cayley_hamilton_check,
    charpoly,
    entry_recurrence_check,
    from_rows,
    generic_matrix,
    offdiag_window_check,
    tridiagonal_matrix,
)


class UsageError(Exception):
    pass


def _position(text: str):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j but got {text!r}") from None
    return i, j


def _load_spec(path: str):
    with open(path) as fh:
        data = json.load(fh)
    rows = data["matrix"] if isinstance(data, dict) else data
    try:
        return from_rows([[str(x) for x in row] for row in rows])
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad matrix in {path}: {e}") from None


def _matrix(args):
    if getattr(args, "spec", None):
        A = _load_spec(args.spec)
        if args.n is not None and args.n != A.n:
            raise UsageError(f"--n {args.n} disagrees with the {A.n}x{A.n} matrix in {args.spec}")
        return A
    if args.n is None:
        raise UsageError("either --n or --spec is required")
    if getattr(args, "tridiagonal", False):
        return tridiagonal_matrix(args.n)
    return generic_matrix(args.n, cap=args.dim_cap)


def _horizon(args, n: int) -> int:
    return args.max_m if args.max_m is not None else 2 * n + 4


def _emit(text: str):
    sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_relation(args) -> int:
    A = _matrix(args)
    S = EntrySet(A.n, tuple(args.entries))
    try:
        rel = find_relation(
            A, S, horizon=_horizon(args, A.n), best_effort=args.best_effort, dim_cap=args.dim_cap
        )
    except NoRelation as e:
        print(f"no relation: {e}", file=sys.stderr)
        return 1
    _emit(render(rel, args.format))
    return 0


def cmd_report(args) -> int:
    entries = relation_report(
        args.n,
        args.off_diagonal,
        include_transpose=args.group == "perm+transpose",
        horizon=_horizon(args, args.n),
        dim_cap=args.dim_cap,
        workers=args.workers,
    )
    if args.format == "json":
        docs = [
            {
                "orbit": e.orbit.to_dict(),
                "relation": e.relation.to_dict() if e.relation else None,
                "error": e.error,
            }
            for e in entries
        ]
        _emit(json.dumps(docs, indent=2))
    else:
        blocks = []
        for k, e in enumerate(entries, 1):
            rep = ", ".join(f"({i},{j})" for i, j in e.orbit.representative)
            head = f"% case {k}: {rep}; orbit size {e.orbit.orbit_size}"
            if args.format == "text":
                head = "#" + head[1:]
            body = render(e.relation, args.format) if e.relation else f"error: {e.error}"
            blocks.append(f"{head}\n{body}")
        _emit("\n\n".join(blocks))
    return 0 if all(e.relation for e in entries) else 1


def cmd_charpoly(args) -> int:
    A = _matrix(args)
    cp = charpoly(A)
    if args.format == "json":
        _emit(json.dumps({"n": A.n, "p": [str(x) for x in cp.p]}, indent=2))
    elif args.format == "latex":
        _emit("\n".join(f"p_{{{k}}} = {format_latex(x) if isinstance(x, Poly) else x}" for k, x in enumerate(cp.p)))
    else:
        _emit("\n".join(f"p_{k} = {x}" for k, x in enumerate(cp.p)))
    return 0


def cmd_ch_check(args) -> int:
    A = _matrix(args)
    horizon = _horizon(args, A.n)
    table = PowerTable(A)
    results = {
        "cayley_hamilton": cayley_hamilton_check(A, table),
        "offdiag_window": offdiag_window_check(A, table),
        "entry_recurrence": all(
            entry_recurrence_check(A, i, j, horizon, table)
            for i in range(1, A.n + 1)
            for j in range(1, A.n + 1)
        ),
    }
    if args.format == "json":
        _emit(json.dumps(results, indent=2))
    else:
        _emit("\n".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in results.items()))
    return 0 if all(results.values()) else 1


def cmd_classify(args) -> int:
    classes = classify_subsets(args.n, args.size, args.off_diagonal, args.group == "perm+transpose")
    if args.format == "json":
        _emit(json.dumps([c.to_dict() for c in classes], indent=2))
    else:
        lines = [
            " ".join(f"({i},{j})" for i, j in c.representative) + f"  orbit {c.orbit_size}"
            for c in classes
        ]
        lines.append(f"{len(classes)} classes under {classes[0].group if classes else args.group}")
        _emit("\n".join(lines))
    return 0


def cmd_eq2(args) -> int:
    ok = walks.eq2_check(args.n, _horizon(args, args.n))
    _emit("pass" if ok else "FAIL")
    return 0 if ok else 1


def cmd_words(args) -> int:
    words = walks.enumerate_words(args.n, args.m, args.i, args.j)
    if args.count:
        _emit(str(len(words)))
    elif args.format == "json":
        _emit(json.dumps([walks.format_word(w, args.n) for w in words]))
    else:
        _emit("\n".join(walks.format_word(w, args.n) for w in words))
    return 0


def cmd_bijection_apply(args) -> int:
    w = walks.parse_word(args.word)
    fn = walks.apply_T if args.op == "T" else walks.apply_U
    _emit(walks.format_word(fn(args.i, w, args.n), args.n))
    return 0


def cmd_bijection_check(args) -> int:
    rep = walks.check_bijection(args.n, args.m, args.i)
    _emit(json.dumps(rep.to_dict(), indent=2))
    if not rep.passed:
        print(f"failure: {rep.reason}", file=sys.stderr)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerrel",
        description="Linear relations among entries of matrix powers, and tridiagonal walk bijections.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, func, help_text, *, fmt=True, fmt_default="text"):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        if fmt:
            p.add_argument("--format", choices=FORMATS, default=fmt_default)
        return p

    def matrix_flags(p, tridiagonal=True):
        p.add_argument("--n", type=int)
        p.add_argument("--spec", metavar="FILE", help="JSON file with a concrete matrix (row-major rational strings)")
        if tridiagonal:
            p.add_argument("--tridiagonal", action="store_true", help="use the generic tridiagonal matrix")
        p.add_argument("--dim-cap", type=int, default=SYMBOLIC_DIM_CAP)
        p.add_argument("--max-m", type=int)

    p = add("relation", cmd_relation, "discover and verify the relation for an entry set")
    matrix_flags(p)
    p.add_argument("--entries", type=_position, nargs="+", required=True, metavar="I,J")
    p.add_argument("--best-effort", action="store_true", help="allow entry-set sizes without a guarantee")

    p = add("report", cmd_report, "relations for every inequivalent entry set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--off-diagonal", action="store_true")
    p.add_argument("--group", choices=("perm", "perm+transpose"), default="perm")
    p.add_argument("--dim-cap", type=int, default=SYMBOLIC_DIM_CAP)
    p.add_argument("--max-m", type=int)
    p.add_argument("--workers", type=int, default=1)

    p = add("charpoly", cmd_charpoly, "coefficients of det(A - xI)")
    matrix_flags(p)

    p = add("ch-check", cmd_ch_check, "Cayley-Hamilton, off-diagonal window and entry recurrence checks")
    matrix_flags(p)

    p = add("classify", cmd_classify, "orbit classes of entry sets", fmt_default="json")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--off-diagonal", action="store_true")
    p.add_argument("--group", choices=("perm", "perm+transpose"), default="perm")

    p = add("tridiag-eq2", cmd_eq2, "check a[i,i+1](A^m)[i+1,i] = a[i+1,i](A^m)[i,i+1] symbolically", fmt=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-m", type=int)

    p = add("words", cmd_words, "list the legal (m+1)-letter words from i to j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--count", action="store_true")

    p = add("bijection-apply", cmd_bijection_apply, "apply T_i or U_i to a word", fmt=False)
    p.add_argument("--op", choices=("T", "U"), required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int)

    p = add("bijection-check", cmd_bijection_check, "exhaustively check T_i for one (n, m, i)", fmt=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    return parser


_USAGE_ERRORS = (
    UsageError,
    BadDimension,
    DimensionCapExceeded,
    DimensionMismatch,
    LetterOutOfRange,
    NotInDomain,
    PolySyntaxError,
    OSError,
    KeyError,
    ValueError,
)


def run(argv: List[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except VerificationFailure as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as e:
        print(f"{parser.prog} {args.verb}: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
