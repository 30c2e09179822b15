"""Text, JSON and LaTeX renderings of relations."""

from __future__ import annotations

import json

from .polyring import Poly, format_latex, format_poly
from .relations import Relation

FORMATS = ("text", "json", "latex")


def _signed_parts(rel: Relation, entry, coeff_fmt, times, wrap):
    parts = []
    for q, (i, j) in zip(rel.coeffs, rel.entry_set):
        if not q:
            continue
        e = entry(i, j)
        if len(q) == 1:
            (mono, c), = q.items()
            mag = Poly({mono: abs(c)})
            if not mono:
                body = e if abs(c) == 1 else f"{abs(c)}{times}{e}"
            else:
                body = f"{coeff_fmt(mag)}{times}{e}"
            parts.append((c < 0, body))
        else:
            parts.append((False, f"{wrap(coeff_fmt(q))}{times}{e}"))
    out = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out) + " = 0"


def render_text(rel: Relation) -> str:
    return _signed_parts(
        rel, lambda i, j: f"(A^m)[{i},{j}]", format_poly, "*", lambda s: f"({s})"
    )


def render_latex(rel: Relation) -> str:
    return _signed_parts(
        rel,
        lambda i, j: f"(A^m)_{{{i},{j}}}",
        format_latex,
        r" \cdot ",
        lambda s: rf"\left({s}\right)",
    )


def render_json(rel: Relation) -> str:
    return json.dumps(rel.to_dict(), indent=2)


def render(rel: Relation, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(rel)
    if fmt == "json":
        return render_json(rel)
    if fmt == "latex":
        return render_latex(rel)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse_json(text: str) -> Relation:
    return Relation.from_dict(json.loads(text))
