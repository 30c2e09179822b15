"""Sparse multivariate polynomials with integer coefficients in the variables a[i,j].

A variable is a pair ``(i, j)`` of 1-based indices; pairs compare row-major.
A monomial is a tuple of ``((i, j), exponent)`` pairs sorted with the
*greatest* variable first and no zero exponents, so that plain tuple
comparison of two monomials of equal degree is lexicographic order with the
greatest variable most significant.  Terms are ordered graded-lex: total
degree first, then that lexicographic comparison.

Polynomials are immutable.  ``Poly`` interoperates with Python ``int`` for
``+``, ``-``, ``*`` and ``==``.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .errors import NotDivisible, PolySyntaxError, UnboundVariable

Var = Tuple[int, int]
Monomial = Tuple[Tuple[Var, int], ...]

ONE_MONO: Monomial = ()


def mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def mono_key(mono: Monomial):
    """Sort key realising the graded-lex order (larger key = greater monomial)."""
    return (mono_degree(mono), mono)


def _heap_key(mono: Monomial):
    # negated graded-lex key so heapq (a min-heap) pops the greatest monomial
    flat = []
    for (i, j), e in mono:
        flat.extend((-i, -j, -e))
    return (-mono_degree(mono), tuple(flat))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    l1, l2 = len(m1), len(m2)
    while i < l1 and j < l2:
        a, b = m1[i], m2[j]
        if a[0] > b[0]:
            out.append(a)
            i += 1
        elif a[0] < b[0]:
            out.append(b)
            j += 1
        else:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
    if i < l1:
        out.extend(m1[i:])
    elif j < l2:
        out.extend(m2[j:])
    return tuple(out)


def _mono_mul_var(m: Monomial, v: Var, e: int) -> Monomial:
    out = []
    placed = False
    for pair in m:
        if not placed:
            w = pair[0]
            if w == v:
                out.append((v, pair[1] + e))
                placed = True
                continue
            if w < v:
                out.append((v, e))
                placed = True
        out.append(pair)
    if not placed:
        out.append((v, e))
    return tuple(out)


def mono_div(m1: Monomial, m2: Monomial):
    """Return m1 / m2, or None when m2 does not divide m1."""
    exps = dict(m1)
    for v, e in m2:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items(), reverse=True))


class Poly:
    """An element of Z[a[i,j]] stored as a map monomial -> nonzero integer."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        if terms:
            self._terms = {m: c for m, c in terms.items() if c}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int]) -> "Poly":
        # terms must already be free of zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, i: int, j: int) -> "Poly":
        return cls._raw({(((i, j), 1),): 1})

    @classmethod
    def const(cls, c: int) -> "Poly":
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral constant {c}")
            c = c.numerator
        return cls._raw({ONE_MONO: int(c)} if c else {})

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._terms.get(ONE_MONO, 0)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: mono_key(t[0]))

    def content(self) -> int:
        return math.gcd(*self._terms.values()) if self._terms else 0

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            if len(mb) == 1:
                # times c * a[v]^e: monomials stay distinct, no merging needed
                ((v, e),) = mb
                return Poly._raw({_mono_mul_var(ma, v, e): ca * cb for ma, ca in a.items()})
        out: Dict[Monomial, int] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Poly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def eval(self, assignment: Mapping[Var, object]):
        return evaluate(self, assignment)


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return Poly.const(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return Poly.const(x.numerator)
    return NotImplemented


ZERO = Poly()
ONE = Poly.const(1)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    """Sum of many polynomials, accumulated in a single dict."""
    out: Dict[Monomial, int] = {}
    get = out.get
    for p in polys:
        for m, c in p.items():
            out[m] = get(m, 0) + c
    return Poly._raw({m: c for m, c in out.items() if c})


def var(i: int, j: int) -> Poly:
    return Poly.var(i, j)


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def exact_div(p: Poly, d: Poly) -> Poly:
    """Return q with q*d == p.

    Raises ZeroDivisionError for d == 0 and NotDivisible when d does not
    divide p in Z[a].
    """
    p, d = _coerce(p), _coerce(d)
    if not d:
        raise ZeroDivisionError("exact_div by the zero polynomial")
    if not p:
        return ZERO
    if len(d) == 1:
        ((dm, dc),) = d.items()
        out = {}
        for m, c in p.items():
            qm = mono_div(m, dm)
            if qm is None or c % dc:
                raise NotDivisible(f"{d} does not divide {p}")
            out[qm] = c // dc
        return Poly._raw(out)

    lm, lc = d.leading_term()
    rest = [(m, c) for m, c in d.items() if m != lm]
    rem = dict(p._terms)
    heap = [(_heap_key(m), m) for m in rem]
    heapq.heapify(heap)
    quot: Dict[Monomial, int] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.pop(m, 0)
        if not c:
            continue
        qm = mono_div(m, lm)
        if qm is None or c % lc:
            raise NotDivisible(f"{d} does not divide {p}")
        qc = c // lc
        quot[qm] = qc
        for dm, dc in rest:
            t = mono_mul(qm, dm)
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * dc
                heapq.heappush(heap, (_heap_key(t), t))
            else:
                rem[t] = old - qc * dc
    return Poly._raw(quot)


def normalize(p: Poly) -> Poly:
    """Divide out the integer content and make the leading coefficient positive."""
    if not p:
        return p
    g = p.content()
    if p.leading_term()[1] < 0:
        g = -g
    if g == 1:
        return p
    return Poly._raw({m: c // g for m, c in p.items()})


def evaluate(p: Poly, assignment: Mapping[Var, object]):
    """Exact value of p at a rational assignment of its variables."""
    total = Fraction(0)
    for mono, c in p.items():
        t = Fraction(c)
        for v, e in mono:
            try:
                x = assignment[v]
            except KeyError:
                raise UnboundVariable(v) from None
            t *= Fraction(x) ** e
        total += t
    return total


def relabel(p: Poly, sigma: Mapping[int, int], transpose: bool = False) -> Poly:
    """Rename a[i,j] -> a[sigma(i), sigma(j)] (or a[sigma(j), sigma(i)])."""
    out = {}
    for mono, c in p.items():
        exps = {}
        for (i, j), e in mono:
            v = (sigma[j], sigma[i]) if transpose else (sigma[i], sigma[j])
            exps[v] = e
        out[tuple(sorted(exps.items(), reverse=True))] = c
    return Poly._raw(out)


# text form


def _format_factor(v: Var, e: int) -> str:
    s = f"a[{v[0]},{v[1]}]"
    return s if e == 1 else f"{s}^{e}"


def _format_monomial(mono: Monomial, c: int) -> str:
    """Format |c| * mono; c only decides whether a coefficient prefix is needed."""
    factors = "*".join(_format_factor(v, e) for v, e in reversed(mono))
    c = abs(c)
    if not factors:
        return str(c)
    return factors if c == 1 else f"{c}*{factors}"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k, (mono, c) in enumerate(p.sorted_terms()):
        body = _format_monomial(mono, c)
        if k == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def format_latex(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k, (mono, c) in enumerate(p.sorted_terms()):
        factors = " ".join(
            f"a_{{{i},{j}}}" + (f"^{{{e}}}" if e > 1 else "")
            for (i, j), e in reversed(mono)
        )
        mag = abs(c)
        if not factors:
            body = str(mag)
        else:
            body = factors if mag == 1 else f"{mag} {factors}"
        if k == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"(a\[\s*(\d+)\s*,\s*(\d+)\s*\])|(\d+)|([-+*^])")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError("unexpected character", text, pos)
        start = pos
        if m.group(1):
            v = (int(m.group(2)), int(m.group(3)))
            if min(v) < 1:
                raise PolySyntaxError("indices start at 1", text, pos)
            tokens.append(("var", v, start))
        elif m.group(4):
            tokens.append(("int", int(m.group(4)), start))
        else:
            tokens.append((m.group(5), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse(text: str) -> Poly:
    """Parse the text form produced by :func:`format_poly`.

    Accepts an optional leading sign and bare integer terms in addition to
    the printed form, e.g. ``"-3*a[1,2]^2 + a[1,1] - 1"``.
    """
    tokens = _tokenize(text)
    k = 0

    def peek():
        return tokens[k]

    def expect_int():
        nonlocal k
        kind, val, pos = tokens[k]
        if kind != "int":
            raise PolySyntaxError("expected integer", text, pos)
        k += 1
        return val

    def parse_factor():
        nonlocal k
        kind, val, pos = tokens[k]
        if kind == "var":
            k += 1
            e = 1
            if peek()[0] == "^":
                k += 1
                e = expect_int()
            return Poly.var(*val) ** e
        if kind == "int":
            k += 1
            return Poly.const(val)
        raise PolySyntaxError("expected a[i,j] or integer", text, pos)

    def parse_term():
        nonlocal k
        t = parse_factor()
        while peek()[0] == "*":
            k += 1
            t = t * parse_factor()
        return t

    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if peek()[0] == "-" else 1
        k += 1
    total = parse_term() * sign
    while peek()[0] in ("+", "-"):
        sign = -1 if peek()[0] == "-" else 1
        k += 1
        total = total + parse_term() * sign
    kind, _, pos = peek()
    if kind != "end":
        raise PolySyntaxError("unexpected token", text, pos)
    return total


def from_terms(terms: Iterable[Tuple[Mapping[Var, int], int]]) -> Poly:
    """Build a Poly from (exponent map, coefficient) pairs."""
    out: Dict[Monomial, int] = {}
    for exps, c in terms:
        mono = tuple(sorted(((v, e) for v, e in exps.items() if e), reverse=True))
        out[mono] = out.get(mono, 0) + c
    return Poly(out)
