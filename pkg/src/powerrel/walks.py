"""Walk words for tridiagonal matrices and the bijection T_i / U_i.

A word is a tuple of letters in 1..n; it is legal when neighbouring letters
differ by at most one.  The (i, j) entry of A^m for a generic tridiagonal A
is the sum of the weights of the legal (m+1)-letter words from i to j,
where a word's weight is the product of a[w_t, w_{t+1}] over its steps.

For i' = i + 1, ``apply_T(i, .)`` maps the words i i' ... i (length m+2) to
the words i' i ... i' of the same length and weight; ``apply_U`` inverts it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import IllegalWord, LetterOutOfRange, NotInDomain
from .polyring import ZERO, Poly, mono_mul
from .symmatrix import PowerTable, tridiagonal_matrix

Word = Tuple[int, ...]


def parse_word(text: str) -> Word:
    """Digit string ("12321") or comma-separated integers ("10,11,10")."""
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    if "," in text:
        letters = tuple(int(t) for t in text.split(","))
    elif text.isdigit():
        letters = tuple(int(ch) for ch in text)
    else:
        raise ValueError(f"cannot parse word {text!r}")
    if min(letters) < 1:
        raise LetterOutOfRange(f"letters start at 1: {text!r}")
    return letters


def format_word(w: Sequence[int], n: int | None = None) -> str:
    big = (n is not None and n >= 10) or any(x >= 10 for x in w)
    return ",".join(map(str, w)) if big else "".join(map(str, w))


def _check_range(w: Sequence[int], n: int | None):
    for x in w:
        if x < 1 or (n is not None and x > n):
            raise LetterOutOfRange(f"letter {x} outside 1..{n}")


def is_legal(w: Sequence[int], n: int | None = None) -> bool:
    _check_range(w, n)
    return all(abs(a - b) <= 1 for a, b in zip(w, w[1:]))


def enumerate_words(n: int, m: int, i: int, j: int) -> List[Word]:
    """All legal (m+1)-letter words from i to j, in lexicographic order."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise LetterOutOfRange(f"endpoints ({i},{j}) outside 1..{n}")
    if m < 0:
        raise ValueError("m must be >= 0")
    out: List[Word] = []
    word = [i]

    def extend(left: int):
        cur = word[-1]
        if left == 0:
            if cur == j:
                out.append(tuple(word))
            return
        for nxt in (cur - 1, cur, cur + 1):
            # prune branches that can no longer reach j
            if 1 <= nxt <= n and abs(nxt - j) <= left - 1:
                word.append(nxt)
                extend(left - 1)
                word.pop()

    if abs(i - j) <= m:
        extend(m)
    return out


def weight(w: Sequence[int]) -> Poly:
    if not is_legal(w):
        raise IllegalWord(f"{format_word(w)} is not a legal word")
    mono = ()
    for a, b in zip(w, w[1:]):
        mono = mono_mul(mono, (((a, b), 1),))
    return Poly({mono: 1})


def weight_enumerator(n: int, m: int, i: int, j: int) -> Poly:
    total = ZERO
    for w in enumerate_words(n, m, i, j):
        total = total + weight(w)
    return total


def prefixed_words(n: int, m: int, first: int, second: int) -> List[Word]:
    """The (m+2)-letter legal words first, second, ..., first."""
    return [(first,) + w for w in enumerate_words(n, m, second, first)]


def _check_shape(i: int, w: Sequence[int], start: int, second: int, n: int | None):
    w = tuple(w)
    if n is not None and i + 1 > n:
        raise NotInDomain(f"i={i} needs i+1 <= n={n}")
    if i < 1:
        raise NotInDomain(f"i={i} must be >= 1")
    try:
        legal = is_legal(w, n)
    except LetterOutOfRange as e:
        raise NotInDomain(str(e)) from None
    if len(w) < 3 or not legal or w[0] != start or w[1] != second or w[-1] != start:
        raise NotInDomain(
            f"{format_word(w)} is not a legal word of the form {start} {second} ... {start}"
        )
    return w


def apply_T(i: int, w: Sequence[int], n: int | None = None) -> Word:
    """Image of w = i i' ... i under T_i, split at the first i' i step."""
    ip = i + 1
    w = _check_shape(i, w, i, ip, n)
    L = len(w)
    # 0-based position p of the first i' followed by i; p = k - 1 in 1-based terms
    p = next((p for p in range(1, L - 1) if w[p] == ip and w[p + 1] == i), None)
    if p is None:
        raise NotInDomain(f"{format_word(w)} has no step {ip} {i}")
    if p == 1:
        if L == 3:
            return (ip, i, ip)
        u = w[3:L - 1]
        return (ip, i) + u + (i, ip)
    if p == L - 2:
        u = w[2:L - 2]
        return (ip, i, ip) + u + (ip,)
    u, v = w[2:p], w[p + 2:L - 1]
    return (ip, i) + v + (i, ip) + u + (ip,)


def apply_U(i: int, w: Sequence[int], n: int | None = None) -> Word:
    """Image of w = i' i ... i' under U_i, split at the last i i' step."""
    ip = i + 1
    w = _check_shape(i, w, ip, i, n)
    L = len(w)
    p = next((p for p in range(L - 2, 0, -1) if w[p] == i and w[p + 1] == ip), None)
    if p is None:
        raise NotInDomain(f"{format_word(w)} has no step {i} {ip}")
    if p == L - 2:
        if L == 3:
            return (i, ip, i)
        u = w[2:L - 2]
        return (i, ip, i) + u + (i,)
    if p == 1:
        u = w[3:L - 1]
        return (i, ip) + u + (ip, i)
    v, u = w[2:p], w[p + 2:L - 1]
    return (i, ip) + u + (ip, i) + v + (i,)


@dataclass
class BijectionReport:
    n: int
    m: int
    i: int
    domain_size: int
    codomain_size: int
    passed: bool
    counterexample: Optional[str] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        del d["reason"]
        return d


def check_bijection(n: int, m: int, i: int) -> BijectionReport:
    """Exhaustively check T_i between i i'...i and i' i...i' words of length m+2."""
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got i={i}, n={n}")
    if m < 1:
        raise ValueError("m must be >= 1")
    ip = i + 1
    domain = prefixed_words(n, m, i, ip)
    codomain = prefixed_words(n, m, ip, i)
    codomain_set = set(codomain)
    report = BijectionReport(n, m, i, len(domain), len(codomain), True)

    def fail(word, reason):
        report.passed = False
        report.counterexample = format_word(word, n)
        report.reason = reason
        return report

    images = set()
    for w in domain:
        try:
            t = apply_T(i, w, n)
        except NotInDomain as e:
            return fail(w, f"T raised: {e}")
        if t not in codomain_set:
            return fail(w, f"image {format_word(t, n)} outside the codomain")
        if t in images:
            return fail(w, "T is not injective")
        images.add(t)
        if weight(t) != weight(w):
            return fail(w, "weight not preserved")
        if apply_U(i, t, n) != w:
            return fail(w, "U(T(w)) != w")
    for v in codomain:
        try:
            back = apply_U(i, v, n)
        except NotInDomain as e:
            return fail(v, f"U raised: {e}")
        if apply_T(i, back, n) != v:
            return fail(v, "T(U(v)) != v")
    if len(domain) != len(codomain):
        return fail(domain[0] if domain else (i,), "set sizes differ")
    return report


def eq2_sides(n: int, m: int, i: int, table: PowerTable | None = None) -> Tuple[Poly, Poly]:
    """a[i,i+1] (A^m)_{i+1,i} and a[i+1,i] (A^m)_{i,i+1} for generic tridiagonal A."""
    table = table or PowerTable(tridiagonal_matrix(n))
    left = Poly.var(i, i + 1) * table.entry(m, i + 1, i)
    right = Poly.var(i + 1, i) * table.entry(m, i, i + 1)
    return left, right


def eq2_check(n: int, max_m: int) -> bool:
    """The anti-diagonal identity for all 1 <= i < n and 1 <= m <= max_m."""
    table = PowerTable(tridiagonal_matrix(n))
    for m in range(1, max_m + 1):
        for i in range(1, n):
            left, right = eq2_sides(n, m, i, table)
            if left != right:
                return False
    return True
