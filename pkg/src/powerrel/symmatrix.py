"""Square matrices over Poly (symbolic) or Fraction (specialized).

Entries are 1-indexed through ``A[i, j]``.  A matrix is either symbolic,
with every entry a :class:`~powerrel.polyring.Poly`, or specialized, with
every entry a :class:`fractions.Fraction`; the arithmetic below is written
once against the shared ``+ - *`` protocol of the two entry types.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from .errors import BadDimension, DimensionCapExceeded, DimensionMismatch, NotDivisible
from .polyring import ONE, ZERO, Poly, Var, evaluate, exact_div, parse, poly_sum, relabel

SYMBOLIC_DIM_CAP = 4


@dataclass(frozen=True)
class SymMatrix:
    rows: Tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix is not square")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    @property
    def specialized(self) -> bool:
        return not isinstance(self.rows[0][0], Poly)

    def zero(self):
        return Fraction(0) if self.specialized else ZERO

    def one(self):
        return Fraction(1) if self.specialized else ONE

    def assignment(self) -> dict:
        """Map a[i,j] to this matrix's (i,j) entry; only for specialized matrices."""
        return {(i, j): self[i, j] for i in range(1, self.n + 1) for j in range(1, self.n + 1)}

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def to_strings(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)


def from_rows(rows: Sequence[Sequence[object]]) -> SymMatrix:
    """Build a matrix from nested lists.

    Poly entries (or polynomial strings containing ``a[``) make a symbolic
    matrix; ints, Fractions and rational strings make a specialized one.
    """
    flat = [x for r in rows for x in r]
    symbolic = any(isinstance(x, Poly) or (isinstance(x, str) and "a[" in x) for x in flat)
    if symbolic:
        conv = lambda x: x if isinstance(x, Poly) else (parse(x) if isinstance(x, str) else Poly.const(x))
    else:
        conv = Fraction
    return SymMatrix(tuple(tuple(conv(x) for x in r) for r in rows))


def _check_dim(n: int, cap: int | None):
    if n < 2:
        raise BadDimension(f"dimension must be at least 2, got {n}")
    if cap is not None and n > cap:
        raise DimensionCapExceeded(
            f"symbolic dimension {n} exceeds the cap of {cap}; "
            "raise the cap explicitly or use a specialized matrix"
        )


def generic_matrix(n: int, cap: int | None = SYMBOLIC_DIM_CAP) -> SymMatrix:
    _check_dim(n, cap)
    return SymMatrix(tuple(tuple(Poly.var(i, j) for j in range(1, n + 1)) for i in range(1, n + 1)))


def tridiagonal_matrix(n: int) -> SymMatrix:
    _check_dim(n, None)
    return SymMatrix(
        tuple(
            tuple(Poly.var(i, j) if abs(i - j) <= 1 else ZERO for j in range(1, n + 1))
            for i in range(1, n + 1)
        )
    )


def identity_like(A: SymMatrix) -> SymMatrix:
    z, o = A.zero(), A.one()
    return SymMatrix(tuple(tuple(o if i == j else z for j in range(A.n)) for i in range(A.n)))


def specialize(A: SymMatrix, assignment: Mapping[Var, object]) -> SymMatrix:
    return SymMatrix(tuple(tuple(evaluate(x, assignment) for x in row) for row in A.rows))


def random_integer_matrix(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> SymMatrix:
    return SymMatrix(
        tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(n))
    )


def relabel_matrix(A: SymMatrix, sigma: Mapping[int, int]) -> SymMatrix:
    """Apply the variable renaming a[i,j] -> a[sigma i, sigma j] to every entry."""
    return SymMatrix(tuple(tuple(relabel(x, sigma) for x in row) for row in A.rows))


def permute_conjugate(A: SymMatrix, sigma: Mapping[int, int]) -> SymMatrix:
    """Return P^T A P where P is the permutation matrix of sigma: entry (i,j) is A[sigma i, sigma j]."""
    n = A.n
    return SymMatrix(
        tuple(tuple(A[sigma[i], sigma[j]] for j in range(1, n + 1)) for i in range(1, n + 1))
    )


def mat_add(A: SymMatrix, B: SymMatrix) -> SymMatrix:
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n} != {B.n}")
    return SymMatrix(tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A.rows, B.rows)))


def mat_scale(c, A: SymMatrix) -> SymMatrix:
    return SymMatrix(tuple(tuple(c * x for x in row) for row in A.rows))


def mat_mul(A: SymMatrix, B: SymMatrix) -> SymMatrix:
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n} != {B.n}")
    cols = list(zip(*B.rows))
    if A.specialized:
        total = lambda terms: sum(terms, Fraction(0))
    else:
        total = poly_sum
    rows = tuple(
        tuple(total(x * y for x, y in zip(ra, cb) if x and y) for cb in cols) for ra in A.rows
    )
    return SymMatrix(rows)


def trace(A: SymMatrix):
    acc = A.zero()
    for k in range(A.n):
        acc = acc + A.rows[k][k]
    return acc


class PowerTable:
    """Lazily extended list of the powers A^0, A^1, A^2, ...

    Powers are built by repeated multiplication by A and kept, since callers
    walk through consecutive powers.
    """

    def __init__(self, A: SymMatrix):
        self.A = A
        self._powers = [identity_like(A), A]

    def __getitem__(self, m: int) -> SymMatrix:
        if m < 0:
            raise ValueError("negative power")
        while len(self._powers) <= m:
            self._powers.append(mat_mul(self._powers[-1], self.A))
        return self._powers[m]

    def entry(self, m: int, i: int, j: int):
        return self[m][i, j]


def mat_pow(A: SymMatrix, m: int, table: PowerTable | None = None) -> SymMatrix:
    if m < 1:
        raise ValueError("power must be a positive integer")
    if table is None:
        table = PowerTable(A)
    elif table.A is not A:
        raise ValueError("power table belongs to a different matrix")
    return table[m]


@dataclass(frozen=True)
class CharPoly:
    """Coefficients p_0..p_n of det(A - x I) = sum p_k x^k."""

    n: int
    p: tuple

    def __getitem__(self, k):
        return self.p[k]


def _exact_int_div(x, k: int):
    if isinstance(x, Poly):
        if x.content() % k:
            raise NotDivisible(f"Faddeev-LeVerrier step: {k} does not divide {x}")
        return exact_div(x, Poly.const(k))
    return x / k


def charpoly(A: SymMatrix) -> CharPoly:
    """Characteristic polynomial det(A - xI) by the Faddeev-LeVerrier recurrence.

    The recurrence yields c_k with det(xI - A) = sum c_k x^k; we return
    p_k = (-1)^n c_k.
    """
    n = A.n
    ident = identity_like(A)
    c = [None] * (n + 1)
    c[n] = A.one()
    M = SymMatrix(tuple(tuple(A.zero() for _ in range(n)) for _ in range(n)))
    for k in range(1, n + 1):
        M = mat_add(mat_mul(A, M), mat_scale(c[n - k + 1], ident))
        c[n - k] = -_exact_int_div(trace(mat_mul(A, M)), k)
    sign = -1 if n % 2 else 1
    return CharPoly(n, tuple(sign * x for x in c))


def _poly_combination(cp: CharPoly, table: PowerTable, ks) -> SymMatrix:
    A = table.A
    acc = SymMatrix(tuple(tuple(A.zero() for _ in range(A.n)) for _ in range(A.n)))
    for k in ks:
        acc = mat_add(acc, mat_scale(cp.p[k], table[k]))
    return acc


def cayley_hamilton_check(A: SymMatrix, table: PowerTable | None = None) -> bool:
    """True iff sum_{k=0}^n p_k A^k is the zero matrix."""
    table = table or PowerTable(A)
    cp = charpoly(A)
    return _poly_combination(cp, table, range(A.n + 1)).is_zero()


def entry_recurrence_check(A: SymMatrix, i: int, j: int, M: int, table: PowerTable | None = None) -> bool:
    """True iff sum_k p_k (A^{m+k})_{ij} vanishes for m = 1..M."""
    if M < 1:
        raise ValueError("horizon must be >= 1")
    table = table or PowerTable(A)
    cp = charpoly(A)
    for m in range(1, M + 1):
        acc = A.zero()
        for k in range(A.n + 1):
            acc = acc + cp.p[k] * table.entry(m + k, i, j)
        if acc != 0:
            return False
    return True


def offdiag_window_check(A: SymMatrix, table: PowerTable | None = None) -> bool:
    """True iff sum_{k=1}^n p_k A^k == -det(A) I."""
    table = table or PowerTable(A)
    cp = charpoly(A)
    lhs = _poly_combination(cp, table, range(1, A.n + 1))
    rhs = mat_scale(-cp.p[0], identity_like(A))
    return lhs == rhs


def det_cofactor(A: SymMatrix):
    """Determinant by Laplace expansion along the first row; an oracle for small n."""
    def rec(rows, cols):
        if len(rows) == 1:
            return A.rows[rows[0]][cols[0]]
        acc = A.zero()
        r, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            x = A.rows[r][c]
            if x == 0:
                continue
            minor = rec(rest, cols[:k] + cols[k + 1:])
            term = x * minor
            acc = acc + term if k % 2 == 0 else acc - term
        return acc

    idx = list(range(A.n))
    return rec(idx, idx)
