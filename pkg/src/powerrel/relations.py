"""Linear relations  sum_s q_s (A^m)_s = 0  among entries of matrix powers.

Discovery works on the window m = 1..n: every entry sequence of an n x n
matrix satisfies the order-n recurrence coming from its characteristic
polynomial, so a combination vanishing on n consecutive powers vanishes
for every m >= 1.  The kernel of the n x |S| window table is found by
fraction-free elimination, which keeps the entries inside Z[a].
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    NoKernel,
    NoRelation,
    VerificationFailure,
)
from .polyring import Poly, evaluate, exact_div, normalize, parse
from .symmatrix import SYMBOLIC_DIM_CAP, PowerTable, SymMatrix, generic_matrix

Position = Tuple[int, int]


@dataclass(frozen=True)
class EntrySet:
    n: int
    entries: Tuple[Position, ...]

    def __post_init__(self):
        entries = tuple((int(i), int(j)) for i, j in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(set(entries)) != len(entries):
            raise ValueError(f"duplicate positions in {entries}")
        for i, j in entries:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"position ({i},{j}) outside 1..{self.n}")

    @property
    def off_diagonal(self) -> bool:
        return all(i != j for i, j in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Relation:
    entry_set: EntrySet
    coeffs: Tuple[Poly, ...]
    verified_up_to: int = 0

    def __post_init__(self):
        if len(self.coeffs) != len(self.entry_set):
            raise ValueError("one coefficient per entry is required")
        if not any(self.coeffs):
            raise ValueError("a relation needs a nonzero coefficient")

    @property
    def n(self) -> int:
        return self.entry_set.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [[i, j] for i, j in self.entry_set],
            "coefficients": [str(q) for q in self.coeffs],
            "verified_up_to": self.verified_up_to,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Relation":
        es = EntrySet(d["n"], tuple(tuple(e) for e in d["entries"]))
        return cls(es, tuple(parse(q) for q in d["coefficients"]), d.get("verified_up_to", 0))


@dataclass(frozen=True)
class OrbitClass:
    representative: EntrySet
    orbit_size: int
    group: str

    def to_dict(self) -> dict:
        return {
            "representative": [[i, j] for i, j in self.representative],
            "orbit_size": self.orbit_size,
            "group": self.group,
        }


def normalize_vector(q: Sequence[Poly]) -> Tuple[Poly, ...]:
    """Remove the integer content of the whole vector; make the leading
    coefficient of its first nonzero entry positive."""
    g = 0
    for x in q:
        g = math.gcd(g, x.content())
    if g == 0:
        return tuple(q)
    first = next(x for x in q if x)
    if first.leading_term()[1] < 0:
        g = -g
    if g == 1:
        return tuple(q)
    c = Poly.const(g)
    return tuple(exact_div(x, c) for x in q)


def _as_poly_vector(q: Sequence) -> Tuple[Poly, ...]:
    """Scale a rational vector to a primitive integer one, as constant Polys."""
    if all(isinstance(x, Poly) for x in q):
        return tuple(q)
    fr = [Fraction(x) for x in q]
    den = math.lcm(*(x.denominator for x in fr))
    return tuple(Poly.const(int(x * den)) for x in fr)


def power_table(A: SymMatrix, S: EntrySet, M: int, table: PowerTable | None = None) -> List[list]:
    """Rows m = 1..M of the entry values (A^m)_s, s in S."""
    if S.n != A.n:
        raise DimensionMismatch(f"entry set for n={S.n} used with a {A.n}x{A.n} matrix")
    if M < 1:
        raise ValueError("horizon must be >= 1")
    table = table or PowerTable(A)
    return [[table.entry(m, i, j) for i, j in S] for m in range(1, M + 1)]


def _size(x) -> int:
    return len(x) if isinstance(x, Poly) else 1


def _div(a, b):
    if isinstance(a, Poly) or isinstance(b, Poly):
        return exact_div(a, b)
    return a / b


def kernel_vector(V: Sequence[Sequence]) -> tuple:
    """A nonzero q with V q = 0, by Bareiss elimination and back-substitution.

    Entries may be Poly or Fraction.  A zero column short-circuits to the unit
    vector on that column.  Pivots are chosen by fewest terms, then lowest
    column index, then lowest row index.  Raises NoKernel when V has full
    column rank.
    """
    rows = [list(r) for r in V]
    if not rows:
        raise ValueError("empty table")
    C = len(rows[0])
    zero = rows[0][0] * 0
    one = zero + 1
    for c in range(C):
        if all(r[c] == 0 for r in rows):
            return tuple(one if k == c else zero for k in range(C))

    R = len(rows)
    cols = list(range(C))   # cols[k] = original column at permuted position k
    prev = one
    rank = 0
    for k in range(min(R, C)):
        best = None
        for c in range(k, C):
            for r in range(k, R):
                x = rows[r][cols[c]]
                if x != 0:
                    key = (_size(x), cols[c], r)
                    if best is None or key < best[0]:
                        best = (key, r, c)
        if best is None:
            break
        _, pr, pc = best
        rows[k], rows[pr] = rows[pr], rows[k]
        cols[k], cols[pc] = cols[pc], cols[k]
        piv = rows[k][cols[k]]
        for r in range(k + 1, R):
            lead = rows[r][cols[k]]
            row = rows[r]
            for c in range(k + 1, C):
                oc = cols[c]
                row[oc] = _div(piv * row[oc] - lead * rows[k][oc], prev)
            row[cols[k]] = zero
        prev = piv
        rank = k + 1

    if rank == C:
        raise NoKernel(f"table has full column rank {C}")

    free = cols[rank]
    x = {c: zero for c in range(C)}
    x[free] = rows[rank - 1][cols[rank - 1]] if rank else one
    for k in range(rank - 1, -1, -1):
        acc = zero
        for c in range(k + 1, rank + 1):
            oc = cols[c]
            acc = acc + rows[k][oc] * x[oc]
        x[cols[k]] = _div(-acc, rows[k][cols[k]])
    return tuple(x[c] for c in range(C))


def residuals(V: Sequence[Sequence], q: Sequence) -> list:
    return [sum((v * c for v, c in zip(row, q)), row[0] * 0) for row in V]


def _coeff_values(A: SymMatrix, coeffs: Sequence[Poly]) -> list:
    if A.specialized:
        assignment = A.assignment()
        return [evaluate(q, assignment) for q in coeffs]
    return list(coeffs)


def verify_relation(A: SymMatrix, rel: Relation, M: int, table: PowerTable | None = None) -> bool:
    """True iff sum_s q_s (A^m)_s is zero for every m in 1..M.

    On a specialized matrix, the coefficients are evaluated at its entries.
    """
    if rel.n != A.n:
        raise DimensionMismatch(f"relation for n={rel.n} used with n={A.n}")
    table = table or PowerTable(A)
    q = _coeff_values(A, rel.coeffs)
    for m in range(1, M + 1):
        acc = A.zero()
        for c, (i, j) in zip(q, rel.entry_set):
            if c:
                acc = acc + c * table.entry(m, i, j)
        if acc != 0:
            return False
    return True


def guaranteed_size(S: EntrySet) -> bool:
    return len(S) == S.n + 1 or (len(S) == S.n and S.off_diagonal)


def find_relation(
    A: SymMatrix,
    S: EntrySet,
    *,
    horizon: int | None = None,
    best_effort: bool = False,
    table: PowerTable | None = None,
    dim_cap: int | None = SYMBOLIC_DIM_CAP,
) -> Relation:
    """Discover the relation for S on the window m = 1..n and verify it up to
    ``horizon`` (default 2n + 4).

    Sizes other than n + 1, or n with all positions off the diagonal, need
    ``best_effort=True``; those may raise NoRelation.
    """
    n = A.n
    if S.n != n:
        raise DimensionMismatch(f"entry set for n={S.n} used with n={n}")
    if not A.specialized and dim_cap is not None and n > dim_cap:
        raise DimensionCapExceeded(
            f"symbolic relation discovery for n={n} exceeds the cap of {dim_cap}"
        )
    if not guaranteed_size(S) and not best_effort:
        raise ValueError(
            f"|S|={len(S)} is neither n+1 nor n off-diagonal entries; pass best_effort=True"
        )
    horizon = 2 * n + 4 if horizon is None else horizon
    table = table or PowerTable(A)
    V = power_table(A, S, n, table)
    try:
        q = kernel_vector(V)
    except NoKernel as e:
        raise NoRelation(f"no relation among {list(S)} on the window m=1..{n}") from e
    if any(r != 0 for r in residuals(V, q)):
        raise VerificationFailure(f"kernel vector does not annihilate the window for {list(S)}")
    coeffs = normalize_vector(_as_poly_vector(q))
    rel = Relation(S, coeffs, max(horizon, n))
    if not verify_relation(A, rel, rel.verified_up_to, table):
        raise VerificationFailure(f"relation for {list(S)} fails beyond the window")
    return rel


def proportional(p: Sequence[Poly], q: Sequence[Poly]) -> bool:
    """True iff p and q are nonzero and p[s] q[t] == p[t] q[s] for all s, t."""
    if len(p) != len(q) or not any(p) or not any(q):
        return False
    return all(p[s] * q[t] == p[t] * q[s] for s in range(len(p)) for t in range(s + 1, len(p)))


# classification up to relabelling


def _positions(n: int, off_diagonal_only: bool) -> List[Position]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if not (off_diagonal_only and i == j)]


def _group(n: int, include_transpose: bool):
    for perm in permutations(range(1, n + 1)):
        sigma = dict(zip(range(1, n + 1), perm))
        yield lambda ij, s=sigma: (s[ij[0]], s[ij[1]])
        if include_transpose:
            yield lambda ij, s=sigma: (s[ij[1]], s[ij[0]])


def canonical_form(entries: Sequence[Position], n: int, include_transpose: bool = False) -> Tuple[Position, ...]:
    return min(tuple(sorted(g(p) for p in entries)) for g in _group(n, include_transpose))


def classify_subsets(
    n: int, size: int, off_diagonal_only: bool = True, include_transpose: bool = False
) -> List[OrbitClass]:
    """Orbits of size-``size`` position sets under index relabelling (and
    optionally transposition), each given by its lexicographically least
    member, sorted by that representative."""
    if size < 1:
        raise ValueError("size must be >= 1")
    group = list(_group(n, include_transpose))
    counts = {}
    for subset in combinations(_positions(n, off_diagonal_only), size):
        rep = min(tuple(sorted(g(p) for p in subset)) for g in group)
        counts[rep] = counts.get(rep, 0) + 1
    name = "perm+transpose" if include_transpose else "perm"
    return [OrbitClass(EntrySet(n, rep), counts[rep], name) for rep in sorted(counts)]


@dataclass(frozen=True)
class ReportEntry:
    orbit: OrbitClass
    relation: Optional[Relation] = None
    error: Optional[str] = field(default=None)


def _report_one(args) -> ReportEntry:
    oc, horizon, dim_cap = args
    A = generic_matrix(oc.representative.n, cap=dim_cap)
    try:
        rel = find_relation(A, oc.representative, horizon=horizon, best_effort=True, dim_cap=dim_cap)
    except (NoRelation, VerificationFailure) as e:
        return ReportEntry(oc, None, f"{type(e).__name__}: {e}")
    return ReportEntry(oc, rel)


def relation_report(
    n: int,
    off_diagonal_only: bool = True,
    *,
    include_transpose: bool = False,
    horizon: int | None = None,
    dim_cap: int | None = SYMBOLIC_DIM_CAP,
    workers: int = 1,
) -> List[ReportEntry]:
    """One discovered relation per orbit class of the guaranteed subsets:
    n off-diagonal positions, or n + 1 arbitrary positions."""
    if dim_cap is not None and n > dim_cap:
        raise DimensionCapExceeded(f"symbolic report for n={n} exceeds the cap of {dim_cap}")
    size = n if off_diagonal_only else n + 1
    classes = classify_subsets(n, size, off_diagonal_only, include_transpose)
    jobs = [(oc, horizon, dim_cap) for oc in classes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_report_one, jobs))
    return [_report_one(j) for j in jobs]
