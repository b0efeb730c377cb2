"""Exhaustive search for operators satisfying a registered predicate.

Candidates are dense matrices (or vectors) whose free entries range over
a finite scalar list; enumeration is lexicographic in row-major entry
order, so results are reproducible and independent of how the space is
split across workers.  Over a prime field the hot loop runs on plain
integer residues with early exit at the first failing basis pair; every
solution found that way is re-verified through the ordinary checkers
before it is returned.

The predicate registry maps an id to the bundle sections it needs and the
shape of its unknown, so new checkers become searchable without touching
the enumeration code.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import PreLieAlgebra, Representation
from .cochain import Cochain
from .deformation import check_nijenhuis_element
from .errors import BudgetExceededError, ShapeError
from .linalg import Matrix
from .nsprelie import check_nijenhuis
from .reynolds import check_d_reynolds, check_rcw_reynolds, check_weighted_reynolds
from .scalars import PrimeField

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class SearchSpec:
    """A search problem: predicate id, bundle data, shape, and domain.

    ``shape`` is (rows, cols); vectors use cols = 1.  ``fixed`` pins
    entries by 0-based (row, col) position.  ``domain`` is the list of
    scalars each free entry ranges over, in enumeration order.
    """

    predicate: str
    bundle: dict
    shape: tuple
    domain: tuple
    fixed: dict = dc_field(default_factory=dict)
    budget: int = DEFAULT_BUDGET

    def free_positions(self):
        rows, cols = self.shape
        return [(i, j) for i in range(rows) for j in range(cols)
                if (i, j) not in self.fixed]

    def count(self) -> int:
        return len(self.domain) ** len(self.free_positions())


def _candidate(spec: SearchSpec, index: int, field) -> Matrix:
    rows, cols = spec.shape
    free = spec.free_positions()
    base = len(spec.domain)
    entries = [[None] * cols for _ in range(rows)]
    for (i, j), v in spec.fixed.items():
        entries[i][j] = field(v)
    digits = []
    for _ in free:
        digits.append(spec.domain[index % base])
        index //= base
    # most significant digit first: reverse so lexicographic order matches
    for (i, j), v in zip(free, reversed(digits)):
        entries[i][j] = field(v)
    return Matrix(field, entries)


# ---------------------------------------------------------------------------
# predicate registry


def _rcw_predicate(bundle):
    g, rep, H = bundle["algebra"], bundle["rep"], bundle["cocycle"]

    def full(K: Matrix) -> bool:
        return check_rcw_reynolds(g, rep, H, K).ok

    fast = _compile_rcw_fast(g, rep, H)
    return full, fast


def _weighted_predicate(bundle):
    g, lam = bundle["algebra"], bundle["weight"]

    def full(K: Matrix) -> bool:
        return check_weighted_reynolds(g, K, lam).ok

    return full, None


def _nijenhuis_predicate(bundle):
    g = bundle["algebra"]

    def full(N: Matrix) -> bool:
        return check_nijenhuis(g, N).ok

    return full, None


def _d_reynolds_predicate(bundle):
    g, D = bundle["algebra"], bundle["operatorD"]

    def full(K: Matrix) -> bool:
        return check_d_reynolds(g, D, K).ok

    return full, None


def _nijenhuis_element_predicate(bundle):
    data = bundle["data"]

    def full(x: Matrix) -> bool:
        return check_nijenhuis_element(data, x.column(0)).ok

    return full, None


PREDICATES = {
    "rcw-reynolds": _rcw_predicate,
    "weighted-reynolds": _weighted_predicate,
    "nijenhuis": _nijenhuis_predicate,
    "d-reynolds": _d_reynolds_predicate,
    "nijenhuis-element": _nijenhuis_element_predicate,
}


def _compile_rcw_fast(g: PreLieAlgebra, rep: Representation, H: Cochain):
    """Integer-residue evaluator of the Reynolds identity over F_p.

    Returns None unless the bundle lives over a prime field.  Candidates
    are flat row-major residue tuples; evaluation stops at the first
    failing basis pair, in lexicographic pair order.
    """
    field = g.field
    if not isinstance(field, PrimeField):
        return None
    p = field.p
    n, m = g.dim, rep.dim_v
    prod = [[[c.value for c in g.product[i][j]] for j in range(n)] for i in range(n)]
    L = [[[x.value for x in row] for row in M.data] for M in rep.L]
    R = [[[x.value for x in row] for row in M.data] for M in rep.R]
    Htab = [[[c.value for c in H.eval_basis((i, j))] for j in range(n)] for i in range(n)]

    def mulg(x, y):
        out = [0] * n
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        c = x[i] * y[j]
                        row = prod[i][j]
                        for k in range(n):
                            if row[k]:
                                out[k] = (out[k] + c * row[k]) % p
        return out

    def act(mats, x, u):
        out = [0] * m
        for i in range(n):
            if x[i]:
                mat = mats[i]
                for r in range(m):
                    s = 0
                    row = mat[r]
                    for c_ in range(m):
                        if u[c_]:
                            s += row[c_] * u[c_]
                    if s:
                        out[r] = (out[r] + x[i] * s) % p
        return out

    def heval(x, y):
        out = [0] * m
        for i in range(n):
            if x[i]:
                for j in range(n):
                    if y[j]:
                        c = x[i] * y[j]
                        row = Htab[i][j]
                        for k in range(m):
                            if row[k]:
                                out[k] = (out[k] + c * row[k]) % p
        return out

    def passes(flat) -> bool:
        # flat: row-major residues of the n x m matrix K
        cols = [[flat[r * m + u] for r in range(n)] for u in range(m)]
        for u in range(m):
            Ku = cols[u]
            for v in range(m):
                Kv = cols[v]
                lhs = mulg(Ku, Kv)
                ev = [1 if t == v else 0 for t in range(m)]
                eu = [1 if t == u else 0 for t in range(m)]
                inner = act(L, Ku, ev)
                rterm = act(R, Kv, eu)
                hterm = heval(Ku, Kv)
                for t in range(m):
                    inner[t] = (inner[t] + rterm[t] + hterm[t]) % p
                for r in range(n):
                    s = 0
                    for t in range(m):
                        if inner[t]:
                            s += flat[r * m + t] * inner[t]
                    if (lhs[r] - s) % p:
                        return False
        return True

    return passes


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple
    count_checked: int
    count_solutions: int


def exhaustive_search(spec: SearchSpec, field, workers: int = 1) -> SearchResult:
    """Enumerate the whole candidate space and keep verified solutions.

    Solutions come back in lexicographic enumeration order regardless of
    ``workers``: the index space is split into contiguous blocks and the
    per-block results are concatenated in block order.
    """
    if spec.predicate not in PREDICATES:
        raise ShapeError(f"unknown predicate {spec.predicate!r}")
    total = spec.count()
    if total > spec.budget:
        raise BudgetExceededError(
            f"{total} candidates exceed the budget of {spec.budget}")
    full, fast = PREDICATES[spec.predicate](spec.bundle)

    rows, cols = spec.shape
    free = spec.free_positions()
    use_fast = fast is not None and not spec.fixed and len(free) == rows * cols \
        and isinstance(field, PrimeField)

    def run_block(lo: int, hi: int):
        found = []
        if use_fast:
            p = field.p
            base = len(spec.domain)
            dom_vals = [field(v).value for v in spec.domain]
            nfree = len(free)
            for index in range(lo, hi):
                digits = []
                ix = index
                for _ in range(nfree):
                    digits.append(dom_vals[ix % base])
                    ix //= base
                flat = tuple(reversed(digits))
                if fast(flat):
                    found.append(index)
        else:
            for index in range(lo, hi):
                if full(_candidate(spec, index, field)):
                    found.append(index)
        return found

    blocks = []
    step = max(1, -(-total // max(1, workers)))
    lo = 0
    while lo < total:
        hi = min(total, lo + step)
        blocks.append((lo, hi))
        lo = hi
    indices = []
    for lo, hi in blocks:
        indices.extend(run_block(lo, hi))

    solutions = []
    for index in indices:
        K = _candidate(spec, index, field)
        if not full(K):
            raise AssertionError("fast path accepted a candidate the checker rejects")
        solutions.append(K)
    return SearchResult(tuple(solutions), total, len(solutions))


# ---------------------------------------------------------------------------
# the 3-dimensional worked example: predicate vs. its polynomial system

# Polynomial system satisfied by K = (a_rc) on the algebra with
# e3.e3 = e2, regular representation, and weight H(e3,e3) = e3; one group
# of three component equations per unordered basis pair.  Variables are
# 0-based: a[r][c] is the entry in row r, column c.

def _g3_polynomials(a):
    a11, a12, a13 = a[0]
    a21, a22, a23 = a[1]
    a31, a32, a33 = a[2]
    return [
        a31 * a31 * a13,
        a31 * a31 - a31 * a31 * a23,
        a31 * a31 * a33,
        a32 * a32 * a13,
        a32 * a32 - a32 * a32 * a23,
        a32 * a32 * a33,
        a33 * a33 * a13 + 2 * a33 * a12,
        a33 * a33 - (a33 * a33 * a23 + 2 * a33 * a22),
        a33 * a33 * a33 + 2 * a33 * a32,
        a31 * a32 * a13,
        a31 * a32 - a31 * a32 * a23,
        a31 * a32 * a33,
        a31 * a33 * a13 + a31 * a12,
        a31 * a33 - (a31 * a33 * a23 + a31 * a22),
        a31 * a33 * a33 + a31 * a32,
        a32 * a33 * a13 + a32 * a12,
        a32 * a33 - (a32 * a33 * a23 + a32 * a22),
        a32 * a33 * a33 + a32 * a32,
    ]


@dataclass(frozen=True)
class PolynomialSystemReport:
    total: int
    solutions: int
    equivalent: bool
    mismatches: tuple


def verify_polynomial_system(field: PrimeField,
                             budget: int = DEFAULT_BUDGET) -> PolynomialSystemReport:
    """predicate(K) <=> the 18-equation polynomial system, exhaustively.

    Enumerates every 3x3 matrix over F_p on the worked 3-dimensional
    bundle and evaluates both the Reynolds checker and the closed
    polynomial system; any disagreement is returned (none are expected).
    """
    if not isinstance(field, PrimeField):
        raise ShapeError("the polynomial sweep needs a prime field")
    g = PreLieAlgebra.build(field, 3, {(2, 2, 1): 1})
    from .algebra import regular_representation

    rep = regular_representation(g)
    H = Cochain.from_entries(field, 2, 3, 3, {((2,), 2): (0, 0, 1)})
    total = field.p ** 9
    if total > budget:
        raise BudgetExceededError(f"{total} candidates exceed the budget of {budget}")
    fast = _compile_rcw_fast(g, rep, H)
    p = field.p
    mismatches = []
    solutions = 0
    for index in range(total):
        digits = []
        ix = index
        for _ in range(9):
            digits.append(ix % p)
            ix //= p
        flat = tuple(reversed(digits))
        a = [flat[0:3], flat[3:6], flat[6:9]]
        polys_ok = all(v % p == 0 for v in _g3_polynomials(a))
        pred_ok = fast(flat)
        if pred_ok:
            solutions += 1
        if polys_ok != pred_ok:
            mismatches.append((flat, pred_ok, polys_ok))
    return PolynomialSystemReport(total, solutions, not mismatches, tuple(mismatches))
