"""Pre-Lie algebras, representations, and their axiom checkers.

A pre-Lie algebra is given by structure constants c[i][j][k] with
e_i . e_j = sum_k c[i][j][k] e_k, and the defining identity is that the
associator (x.y).z - x.(y.z) is symmetric in x, y.  All axioms are checked
on basis tuples; multilinearity extends them to the whole space.

Checkers accept raw tensors and return a `Report` listing every violated
tuple with its residual vector.  Constructors (`PreLieAlgebra.build`,
`Representation.build`) verify by default, so any instance passed around
the package has survived its axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (
    DimensionMismatchError,
    NoUnitError,
    ShapeError,
    UnverifiedError,
)
from .linalg import Matrix, add_vec, basis_vec, is_zero_vec, sub_vec, zero_vec
from .scalars import scalar_to_str


@dataclass
class Report:
    """Outcome of an axiom check: pass/fail plus every violated tuple.

    ``violations`` holds (where, residual) pairs; ``where`` identifies the
    basis tuple (0-based indices) and ``residual`` is the nonzero defect
    vector.  ``parts`` carries named sub-verdicts for multi-condition
    checks.
    """

    ok: bool
    violations: list = dc_field(default_factory=list)
    parts: Optional[dict] = None

    def describe(self) -> str:
        if self.ok:
            return "pass"
        lines = [f"fail ({len(self.violations)} violations)"]
        for where, residual in self.violations[:10]:
            res = "(" + ", ".join(scalar_to_str(x) for x in residual) + ")"
            lines.append(f"  at {where}: residual {res}")
        return "\n".join(lines)


def _combine(parts: dict) -> Report:
    ok = all(r.ok for r in parts.values())
    violations = [v for r in parts.values() for v in r.violations]
    return Report(ok, violations, parts=parts)


def _as_tensor(field, tensor):
    """Validate and coerce a cubical n*n*n structure-constant tensor."""
    n = len(tensor)
    out = []
    for i, plane in enumerate(tensor):
        if len(plane) != n:
            raise ShapeError(f"tensor not cubical at row {i}")
        rows = []
        for j, row in enumerate(plane):
            if len(row) != n:
                raise ShapeError(f"tensor not cubical at ({i},{j})")
            rows.append(tuple(field(x) for x in row))
        out.append(tuple(rows))
    return tuple(out)


def tensor_mul(field, tensor, x, y) -> tuple:
    """Bilinear extension of the structure constants to coordinates."""
    n = len(tensor)
    out = [field.zero] * n
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        for j in range(n):
            yj = y[j]
            if not yj:
                continue
            c = xi * yj
            row = tensor[i][j]
            for k in range(n):
                if row[k]:
                    out[k] = out[k] + c * row[k]
    return tuple(out)


def check_prelie(field, tensor) -> Report:
    """Pre-Lie identity on all basis triples of a raw tensor.

    Passes iff (ei.ej).ek - ei.(ej.ek) = (ej.ei).ek - ej.(ei.ek) for every
    (i, j, k); failures carry the residual vector of the difference.
    """
    t = _as_tensor(field, tensor)
    n = len(t)
    violations = []
    basis = [basis_vec(field, n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):  # symmetric in (i, j); i == j is trivial
            for k in range(n):
                lhs = sub_vec(
                    tensor_mul(field, t, tensor_mul(field, t, basis[i], basis[j]), basis[k]),
                    tensor_mul(field, t, basis[i], tensor_mul(field, t, basis[j], basis[k])),
                )
                rhs = sub_vec(
                    tensor_mul(field, t, tensor_mul(field, t, basis[j], basis[i]), basis[k]),
                    tensor_mul(field, t, basis[j], tensor_mul(field, t, basis[i], basis[k])),
                )
                residual = sub_vec(lhs, rhs)
                if not is_zero_vec(residual):
                    violations.append(((i, j, k), residual))
    return Report(not violations, violations)


class PreLieAlgebra:
    """A finite-dimensional pre-Lie algebra given by structure constants."""

    __slots__ = ("field", "dim", "product", "unit", "labels")

    def __init__(self, field, product, unit=None, labels=None, *, check: bool = True):
        product = _as_tensor(field, product)
        if check:
            report = check_prelie(field, product)
            if not report.ok:
                raise UnverifiedError(
                    "structure constants fail the pre-Lie identity:\n" + report.describe())
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dim", len(product))
        object.__setattr__(self, "product", product)
        if unit is not None:
            unit = tuple(field(x) for x in unit)
            if len(unit) != len(product):
                raise ShapeError("unit vector has wrong length")
            if check:
                for i in range(len(product)):
                    e = basis_vec(field, len(product), i)
                    if tensor_mul(field, product, unit, e) != e or \
                            tensor_mul(field, product, e, unit) != e:
                        raise UnverifiedError("declared unit is not a two-sided unit")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "labels", tuple(labels) if labels else None)

    def __setattr__(self, name, value):
        raise AttributeError("PreLieAlgebra is immutable")

    @classmethod
    def build(cls, field, dim: int, entries, unit=None, labels=None, *, check: bool = True):
        """Algebra from sparse entries {(i, j, k): c} (0-based indices)."""
        z = field.zero
        tensor = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), c in entries.items():
            tensor[i][j][k] = field(c)
        return cls(field, tensor, unit=unit, labels=labels, check=check)

    @classmethod
    def abelian(cls, field, dim: int):
        z = field.zero
        return cls(field, [[[z] * dim for _ in range(dim)] for _ in range(dim)], check=False)

    def __eq__(self, other):
        if not isinstance(other, PreLieAlgebra):
            return NotImplemented
        return (self.field == other.field and self.product == other.product
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.dim, self.product))

    def mul(self, x, y) -> tuple:
        return tensor_mul(self.field, self.product, x, y)

    def mul_basis(self, i: int, j: int) -> tuple:
        return self.product[i][j]

    def basis(self, i: int) -> tuple:
        return basis_vec(self.field, self.dim, i)

    def left_mult(self, x) -> Matrix:
        """Matrix of y -> x.y for a coordinate vector x."""
        cols = [self.mul(x, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mult(self, x) -> Matrix:
        """Matrix of y -> y.x for a coordinate vector x."""
        cols = [self.mul(self.basis(j), x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def bracket(self, x, y) -> tuple:
        return sub_vec(self.mul(x, y), self.mul(y, x))

    @property
    def has_unit(self) -> bool:
        return self.unit is not None

    def require_unit(self) -> tuple:
        if self.unit is None:
            raise NoUnitError("operation requires a unital algebra")
        return self.unit


def subadjacent_lie(a: PreLieAlgebra):
    """Structure constants of the commutator bracket [x,y] = x.y - y.x.

    The output is antisymmetric and satisfies the Jacobi identity whenever
    the input is a verified pre-Lie algebra.
    """
    n = a.dim
    return tuple(
        tuple(sub_vec(a.product[i][j], a.product[j][i]) for j in range(n))
        for i in range(n)
    )


def check_jacobi(field, bracket_tensor) -> Report:
    """Antisymmetry and Jacobi identity for a raw bracket tensor."""
    t = _as_tensor(field, bracket_tensor)
    n = len(t)
    basis = [basis_vec(field, n, i) for i in range(n)]

    def br(x, y):
        return tensor_mul(field, t, x, y)

    violations = []
    for i in range(n):
        for j in range(n):
            r = add_vec(t[i][j], t[j][i])
            if not is_zero_vec(r):
                violations.append((("antisym", i, j), r))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = add_vec(
                    add_vec(br(basis[i], br(basis[j], basis[k])),
                            br(basis[j], br(basis[k], basis[i]))),
                    br(basis[k], br(basis[i], basis[j])),
                )
                if not is_zero_vec(r):
                    violations.append((("jacobi", i, j, k), r))
    return Report(not violations, violations)


def check_representation(algebra: PreLieAlgebra, dim_v: int, L, R) -> Report:
    """Both representation identities on all pairs of algebra basis elements.

    For every x, y in the algebra basis (as m x m matrices acting on V):
        L_x L_y - L_{x.y} = L_y L_x - L_{y.x}
        L_x R_y - R_y L_x = R_{x.y} - R_y R_x
    Violations are reported per (identity, x, y, u) with u a V-basis index.
    """
    n = algebra.dim
    field = algebra.field
    if len(L) != n or len(R) != n:
        raise ShapeError(f"need {n} action matrices, got {len(L)} and {len(R)}")
    for M in list(L) + list(R):
        if M.rows != dim_v or M.cols != dim_v:
            raise ShapeError(f"action matrix is {M.rows}x{M.cols}, expected {dim_v}x{dim_v}")

    def combo(mats, coeffs) -> Matrix:
        out = Matrix.zero(field, dim_v, dim_v)
        for c, M in zip(coeffs, mats):
            if c:
                out = out + M.scale(c)
        return out

    violations = []
    for i in range(n):
        for j in range(n):
            l_ij = combo(L, algebra.mul_basis(i, j))
            l_ji = combo(L, algebra.mul_basis(j, i))
            r_ij = combo(R, algebra.mul_basis(i, j))
            d1 = (L[i] * L[j] - l_ij) - (L[j] * L[i] - l_ji)
            d2 = (L[i] * R[j] - R[j] * L[i]) - (r_ij - R[j] * R[i])
            for u in range(dim_v):
                c1 = d1.column(u)
                if not is_zero_vec(c1):
                    violations.append((("left", i, j, u), c1))
                c2 = d2.column(u)
                if not is_zero_vec(c2):
                    violations.append((("mixed", i, j, u), c2))
    return Report(not violations, violations)


class Representation:
    """Actions (L, R) of a pre-Lie algebra on a module V."""

    __slots__ = ("algebra", "dim_v", "L", "R")

    def __init__(self, algebra: PreLieAlgebra, dim_v: int, L, R, *, check: bool = True):
        L = tuple(L)
        R = tuple(R)
        if check:
            report = check_representation(algebra, dim_v, L, R)
            if not report.ok:
                raise UnverifiedError(
                    "actions fail the representation identities:\n" + report.describe())
        else:
            if len(L) != algebra.dim or len(R) != algebra.dim:
                raise ShapeError("wrong number of action matrices")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "dim_v", dim_v)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "R", R)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.algebra == other.algebra and self.dim_v == other.dim_v
                and self.L == other.L and self.R == other.R)

    @property
    def field(self):
        return self.algebra.field

    def act_L(self, x, u) -> tuple:
        """L_x u for a coordinate vector x in the algebra and u in V."""
        out = zero_vec(self.field, self.dim_v)
        for i, xi in enumerate(x):
            if xi:
                out = add_vec(out, tuple(xi * c for c in self.L[i].apply(u)))
        return out

    def act_R(self, x, u) -> tuple:
        out = zero_vec(self.field, self.dim_v)
        for i, xi in enumerate(x):
            if xi:
                out = add_vec(out, tuple(xi * c for c in self.R[i].apply(u)))
        return out

    def L_of(self, x) -> Matrix:
        out = Matrix.zero(self.field, self.dim_v, self.dim_v)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.L[i].scale(xi)
        return out

    def R_of(self, x) -> Matrix:
        out = Matrix.zero(self.field, self.dim_v, self.dim_v)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.R[i].scale(xi)
        return out


def regular_representation(a: PreLieAlgebra) -> Representation:
    """The algebra acting on itself: L_x u = x.u and R_x u = u.x."""
    L = [a.left_mult(a.basis(i)) for i in range(a.dim)]
    R = [a.right_mult(a.basis(i)) for i in range(a.dim)]
    return Representation(a, a.dim, L, R, check=False)


def zero_representation(a: PreLieAlgebra, dim_v: int) -> Representation:
    z = Matrix.zero(a.field, dim_v, dim_v)
    return Representation(a, dim_v, [z] * a.dim, [z] * a.dim, check=False)


def check_derivation(a: PreLieAlgebra, d: Matrix) -> Report:
    """d(x.y) = d(x).y + x.d(y) on all basis pairs."""
    if d.rows != a.dim or d.cols != a.dim:
        raise ShapeError(f"derivation candidate is {d.rows}x{d.cols}, algebra dim {a.dim}")
    violations = []
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = d.apply(a.mul_basis(i, j))
            rhs = add_vec(a.mul(d.column(i), a.basis(j)), a.mul(a.basis(i), d.column(j)))
            r = sub_vec(lhs, rhs)
            if not is_zero_vec(r):
                violations.append(((i, j), r))
    return Report(not violations, violations)


def check_morphism(a: PreLieAlgebra, b: PreLieAlgebra, f: Matrix) -> Report:
    """f(x.y) = f(x).f(y) on all basis pairs, for f: a -> b."""
    if a.field != b.field:
        raise DimensionMismatchError("algebras live over different fields")
    if f.cols != a.dim or f.rows != b.dim:
        raise ShapeError(f"map is {f.rows}x{f.cols}, expected {b.dim}x{a.dim}")
    violations = []
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = f.apply(a.mul_basis(i, j))
            rhs = b.mul(f.column(i), f.column(j))
            r = sub_vec(lhs, rhs)
            if not is_zero_vec(r):
                violations.append(((i, j), r))
    return Report(not violations, violations)
