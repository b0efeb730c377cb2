"""Cochain spaces, unshuffles, the coboundary, and cohomology dimensions.

A degree-n cochain is a multilinear map on n arguments from a source
space X to a target space Y, antisymmetric in its first n-1 arguments
(the last slot is distinguished).  Values are stored on canonical keys:
a strictly increasing (n-1)-tuple of basis indices plus a free last
index, in lexicographic order.  Degree-1 cochains are plain linear maps;
degree-2 cochains are arbitrary bilinear maps.

Everything here is graded in a single degree per slot, so the Koszul
sign of a permutation reduces to its parity; a graded extension would
have to generalize `enumerate_unshuffles`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .algebra import PreLieAlgebra, Report, Representation
from .errors import ShapeError
from .linalg import (
    Matrix,
    add_vec,
    basis_vec,
    is_zero_vec,
    neg_vec,
    scale_vec,
    sub_vec,
    zero_vec,
)


@dataclass(frozen=True)
class Unshuffle:
    """A block-monotone permutation with its parity sign.

    ``perm`` maps positions to values, 0-based: position k holds value
    perm[k].  Within each block of the pattern the values increase.
    """

    pattern: tuple
    perm: tuple
    sign: int


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _unshuffles(pattern: tuple):
    """All unshuffles of the pattern, lexicographic by permutation word.

    Any negative block size yields the empty list; the compositions in
    `brackets` rely on that convention for boundary arities.
    """
    if any(b < 0 for b in pattern):
        return ()
    n = sum(pattern)
    results = []

    def rec(remaining, blocks, word):
        if not blocks:
            results.append(tuple(word))
            return
        b = blocks[0]
        for chosen in combinations(remaining, b):
            rest = [x for x in remaining if x not in chosen]
            rec(rest, blocks[1:], word + list(chosen))

    rec(list(range(n)), list(pattern), [])
    results.sort()
    return tuple(Unshuffle(pattern, perm, _perm_sign(perm)) for perm in results)


def enumerate_unshuffles(pattern) -> list:
    """Public enumeration; block sizes must be nonnegative."""
    pattern = tuple(pattern)
    if any(b < 0 for b in pattern):
        raise ValueError(f"negative block size in {pattern}")
    return list(_unshuffles(pattern))


@lru_cache(maxsize=None)
def cochain_keys(dim: int, degree: int):
    """Canonical key order: increasing (degree-1)-tuples, then the free index."""
    keys = []
    for fb in combinations(range(dim), degree - 1):
        for last in range(dim):
            keys.append((fb, last))
    return tuple(keys)


@lru_cache(maxsize=None)
def _key_index(dim: int, degree: int):
    return {key: pos for pos, key in enumerate(cochain_keys(dim, degree))}


def _sort_with_sign(idxs):
    """Sort a tuple of indices, returning (sign, sorted) or None on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and idxs[j - 1] == idxs[j]:
            return None
    return sign, tuple(idxs)


class Cochain:
    """A multilinear map, antisymmetric in its first degree-1 slots."""

    __slots__ = ("field", "degree", "dim_source", "dim_target", "values")

    def __init__(self, field, degree: int, dim_source: int, dim_target: int, values):
        if degree < 1:
            raise ShapeError("cochain degree must be >= 1")
        keys = cochain_keys(dim_source, degree)
        values = tuple(tuple(field(x) for x in v) for v in values)
        if len(values) != len(keys):
            raise ShapeError(f"expected {len(keys)} value vectors, got {len(values)}")
        if any(len(v) != dim_target for v in values):
            raise ShapeError("value vector has wrong length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "dim_source", dim_source)
        object.__setattr__(self, "dim_target", dim_target)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    @classmethod
    def zero(cls, field, degree: int, dim_source: int, dim_target: int):
        n = len(cochain_keys(dim_source, degree))
        return cls(field, degree, dim_source, dim_target,
                   [zero_vec(field, dim_target)] * n)

    @classmethod
    def from_entries(cls, field, degree, dim_source, dim_target, entries):
        """Cochain from {(first_block, last): vector}; omitted keys are zero."""
        vals = {k: zero_vec(field, dim_target) for k in cochain_keys(dim_source, degree)}
        for (fb, last), v in entries.items():
            fb = tuple(fb)
            if (fb, last) not in vals:
                raise ShapeError(f"key {(fb, last)} is not canonical")
            vals[(fb, last)] = tuple(field(x) for x in v)
        return cls(field, degree, dim_source, dim_target,
                   [vals[k] for k in cochain_keys(dim_source, degree)])

    @classmethod
    def from_matrix(cls, m: Matrix):
        """Degree-1 cochain from the matrix of a linear map."""
        return cls(m.field, 1, m.cols, m.rows,
                   [m.column(j) for j in range(m.cols)])

    def as_matrix(self) -> Matrix:
        if self.degree != 1:
            raise ShapeError("only degree-1 cochains are linear maps")
        return Matrix.from_columns(self.field, list(self.values), self.dim_target)

    def keys(self):
        return cochain_keys(self.dim_source, self.degree)

    def value_at(self, fb, last) -> tuple:
        idx = _key_index(self.dim_source, self.degree)[(tuple(fb), last)]
        return self.values[idx]

    def eval_basis(self, idxs) -> tuple:
        """Evaluate at a tuple of basis indices (not necessarily increasing)."""
        if len(idxs) != self.degree:
            raise ShapeError(f"expected {self.degree} arguments, got {len(idxs)}")
        fb, last = tuple(idxs[:-1]), idxs[-1]
        norm = _sort_with_sign(fb)
        if norm is None:
            return zero_vec(self.field, self.dim_target)
        sign, fb_sorted = norm
        v = self.value_at(fb_sorted, last)
        return v if sign == 1 else neg_vec(v)

    def eval(self, args) -> tuple:
        """Multilinear evaluation; each argument is a basis index or a vector."""
        if len(args) != self.degree:
            raise ShapeError(f"expected {self.degree} arguments, got {len(args)}")
        for pos, a in enumerate(args):
            if not isinstance(a, int):
                out = zero_vec(self.field, self.dim_target)
                for i, coeff in enumerate(a):
                    if coeff:
                        sub = list(args)
                        sub[pos] = i
                        out = add_vec(out, scale_vec(coeff, self.eval(sub)))
                return out
        return self.eval_basis(args)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain(self.field, self.degree, self.dim_source, self.dim_target,
                       [add_vec(a, b) for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain(self.field, self.degree, self.dim_source, self.dim_target,
                       [sub_vec(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "Cochain":
        return Cochain(self.field, self.degree, self.dim_source, self.dim_target,
                       [neg_vec(v) for v in self.values])

    def scale(self, c) -> "Cochain":
        c = self.field(c)
        return Cochain(self.field, self.degree, self.dim_source, self.dim_target,
                       [scale_vec(c, v) for v in self.values])

    def _check_compatible(self, other: "Cochain"):
        if (self.degree, self.dim_source, self.dim_target) != \
                (other.degree, other.dim_source, other.dim_target):
            raise ShapeError("cochain shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.dim_source == other.dim_source
                and self.dim_target == other.dim_target and self.values == other.values)

    def __hash__(self):
        return hash((self.degree, self.dim_source, self.dim_target, self.values))

    def is_zero(self) -> bool:
        return all(is_zero_vec(v) for v in self.values)

    def __repr__(self):
        nz = sum(1 for v in self.values if not is_zero_vec(v))
        return (f"Cochain(degree={self.degree}, {self.dim_source}->{self.dim_target}, "
                f"{nz} nonzero keys)")


def cochain_space_dim(dim_source: int, dim_target: int, degree: int) -> int:
    return len(cochain_keys(dim_source, degree)) * dim_target


def coboundary_at(a: PreLieAlgebra, rep: Representation, f: Cochain, args) -> tuple:
    """The coboundary formula evaluated at an arbitrary basis-index tuple.

    For f of degree n and arguments x_1, ..., x_{n+1}:

      sum_i (-1)^{i+1} L_{x_i} f(..., x_i omitted, ..., x_{n+1})
    + sum_i (-1)^{i+1} R_{x_{n+1}} f(..., x_i omitted, ..., x_n, x_i)
    - sum_i (-1)^{i+1} f(..., x_i omitted, ..., x_n, x_i . x_{n+1})
    + sum_{i<j<=n} (-1)^{i+j} f([x_i, x_j], ..., x_i, x_j omitted, ..., x_{n+1})

    with i running over 1..n.  The result is antisymmetric in the first
    n arguments, which is what makes `coboundary` well defined.
    """
    n = f.degree
    if len(args) != n + 1:
        raise ShapeError(f"expected {n + 1} arguments")
    field = a.field
    out = zero_vec(field, f.dim_target)
    last = args[-1]
    head = list(args[:-1])
    for i in range(n):
        sign = 1 if i % 2 == 0 else -1
        omitted = head[:i] + head[i + 1:]
        fv = f.eval_basis(tuple(omitted) + (last,))
        term = rep.act_L(a.basis(head[i]), fv)
        out = add_vec(out, term if sign == 1 else neg_vec(term))

        fv2 = f.eval_basis(tuple(omitted) + (head[i],))
        term = rep.act_R(a.basis(last), fv2)
        out = add_vec(out, term if sign == 1 else neg_vec(term))

        prod = a.mul_basis(head[i], last)
        term = f.eval(list(omitted) + [prod])
        out = sub_vec(out, term) if sign == 1 else add_vec(out, term)
    for i in range(n):
        for j in range(i + 1, n):
            sign = 1 if (i + j) % 2 == 0 else -1  # (-1)^{(i+1)+(j+1)} = (-1)^{i+j}
            br = a.bracket(a.basis(head[i]), a.basis(head[j]))
            rest = [head[k] for k in range(n) if k not in (i, j)]
            term = f.eval([br] + rest + [last])
            out = add_vec(out, term) if sign == 1 else sub_vec(out, term)
    return out


def coboundary(a: PreLieAlgebra, rep: Representation, f: Cochain) -> Cochain:
    """The coboundary of f: a degree-(n+1) cochain into the same module."""
    if f.dim_source != a.dim or f.dim_target != rep.dim_v:
        raise ShapeError("cochain does not match the algebra and module")
    degree = f.degree + 1
    values = [coboundary_at(a, rep, f, fb + (last,))
              for fb, last in cochain_keys(a.dim, degree)]
    return Cochain(a.field, degree, a.dim, rep.dim_v, values)


def check_two_cocycle(a: PreLieAlgebra, rep: Representation, H: Cochain) -> Report:
    """Is the bilinear map H a 2-cocycle?

    Two independent routes must agree: the closed-form condition

        L_x H(y,z) - L_y H(x,z) + R_z H(y,x) - R_z H(x,y)
          - H(y, x.z) + H(x, y.z) - H([x,y], z) = 0

    on every basis triple, and vanishing of the coboundary of H.
    """
    if H.degree != 2 or H.dim_source != a.dim or H.dim_target != rep.dim_v:
        raise ShapeError("H must be a bilinear map from the algebra to the module")
    field = a.field
    violations = []
    for x in range(a.dim):
        for y in range(a.dim):
            for z in range(a.dim):
                ex, ey = a.basis(x), a.basis(y)
                total = rep.act_L(ex, H.eval_basis((y, z)))
                total = sub_vec(total, rep.act_L(ey, H.eval_basis((x, z))))
                total = add_vec(total, rep.act_R(a.basis(z), H.eval_basis((y, x))))
                total = sub_vec(total, rep.act_R(a.basis(z), H.eval_basis((x, y))))
                total = sub_vec(total, H.eval([y, a.mul_basis(x, z)]))
                total = add_vec(total, H.eval([x, a.mul_basis(y, z)]))
                total = sub_vec(total, H.eval([a.bracket(ex, ey), z]))
                if not is_zero_vec(total):
                    violations.append(((x, y, z), total))
    direct = Report(not violations, violations)
    via_coboundary = coboundary(a, rep, H).is_zero()
    if direct.ok != via_coboundary:
        raise AssertionError(
            "internal inconsistency: closed-form 2-cocycle condition and the "
            "coboundary disagree")
    return direct


def coboundary_matrix(a: PreLieAlgebra, rep: Representation, degree: int) -> Matrix:
    """Matrix of the coboundary on canonical cochain bases.

    Columns follow the degree-n basis (key-major, then target coordinate),
    rows the degree-(n+1) basis, both in canonical lexicographic order.
    """
    field = a.field
    keys_n = cochain_keys(a.dim, degree)
    m = rep.dim_v
    columns = []
    for key_pos in range(len(keys_n)):
        for t in range(m):
            entries = {keys_n[key_pos]: basis_vec(field, m, t)}
            basis_cochain = Cochain.from_entries(field, degree, a.dim, m, entries)
            image = coboundary(a, rep, basis_cochain)
            col = [x for v in image.values for x in v]
            columns.append(col)
    rows = cochain_space_dim(a.dim, m, degree + 1)
    return Matrix.from_columns(field, columns, rows)


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_z: int
    dim_b: int
    dim_h: int


def cohomology(a: PreLieAlgebra, rep: Representation, degree: int) -> CohomologyReport:
    """Exact dimensions of cocycles, coboundaries, and cohomology.

    dim B at degree 1 is 0 by convention: the complex starts at degree 1,
    so H^1 = Z^1.  The composite of consecutive differentials is verified
    to vanish before the dimensions are reported.
    """
    if degree < 1:
        raise ShapeError("degree must be >= 1")
    d_n = coboundary_matrix(a, rep, degree)
    dim_cn = cochain_space_dim(a.dim, rep.dim_v, degree)
    rank_n = d_n.rank()
    dim_z = dim_cn - rank_n
    if degree == 1:
        dim_b = 0
    else:
        d_prev = coboundary_matrix(a, rep, degree - 1)
        if not (d_n * d_prev).is_zero():
            raise AssertionError("coboundary does not square to zero")
        dim_b = d_prev.rank()
    return CohomologyReport(degree, dim_z, dim_b, dim_z - dim_b)
