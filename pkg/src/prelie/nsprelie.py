"""NS-pre-Lie algebras: three products whose sum is pre-Lie.

An NS-pre-Lie structure on A is a triple of bilinear products
(tri = x|>y, trl = x<|y, circ = x o y) satisfying, with
x*y = x|>y + x<|y + x o y:

    (A1) (x*y)|>z - x|>(y|>z)  =  (y*x)|>z - y|>(x|>z)
    (A2) x|>(y<|z) - (x|>y)<|z  =  y<|(x*z) - (y<|x)<|z
    (A3) (x*y)oz - xo(y*z) + (xoy)<|z - x|>(yoz)
           =  (y*x)oz - yo(x*z) + (yox)<|z - y|>(xoz)

Summing the axioms shows * is pre-Lie (the subadjacent product).  The
three sources of NS-structures implemented here: Nijenhuis operators on a
pre-Lie algebra, cocycle-weighted Reynolds operators (on the module), and
invertible Reynolds operators (transported back to the algebra).  Each
constructor re-verifies its output, and the identity-operator bundle
`reynolds_from_ns` inverts `ns_from_reynolds` exactly.
"""

from __future__ import annotations

from .algebra import (
    PreLieAlgebra,
    Report,
    Representation,
    _as_tensor,
    _combine,
    tensor_mul,
)
from .cochain import Cochain, cochain_keys
from .errors import ShapeError, SingularError, UnverifiedNSError, UnverifiedOperatorError
from .linalg import Matrix, add_vec, basis_vec, is_zero_vec, sub_vec
from .reynolds import ReynoldsData, induced_product


def check_ns_prelie(field, tri, trl, circ) -> Report:
    """Axioms A1, A2, A3 on all basis triples, with per-axiom verdicts."""
    t_tri = _as_tensor(field, tri)
    t_trl = _as_tensor(field, trl)
    t_circ = _as_tensor(field, circ)
    n = len(t_tri)
    if len(t_trl) != n or len(t_circ) != n:
        raise ShapeError("the three tensors must share one dimension")

    def mul(tensor, x, y):
        return tensor_mul(field, tensor, x, y)

    def star(x, y):
        return add_vec(add_vec(mul(t_tri, x, y), mul(t_trl, x, y)), mul(t_circ, x, y))

    basis = [basis_vec(field, n, i) for i in range(n)]
    a1, a2, a3 = [], [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = basis[i], basis[j], basis[k]
                lhs = sub_vec(mul(t_tri, star(x, y), z), mul(t_tri, x, mul(t_tri, y, z)))
                rhs = sub_vec(mul(t_tri, star(y, x), z), mul(t_tri, y, mul(t_tri, x, z)))
                r = sub_vec(lhs, rhs)
                if not is_zero_vec(r):
                    a1.append(((i, j, k), r))

                lhs = sub_vec(mul(t_tri, x, mul(t_trl, y, z)), mul(t_trl, mul(t_tri, x, y), z))
                rhs = sub_vec(mul(t_trl, y, star(x, z)), mul(t_trl, mul(t_trl, y, x), z))
                r = sub_vec(lhs, rhs)
                if not is_zero_vec(r):
                    a2.append(((i, j, k), r))

                lhs = sub_vec(mul(t_circ, star(x, y), z), mul(t_circ, x, star(y, z)))
                lhs = add_vec(lhs, mul(t_trl, mul(t_circ, x, y), z))
                lhs = sub_vec(lhs, mul(t_tri, x, mul(t_circ, y, z)))
                rhs = sub_vec(mul(t_circ, star(y, x), z), mul(t_circ, y, star(x, z)))
                rhs = add_vec(rhs, mul(t_trl, mul(t_circ, y, x), z))
                rhs = sub_vec(rhs, mul(t_tri, y, mul(t_circ, x, z)))
                r = sub_vec(lhs, rhs)
                if not is_zero_vec(r):
                    a3.append(((i, j, k), r))
    return _combine({
        "A1": Report(not a1, a1),
        "A2": Report(not a2, a2),
        "A3": Report(not a3, a3),
    })


class NSPreLie:
    """A verified NS-pre-Lie structure given by three tensors."""

    __slots__ = ("field", "dim", "tri", "trl", "circ")

    def __init__(self, field, tri, trl, circ, *, check: bool = True):
        tri = _as_tensor(field, tri)
        trl = _as_tensor(field, trl)
        circ = _as_tensor(field, circ)
        if check:
            report = check_ns_prelie(field, tri, trl, circ)
            if not report.ok:
                raise UnverifiedNSError(
                    "products fail the NS-pre-Lie axioms:\n" + report.describe())
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dim", len(tri))
        object.__setattr__(self, "tri", tri)
        object.__setattr__(self, "trl", trl)
        object.__setattr__(self, "circ", circ)

    def __setattr__(self, name, value):
        raise AttributeError("NSPreLie is immutable")

    def __eq__(self, other):
        if not isinstance(other, NSPreLie):
            return NotImplemented
        return (self.field == other.field and self.tri == other.tri
                and self.trl == other.trl and self.circ == other.circ)

    def star_tensor(self):
        n = self.dim
        return tuple(
            tuple(add_vec(add_vec(self.tri[i][j], self.trl[i][j]), self.circ[i][j])
                  for j in range(n))
            for i in range(n)
        )


def subadjacent(ns: NSPreLie) -> PreLieAlgebra:
    """The sum of the three products, verified pre-Lie."""
    return PreLieAlgebra(ns.field, ns.star_tensor(), check=True)


def check_nijenhuis(g: PreLieAlgebra, N: Matrix) -> Report:
    """Nx.Ny = N(Nx.y + x.Ny - N(x.y)) on all basis pairs."""
    if N.rows != g.dim or N.cols != g.dim:
        raise ShapeError(f"operator is {N.rows}x{N.cols}, algebra dim {g.dim}")
    violations = []
    for i in range(g.dim):
        for j in range(g.dim):
            Nx, Ny = N.column(i), N.column(j)
            lhs = g.mul(Nx, Ny)
            inner = add_vec(g.mul(Nx, g.basis(j)), g.mul(g.basis(i), Ny))
            inner = sub_vec(inner, N.apply(g.mul_basis(i, j)))
            r = sub_vec(lhs, N.apply(inner))
            if not is_zero_vec(r):
                violations.append(((i, j), r))
    return Report(not violations, violations)


def deformed_product(g: PreLieAlgebra, N: Matrix) -> PreLieAlgebra:
    """The product x ._N y = Nx.y + x.Ny - N(x.y) of a Nijenhuis operator.

    The result is pre-Lie and compatible with the original product: the
    sum of the two products is pre-Lie as well (both re-verified).
    """
    if not check_nijenhuis(g, N).ok:
        raise UnverifiedOperatorError("operator fails the Nijenhuis identity")
    n = g.dim
    tensor = []
    for i in range(n):
        plane = []
        for j in range(n):
            val = add_vec(g.mul(N.column(i), g.basis(j)), g.mul(g.basis(i), N.column(j)))
            val = sub_vec(val, N.apply(g.mul_basis(i, j)))
            plane.append(val)
        tensor.append(plane)
    deformed = PreLieAlgebra(g.field, tensor, check=True)
    total = tuple(
        tuple(add_vec(g.product[i][j], deformed.product[i][j]) for j in range(n))
        for i in range(n)
    )
    PreLieAlgebra(g.field, total, check=True)  # compatibility of the pair
    return deformed


def ns_from_nijenhuis(g: PreLieAlgebra, N: Matrix) -> NSPreLie:
    """x|>y = N(x).y, x<|y = x.N(y), x o y = -N(x.y).

    The subadjacent product of the result equals the deformed product of
    the Nijenhuis operator, entry for entry.
    """
    if not check_nijenhuis(g, N).ok:
        raise UnverifiedOperatorError("operator fails the Nijenhuis identity")
    n = g.dim
    tri, trl, circ = [], [], []
    for i in range(n):
        p1, p2, p3 = [], [], []
        for j in range(n):
            p1.append(g.mul(N.column(i), g.basis(j)))
            p2.append(g.mul(g.basis(i), N.column(j)))
            p3.append(tuple(-c for c in N.apply(g.mul_basis(i, j))))
        tri.append(p1)
        trl.append(p2)
        circ.append(p3)
    ns = NSPreLie(g.field, tri, trl, circ, check=True)
    if ns.star_tensor() != deformed_product(g, N).product:
        raise AssertionError("subadjacent product differs from the deformed product")
    return ns


def ns_from_reynolds(data: ReynoldsData) -> NSPreLie:
    """On the module: u<|v = R_{Kv}u, u|>v = L_{Ku}v, u o v = H(Ku, Kv).

    The subadjacent product coincides with the induced pre-Lie product of
    the operator.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    m = rep.dim_v
    field = g.field
    tri, trl, circ = [], [], []
    for u in range(m):
        p1, p2, p3 = [], [], []
        for v in range(m):
            ev = basis_vec(field, m, v)
            eu = basis_vec(field, m, u)
            p1.append(rep.act_L(K.column(u), ev))
            p2.append(rep.act_R(K.column(v), eu))
            p3.append(H.eval([K.column(u), K.column(v)]))
        tri.append(p1)
        trl.append(p2)
        circ.append(p3)
    ns = NSPreLie(field, tri, trl, circ, check=True)
    if ns.star_tensor() != induced_product(data).product:
        raise AssertionError("subadjacent product differs from the induced product")
    return ns


def reynolds_from_ns(ns: NSPreLie) -> ReynoldsData:
    """Package an NS-structure as an identity-operator Reynolds bundle.

    The subadjacent algebra acts on itself by L(x)y = x|>y and
    R(y)x = x<|y; the circle product is the 2-cocycle; the identity map is
    the operator.  All of that is re-verified by `ReynoldsData.build`.
    """
    field = ns.field
    n = ns.dim
    base = subadjacent(ns)
    L = [Matrix.from_columns(field, [ns.tri[i][j] for j in range(n)], n)
         for i in range(n)]
    R = [Matrix.from_columns(field, [ns.trl[j][i] for j in range(n)], n)
         for i in range(n)]
    rep = Representation(base, n, L, R, check=True)
    H = Cochain(field, 2, n, n,
                [ns.circ[fb[0]][last] for fb, last in cochain_keys(n, 2)])
    K = Matrix.identity(field, n)
    return ReynoldsData.build(base, rep, H, K)


def compatible_ns_from_invertible(data: ReynoldsData) -> NSPreLie:
    """Transport the module NS-structure along an invertible operator:

        x<|y = K(R_y K^{-1} x),  x|>y = K(L_x K^{-1} y),  x o y = K H(x, y).

    The subadjacent product equals the original algebra product (asserted
    entry for entry), so the result is a compatible NS-structure on g.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    if K.rows != K.cols:
        raise ShapeError("operator must be square to be invertible")
    kinv = K.inverse()
    if kinv is None:
        raise SingularError("operator is not invertible")
    n = g.dim
    field = g.field
    tri, trl, circ = [], [], []
    for i in range(n):
        p1, p2, p3 = [], [], []
        for j in range(n):
            p1.append(K.apply(rep.act_L(g.basis(i), kinv.column(j))))
            p2.append(K.apply(rep.act_R(g.basis(j), kinv.column(i))))
            p3.append(K.apply(H.eval_basis((i, j))))
        tri.append(p1)
        trl.append(p2)
        circ.append(p3)
    ns = NSPreLie(field, tri, trl, circ, check=True)
    if ns.star_tensor() != g.product:
        raise AssertionError("transported NS-structure is not compatible with the product")
    return ns
