"""Cocycle-weighted Reynolds operators and the constructions around them.

The central identity: given a pre-Lie algebra g, a representation (V; L, R)
and a 2-cocycle H from g to V, a linear map K: V -> g is a cocycle-weighted
Reynolds operator when

    Ku . Kv = K( L_{Ku} v + R_{Kv} u + H(Ku, Kv) )   for all u, v in V.

With H = 0 this is a relative Rota-Baxter operator.  A scalar-weight
variant acts on the algebra itself:  K(x).K(y) = K(K(x).y + x.K(y) +
weight * K(x).K(y)).

Checkers accept raw maps; constructors demand verified inputs and
re-verify their own outputs, so each construction doubles as a runtime
assertion of the theorem behind it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .algebra import (
    PreLieAlgebra,
    Report,
    Representation,
    check_derivation,
    check_morphism,
    _combine,
)
from .cochain import Cochain, check_two_cocycle, coboundary
from .errors import (
    NotAdmissibleError,
    NotCocycleError,
    ShapeError,
    SingularError,
    UnverifiedCocycleError,
    UnverifiedError,
    UnverifiedOperatorError,
)
from .linalg import Matrix, add_vec, is_zero_vec, sub_vec
from .scalars import scalar_to_str


def _check_operator_shape(g: PreLieAlgebra, rep: Representation, K: Matrix):
    if K.rows != g.dim or K.cols != rep.dim_v:
        raise ShapeError(
            f"operator is {K.rows}x{K.cols}, expected {g.dim}x{rep.dim_v}")


def _require_cocycle(g: PreLieAlgebra, rep: Representation, H: Cochain):
    if H.degree != 2 or H.dim_source != g.dim or H.dim_target != rep.dim_v:
        raise ShapeError("weight must be a bilinear map from the algebra to the module")
    if not check_two_cocycle(g, rep, H).ok:
        raise UnverifiedCocycleError("the weight H is not a 2-cocycle")


def rcw_residual(g: PreLieAlgebra, rep: Representation, H: Cochain, K: Matrix,
                 u: int, v: int) -> tuple:
    """Defect of the Reynolds identity at a pair of V-basis indices."""
    Ku = K.column(u)
    Kv = K.column(v)
    lhs = g.mul(Ku, Kv)
    inner = add_vec(rep.act_L(Ku, _basis(rep, v)), rep.act_R(Kv, _basis(rep, u)))
    inner = add_vec(inner, H.eval([Ku, Kv]))
    return sub_vec(lhs, K.apply(inner))


def _basis(rep: Representation, i: int) -> tuple:
    from .linalg import basis_vec

    return basis_vec(rep.field, rep.dim_v, i)


def check_rcw_reynolds(g: PreLieAlgebra, rep: Representation, H: Cochain,
                       K: Matrix) -> Report:
    """The cocycle-weighted Reynolds identity on all V-basis pairs."""
    _check_operator_shape(g, rep, K)
    _require_cocycle(g, rep, H)
    violations = []
    for u in range(rep.dim_v):
        for v in range(rep.dim_v):
            r = rcw_residual(g, rep, H, K, u, v)
            if not is_zero_vec(r):
                violations.append(((u, v), r))
    return Report(not violations, violations)


@dataclass(frozen=True)
class ReynoldsData:
    """A verified bundle (algebra, representation, 2-cocycle, operator)."""

    algebra: PreLieAlgebra
    rep: Representation
    cocycle: Cochain
    operator: Matrix

    @classmethod
    def build(cls, algebra: PreLieAlgebra, rep: Representation, cocycle: Cochain,
              operator: Matrix) -> "ReynoldsData":
        report = check_rcw_reynolds(algebra, rep, cocycle, operator)
        if not report.ok:
            raise UnverifiedOperatorError(
                "operator fails the Reynolds identity:\n" + report.describe())
        return cls(algebra, rep, cocycle, operator)

    @property
    def field(self):
        return self.algebra.field

    def fingerprint(self) -> str:
        """Stable hash of the defining data, for tagging reports."""
        parts = [str(self.algebra.field), str(self.algebra.dim), str(self.rep.dim_v)]
        for tensor in (self.algebra.product,):
            for plane in tensor:
                for row in plane:
                    parts.extend(scalar_to_str(x) for x in row)
        for mats in (self.rep.L, self.rep.R):
            for m in mats:
                for row in m.data:
                    parts.extend(scalar_to_str(x) for x in row)
        for v in self.cocycle.values:
            parts.extend(scalar_to_str(x) for x in v)
        for row in self.operator.data:
            parts.extend(scalar_to_str(x) for x in row)
        return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


def check_weighted_reynolds(g: PreLieAlgebra, K: Matrix, weight) -> Report:
    """Scalar-weight Reynolds identity on all basis pairs of the algebra."""
    if K.rows != g.dim or K.cols != g.dim:
        raise ShapeError(f"operator is {K.rows}x{K.cols}, expected {g.dim}x{g.dim}")
    lam = g.field(weight)
    violations = []
    for i in range(g.dim):
        for j in range(g.dim):
            Kx, Ky = K.column(i), K.column(j)
            kk = g.mul(Kx, Ky)
            inner = add_vec(g.mul(Kx, g.basis(j)), g.mul(g.basis(i), Ky))
            inner = add_vec(inner, tuple(lam * c for c in kk))
            r = sub_vec(kk, K.apply(inner))
            if not is_zero_vec(r):
                violations.append(((i, j), r))
    return Report(not violations, violations)


@dataclass(frozen=True)
class WeightedReynoldsData:
    algebra: PreLieAlgebra
    operator: Matrix
    weight: object

    @classmethod
    def build(cls, algebra: PreLieAlgebra, operator: Matrix, weight):
        weight = algebra.field(weight)
        report = check_weighted_reynolds(algebra, operator, weight)
        if not report.ok:
            raise UnverifiedOperatorError(
                "operator fails the weighted Reynolds identity:\n" + report.describe())
        return cls(algebra, operator, weight)


def check_d_reynolds(g: PreLieAlgebra, D: Matrix, K: Matrix) -> Report:
    """K(x).K(y) = K(K(x).y + x.K(y) - (K(x).D(1)).K(y)) on basis pairs.

    Requires a unital algebra; D enters only through the value D(1).
    """
    unit = g.require_unit()
    if D.rows != g.dim or D.cols != g.dim or K.rows != g.dim or K.cols != g.dim:
        raise ShapeError("operator shapes must match the algebra dimension")
    d1 = D.apply(unit)
    violations = []
    for i in range(g.dim):
        for j in range(g.dim):
            Kx, Ky = K.column(i), K.column(j)
            lhs = g.mul(Kx, Ky)
            inner = add_vec(g.mul(Kx, g.basis(j)), g.mul(g.basis(i), Ky))
            inner = sub_vec(inner, g.mul(g.mul(Kx, d1), Ky))
            r = sub_vec(lhs, K.apply(inner))
            if not is_zero_vec(r):
                violations.append(((i, j), r))
    return Report(not violations, violations)


def star_product(g: PreLieAlgebra, K: Matrix, weight) -> PreLieAlgebra:
    """The deformed product x*y = x.K(y) + K(x).y + weight K(x).K(y).

    Requires a verified weighted Reynolds operator.  The result is again
    pre-Lie; K intertwines the old identity on the new product
    (K(x).K(y) = K(x*y)), stays a weighted Reynolds operator for the new
    product, and is a morphism from the new algebra to the old one.  All
    four facts are re-verified here.
    """
    lam = g.field(weight)
    if not check_weighted_reynolds(g, K, lam).ok:
        raise UnverifiedOperatorError("operator fails the weighted Reynolds identity")
    n = g.dim
    tensor = []
    for i in range(n):
        plane = []
        for j in range(n):
            Kx, Ky = K.column(i), K.column(j)
            val = add_vec(g.mul(g.basis(i), Ky), g.mul(Kx, g.basis(j)))
            val = add_vec(val, tuple(lam * c for c in g.mul(Kx, Ky)))
            plane.append(val)
        tensor.append(plane)
    star = PreLieAlgebra(g.field, tensor, check=True)
    for i in range(n):
        for j in range(n):
            lhs = g.mul(K.column(i), K.column(j))
            if lhs != K.apply(star.mul_basis(i, j)):
                raise AssertionError("K(x).K(y) = K(x*y) failed on the new product")
    if not check_weighted_reynolds(star, K, lam).ok:
        raise AssertionError("K is not a weighted Reynolds operator on the new product")
    if not check_morphism(star, g, K).ok:
        raise AssertionError("K is not a morphism from the new product to the old one")
    return star


def derivation_from_reynolds(g: PreLieAlgebra, K: Matrix, weight) -> Matrix:
    """K^{-1} + weight * id, a derivation when K is weighted Reynolds."""
    lam = g.field(weight)
    if not check_weighted_reynolds(g, K, lam).ok:
        raise UnverifiedOperatorError("operator fails the weighted Reynolds identity")
    inv = K.inverse()
    if inv is None:
        raise SingularError("operator is not invertible")
    D = inv + Matrix.identity(g.field, g.dim).scale(lam)
    report = check_derivation(g, D)
    if not report.ok:
        raise AssertionError("derived map is not a derivation:\n" + report.describe())
    return D


def reynolds_from_derivation(g: PreLieAlgebra, D: Matrix, weight) -> Matrix:
    """(D - weight * id)^{-1}, a weighted Reynolds operator when D derives."""
    lam = g.field(weight)
    report = check_derivation(g, D)
    if not report.ok:
        raise UnverifiedError("map is not a derivation:\n" + report.describe())
    shifted = D - Matrix.identity(g.field, g.dim).scale(lam)
    K = shifted.inverse()
    if K is None:
        raise SingularError("D - weight*id is not invertible")
    if not check_weighted_reynolds(g, K, lam).ok:
        raise AssertionError("inverse fails the weighted Reynolds identity")
    return K


def semidirect_tensor(g: PreLieAlgebra, rep: Representation, H: Cochain | None):
    """Structure constants of the twisted product on g + V (raw, unchecked):

        (x,u) . (y,v) = (x.y, L_x v + R_y u + H(x,y)).
    """
    n, m = g.dim, rep.dim_v
    dim = n + m
    field = g.field
    z = field.zero
    tensor = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            prod = g.mul_basis(i, j)
            for k in range(n):
                tensor[i][j][k] = prod[k]
            if H is not None:
                hv = H.eval_basis((i, j))
                for k in range(m):
                    tensor[i][j][n + k] = hv[k]
    for i in range(n):
        for j in range(m):
            lv = rep.L[i].column(j)
            for k in range(m):
                tensor[i][n + j][n + k] = lv[k]
            rv = rep.R[i].column(j)
            for k in range(m):
                tensor[n + j][i][n + k] = rv[k]
    return tensor


@dataclass(frozen=True)
class SemidirectAlgebra:
    """The twisted semidirect product algebra on g + V, with provenance."""

    algebra: PreLieAlgebra
    base: PreLieAlgebra
    rep: Representation
    cocycle: Cochain


def semidirect(g: PreLieAlgebra, rep: Representation, H: Cochain) -> SemidirectAlgebra:
    """Twisted semidirect product; verified pre-Lie iff H is a 2-cocycle."""
    _require_cocycle(g, rep, H)
    tensor = semidirect_tensor(g, rep, H)
    algebra = PreLieAlgebra(g.field, tensor, check=True)
    return SemidirectAlgebra(algebra, g, rep, H)


def check_graph_subalgebra(g: PreLieAlgebra, rep: Representation, H: Cochain,
                           K: Matrix) -> Report:
    """Is the graph {(Ku, u)} a subalgebra of the twisted semidirect product?

    Closure is decided by exact linear algebra: each product of two graph
    generators must lie in the column span of the graph.  Equivalence with
    `check_rcw_reynolds` is a theorem, exercised as a cross-check in tests.
    """
    _check_operator_shape(g, rep, K)
    _require_cocycle(g, rep, H)
    field = g.field
    n, m = g.dim, rep.dim_v
    tensor = semidirect_tensor(g, rep, H)
    sd = PreLieAlgebra(field, tensor, check=False)
    graph_cols = []
    for u in range(m):
        col = list(K.column(u)) + [field.one if i == u else field.zero for i in range(m)]
        graph_cols.append(col)
    span = Matrix.from_columns(field, graph_cols, n + m)
    violations = []
    for u in range(m):
        for v in range(m):
            w = sd.mul(tuple(graph_cols[u]), tuple(graph_cols[v]))
            rhs = Matrix.from_columns(field, [w], n + m)
            if span.solve(rhs) is None:
                violations.append(((u, v), tuple(w)))
    return Report(not violations, violations)


def induced_product(data: ReynoldsData) -> PreLieAlgebra:
    """The pre-Lie product on V induced by a verified operator:

        u ._K v = L_{Ku} v + R_{Kv} u + H(Ku, Kv).
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    m = rep.dim_v
    tensor = []
    for u in range(m):
        plane = []
        for v in range(m):
            Ku, Kv = K.column(u), K.column(v)
            val = add_vec(rep.act_L(Ku, _basis(rep, v)), rep.act_R(Kv, _basis(rep, u)))
            val = add_vec(val, H.eval([Ku, Kv]))
            plane.append(val)
        tensor.append(plane)
    out = PreLieAlgebra(data.field, tensor, check=True)
    if not check_morphism(out, g, K).ok:
        raise AssertionError("operator is not a morphism from the induced product")
    return out


def shift_isomorphism(g: PreLieAlgebra, rep: Representation, H: Cochain,
                      h: Cochain):
    """Semidirect products twisted by H and by H + dh are isomorphic.

    Returns (product for H, product for H + dh, the isomorphism
    (x, u) -> (x, u - h(x))); the map is verified to be an invertible
    morphism between the two algebras.
    """
    if h.degree != 1 or h.dim_source != g.dim or h.dim_target != rep.dim_v:
        raise ShapeError("shift must be a linear map from the algebra to the module")
    first = semidirect(g, rep, H)
    shifted_cocycle = H + coboundary(g, rep, h)
    second = semidirect(g, rep, shifted_cocycle)
    field = g.field
    n, m = g.dim, rep.dim_v
    hm = h.as_matrix()
    rows = []
    for i in range(n):
        rows.append([field.one if j == i else field.zero for j in range(n)]
                    + [field.zero] * m)
    for i in range(m):
        rows.append([-x for x in hm.data[i]]
                    + [field.one if j == i else field.zero for j in range(m)])
    psi = Matrix(field, rows)
    if psi.inverse() is None:
        raise AssertionError("shift isomorphism is singular")
    report = check_morphism(first.algebra, second.algebra, psi)
    if not report.ok:
        raise AssertionError("shift map is not a morphism:\n" + report.describe())
    return first, second, psi


def shift_operator(g: PreLieAlgebra, rep: Representation, H: Cochain,
                   K: Matrix, h: Cochain) -> Matrix:
    """K composed with (id - h K)^{-1}: a Reynolds operator for weight H + dh."""
    report = check_rcw_reynolds(g, rep, H, K)
    if not report.ok:
        raise UnverifiedOperatorError("operator fails the Reynolds identity")
    if h.degree != 1 or h.dim_source != g.dim or h.dim_target != rep.dim_v:
        raise ShapeError("shift must be a linear map from the algebra to the module")
    hm = h.as_matrix()
    inner = Matrix.identity(g.field, rep.dim_v) - hm * K
    inv = inner.inverse()
    if inv is None:
        raise SingularError("id - h K is not invertible")
    shifted = K * inv
    new_cocycle = H + coboundary(g, rep, h)
    out = check_rcw_reynolds(g, rep, new_cocycle, shifted)
    if not out.ok:
        raise AssertionError(
            "shifted operator fails the identity for the shifted weight:\n"
            + out.describe())
    return shifted


def gauge_transform(g: PreLieAlgebra, rep: Representation, H: Cochain,
                    K: Matrix, B: Cochain) -> Matrix:
    """Gauge transformation K_B = K (id + B K)^{-1} by an admissible 1-cocycle.

    B must satisfy dB = 0; the result satisfies the Reynolds identity for
    the same weight H, and id + B K is an isomorphism between the pre-Lie
    products induced on V by K and by K_B (both re-verified).
    """
    report = check_rcw_reynolds(g, rep, H, K)
    if not report.ok:
        raise UnverifiedOperatorError("operator fails the Reynolds identity")
    if B.degree != 1 or B.dim_source != g.dim or B.dim_target != rep.dim_v:
        raise ShapeError("gauge must be a linear map from the algebra to the module")
    if not coboundary(g, rep, B).is_zero():
        raise NotCocycleError("gauge map is not a 1-cocycle")
    bm = B.as_matrix()
    bundle = Matrix.identity(g.field, rep.dim_v) + bm * K
    inv = bundle.inverse()
    if inv is None:
        raise NotAdmissibleError("id + B K is singular; B is not admissible")
    gauged = K * inv
    out = check_rcw_reynolds(g, rep, H, gauged)
    if not out.ok:
        raise AssertionError("gauged operator fails the Reynolds identity")
    before = induced_product(ReynoldsData.build(g, rep, H, K))
    after = induced_product(ReynoldsData.build(g, rep, H, gauged))
    iso = check_morphism(before, after, bundle)
    if not iso.ok:
        raise AssertionError("id + B K is not an isomorphism of induced products")
    return gauged


def reynolds_from_invertible_cochain(g: PreLieAlgebra, rep: Representation,
                                     h: Cochain) -> ReynoldsData:
    """From an invertible linear map h: g -> V, the bundle (g, rep, -dh, h^{-1}).

    The inverse of h is always a Reynolds operator weighted by -dh; this is
    the universal source of verified examples.
    """
    if h.degree != 1 or h.dim_source != g.dim or h.dim_target != rep.dim_v:
        raise ShapeError("h must be a linear map from the algebra to the module")
    hm = h.as_matrix()
    if hm.rows != hm.cols:
        raise SingularError("h is not square, hence not invertible")
    K = hm.inverse()
    if K is None:
        raise SingularError("h is not invertible")
    H = -coboundary(g, rep, h)
    return ReynoldsData.build(g, rep, H, K)


def check_rcw_morphism(data: ReynoldsData, data2: ReynoldsData,
                       phi: Matrix, psi: Matrix) -> Report:
    """Morphism of Reynolds operators: (phi, psi) with

        phi K = K' psi,   psi L_x = L'_{phi x} psi,   psi R_x = R'_{phi x} psi,
        psi H = H' (phi x phi),

    and phi a pre-Lie algebra morphism.  Each condition gets a sub-verdict.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    g2, rep2, H2, K2 = data2.algebra, data2.rep, data2.cocycle, data2.operator
    if phi.rows != g2.dim or phi.cols != g.dim:
        raise ShapeError("phi has the wrong shape")
    if psi.rows != rep2.dim_v or psi.cols != rep.dim_v:
        raise ShapeError("psi has the wrong shape")
    parts = {}
    parts["algebra_morphism"] = check_morphism(g, g2, phi)

    viol = []
    lhs = phi * K
    rhs = K2 * psi
    diff = lhs - rhs
    for u in range(rep.dim_v):
        col = diff.column(u)
        if not is_zero_vec(col):
            viol.append(((u,), col))
    parts["intertwines_operator"] = Report(not viol, viol)

    viol_l, viol_r = [], []
    for i in range(g.dim):
        phix = phi.column(i)
        for u in range(rep.dim_v):
            eu = _basis(rep, u)
            dl = sub_vec(psi.apply(rep.act_L(g.basis(i), eu)),
                         rep2.act_L(phix, psi.column(u)))
            if not is_zero_vec(dl):
                viol_l.append(((i, u), dl))
            dr = sub_vec(psi.apply(rep.act_R(g.basis(i), eu)),
                         rep2.act_R(phix, psi.column(u)))
            if not is_zero_vec(dr):
                viol_r.append(((i, u), dr))
    parts["intertwines_left_action"] = Report(not viol_l, viol_l)
    parts["intertwines_right_action"] = Report(not viol_r, viol_r)

    viol_h = []
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = psi.apply(H.eval_basis((i, j)))
            rhs = H2.eval([phi.column(i), phi.column(j)])
            d = sub_vec(lhs, rhs)
            if not is_zero_vec(d):
                viol_h.append(((i, j), d))
    parts["intertwines_weight"] = Report(not viol_h, viol_h)
    return _combine(parts)
