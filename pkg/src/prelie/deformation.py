"""Deformations of cocycle-weighted Reynolds operators.

Linear deformations K + t K1 are governed by three coefficient identities
(orders t, t^2, t^3 of the Reynolds identity); the order-t condition alone
says K1 is a 1-cocycle of the operator cohomology.  Truncated series
K_0 + K_1 t + ... + K_N t^N are checked as polynomial deformations: the
order-n identity is evaluated for every n up to 3N, beyond which all
contributions vanish identically.

Equivalences of deformations are mediated by an algebra element x through
the pair of maps

    phi_t = id + t (L_x - R_x),   psi_t = id + t (L_x - R_x + H(x, K-)).

The element conditions are implemented twice: as fixed closed-form
condition groups, and re-derived from first principles by expanding every
morphism requirement in powers of t (the two modes can disagree on some
groups; both verdicts are reported, see `check_equivalence_data`).
Nijenhuis elements are the x satisfying the closed-form groups plus
x . Rbar_u(x) = Rbar_u(x) . x; over a prime field
they can be enumerated exhaustively, which powers the rigidity probe:
K is rigid when every operator 1-cocycle is the coboundary of a
Nijenhuis element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Report, Representation, _combine
from .cochain import Cochain, cochain_space_dim
from .errors import InfiniteFieldError, ShapeError, UnverifiedSeriesError
from .linalg import (
    Matrix,
    add_vec,
    basis_vec,
    is_zero_vec,
    sub_vec,
    zero_vec,
)
from .opcohomology import operator_coboundary_matrix
from .reynolds import ReynoldsData
from .scalars import PrimeField


def _vbasis(rep: Representation, i: int) -> tuple:
    return basis_vec(rep.field, rep.dim_v, i)


def element_coboundary(data: ReynoldsData, x) -> Matrix:
    """The trivial deformation direction attached to an algebra element:

        (d_K x)(u) = K(L_x u - R_x u + H(x, Ku)) - x.Ku + Ku.x

    For equivalent linear deformations, K1 - K1' is exactly this map.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    x = tuple(g.field(c) for c in x)
    if len(x) != g.dim:
        raise ShapeError("element has the wrong length")
    cols = []
    for u in range(rep.dim_v):
        eu = _vbasis(rep, u)
        Ku = K.column(u)
        inner = sub_vec(rep.act_L(x, eu), rep.act_R(x, eu))
        inner = add_vec(inner, H.eval([x, Ku]))
        col = sub_vec(K.apply(inner), g.mul(x, Ku))
        col = add_vec(col, g.mul(Ku, x))
        cols.append(col)
    return Matrix.from_columns(g.field, cols, g.dim)


def _linear_conditions(data: ReynoldsData, K1: Matrix):
    """Residuals of the three coefficient identities of K + t K1."""
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    m = rep.dim_v
    t1, t2, t3 = [], [], []
    for u in range(m):
        for v in range(m):
            eu, ev = _vbasis(rep, u), _vbasis(rep, v)
            Ku, Kv = K.column(u), K.column(v)
            K1u, K1v = K1.column(u), K1.column(v)

            lhs = add_vec(g.mul(Ku, K1v), g.mul(K1u, Kv))
            base = add_vec(rep.act_L(Ku, ev), rep.act_R(Kv, eu))
            base = add_vec(base, H.eval([Ku, Kv]))
            first = add_vec(rep.act_L(K1u, ev), rep.act_R(K1v, eu))
            first = add_vec(first, add_vec(H.eval([K1u, Kv]), H.eval([Ku, K1v])))
            r1 = sub_vec(lhs, add_vec(K1.apply(base), K.apply(first)))
            if not is_zero_vec(r1):
                t1.append(((u, v), r1))

            lhs2 = g.mul(K1u, K1v)
            second = add_vec(rep.act_L(K1u, ev), rep.act_R(K1v, eu))
            second = add_vec(second, add_vec(H.eval([Ku, K1v]), H.eval([K1u, Kv])))
            r2 = sub_vec(lhs2, add_vec(K1.apply(second), K.apply(H.eval([K1u, K1v]))))
            if not is_zero_vec(r2):
                t2.append(((u, v), r2))

            r3 = K1.apply(H.eval([K1u, K1v]))
            if not is_zero_vec(r3):
                t3.append(((u, v), r3))
    return t1, t2, t3


def check_linear_deformation(data: ReynoldsData, K1: Matrix) -> Report:
    """Does K1 generate a linear deformation K + t K1?

    Sub-verdicts per coefficient order; ``order_t1`` alone is the
    1-cocycle condition, cross-checked against the cohomology matrix.
    """
    g, rep = data.algebra, data.rep
    if K1.rows != g.dim or K1.cols != rep.dim_v:
        raise ShapeError("deformation direction has the wrong shape")
    t1, t2, t3 = _linear_conditions(data, K1)
    parts = {
        "order_t1": Report(not t1, t1),
        "order_t2": Report(not t2, t2),
        "order_t3": Report(not t3, t3),
    }
    matrix_route = is_cocycle(data, K1)
    if parts["order_t1"].ok != matrix_route:
        raise AssertionError(
            "order-t condition and the cohomology matrix disagree on the "
            "1-cocycle verdict")
    return _combine(parts)


def is_cocycle(data: ReynoldsData, K1: Matrix) -> bool:
    """Is a linear map V -> g killed by the operator differential?"""
    d1 = operator_coboundary_matrix(data, 1)
    flat = [x for v in Cochain.from_matrix(K1).values for x in v]
    col = Matrix.from_columns(data.field, [flat], len(flat))
    return (d1 * col).is_zero()


@dataclass(frozen=True)
class DeformationSeries:
    """A truncated deformation: coefficients K_0, ..., K_N with K_0 = K."""

    base: ReynoldsData
    coefficients: tuple

    def __post_init__(self):
        if not self.coefficients:
            raise ShapeError("series needs at least the constant coefficient")
        if self.coefficients[0] != self.base.operator:
            raise ShapeError("constant coefficient must equal the base operator")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def check_formal_deformation(series: DeformationSeries) -> Report:
    """Coefficient identities of a truncated deformation at every order.

    With a zero tail above the truncation order N, orders beyond 3N hold
    identically, so orders 0..3N decide the whole polynomial identity;
    the checked range is recorded in ``parts``.
    """
    data = series.base
    g, rep, H = data.algebra, data.rep, data.cocycle
    m = rep.dim_v
    ks = series.coefficients
    N = series.order
    parts = {}
    for order in range(0, 3 * N + 1 if N else 1):
        violations = []
        for u in range(m):
            for v in range(m):
                eu, ev = _vbasis(rep, u), _vbasis(rep, v)
                total = zero_vec(g.field, g.dim)
                for i in range(0, order + 1):
                    j = order - i
                    if i <= N and j <= N:
                        total = add_vec(total, g.mul(ks[i].column(u), ks[j].column(v)))
                        inner = add_vec(rep.act_L(ks[j].column(u), ev),
                                        rep.act_R(ks[j].column(v), eu))
                        total = sub_vec(total, ks[i].apply(inner))
                for i in range(0, order + 1):
                    if i > N:
                        continue
                    for j in range(0, order - i + 1):
                        k = order - i - j
                        if j <= N and k <= N:
                            hv = H.eval([ks[j].column(u), ks[k].column(v)])
                            total = sub_vec(total, ks[i].apply(hv))
                if not is_zero_vec(total):
                    violations.append(((order, u, v), total))
        parts[f"order_{order}"] = Report(not violations, violations)
    # the part keys state the determined range: orders 0 .. 3N inclusive
    return _combine(parts)


def infinitesimal(series: DeformationSeries):
    """First coefficient of a verified series, with its cocycle verdict."""
    report = check_formal_deformation(series)
    if not report.ok:
        raise UnverifiedSeriesError("series fails its coefficient identities")
    data = series.base
    if series.order == 0:
        K1 = Matrix.zero(data.field, data.algebra.dim, data.rep.dim_v)
    else:
        K1 = series.coefficients[1]
    verdict = Report(is_cocycle(data, K1), [])
    return K1, verdict


# ---------------------------------------------------------------------------
# element condition groups (literal and re-derived)


def _literal_groups(data: ReynoldsData, x) -> dict:
    """The fixed closed-form element condition groups."""
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    field = g.field
    x = tuple(field(c) for c in x)
    m = rep.dim_v

    viol = []
    for y in range(g.dim):
        for z in range(g.dim):
            ey, ez = g.basis(y), g.basis(z)
            r = g.mul(g.bracket(x, ey), g.bracket(x, ez))
            if not is_zero_vec(r):
                viol.append((("comm-product", y, z), r))
            r2 = g.mul(g.mul_basis(y, z), x)
            if not is_zero_vec(r2):
                viol.append((("product-by-x", y, z), r2))
    alg_map = Report(not viol, viol)

    def psi1(u_vec, Ku_vec):
        out = sub_vec(rep.act_L(x, u_vec), rep.act_R(x, u_vec))
        return add_vec(out, H.eval([x, Ku_vec]))

    viol = []
    for y in range(g.dim):
        ey = g.basis(y)
        brx = g.bracket(x, ey)
        for u in range(m):
            eu = _vbasis(rep, u)
            Ku = K.column(u)
            lhs = H.eval([x, K.apply(rep.act_L(ey, eu))])
            rhs = rep.act_L(ey, H.eval([x, Ku]))
            r = sub_vec(lhs, rhs)
            if not is_zero_vec(r):
                viol.append((("left-cocycle", y, u), r))
            r2 = rep.act_L(brx, psi1(eu, Ku))
            if not is_zero_vec(r2):
                viol.append((("left-second", y, u), r2))
    left = Report(not viol, viol)

    viol = []
    for y in range(g.dim):
        ey = g.basis(y)
        brx = g.bracket(x, ey)
        for u in range(m):
            eu = _vbasis(rep, u)
            Ku = K.column(u)
            lhs = H.eval([x, K.apply(rep.act_R(ey, eu))])
            rhs = rep.act_R(ey, H.eval([x, Ku]))
            r = sub_vec(lhs, rhs)
            if not is_zero_vec(r):
                viol.append((("right-cocycle", y, u), r))
            r2 = rep.act_R(brx, psi1(eu, Ku))
            if not is_zero_vec(r2):
                viol.append((("right-second", y, u), r2))
    right = Report(not viol, viol)

    viol = []
    for y in range(g.dim):
        for z in range(g.dim):
            ey, ez = g.basis(y), g.basis(z)
            hyz = H.eval_basis((y, z))
            lhs = sub_vec(rep.act_L(x, hyz), rep.act_R(x, hyz))
            lhs = add_vec(lhs, H.eval([x, K.apply(hyz)]))
            rhs = add_vec(H.eval([g.bracket(x, ey), ez]),
                          H.eval([ey, g.bracket(x, ez)]))
            r = sub_vec(lhs, rhs)
            if not is_zero_vec(r):
                viol.append((("weight-cocycle", y, z), r))
            r2 = H.eval([g.bracket(x, ey), g.bracket(x, ez)])
            if not is_zero_vec(r2):
                viol.append((("weight-second", y, z), r2))
    weight = Report(not viol, viol)

    return {
        "algebra_morphism": alg_map,
        "left_action": left,
        "right_action": right,
        "weight_compat": weight,
    }


def _rederived_groups(data: ReynoldsData, x, K1: Matrix | None = None,
                      K1p: Matrix | None = None) -> dict:
    """Expand every morphism requirement of (phi_t, psi_t) in powers of t.

    phi_t = id + t P with P = L_x - R_x on g; psi_t = id + t S with
    S u = L_x u - R_x u + H(x, Ku) on V.  Each requirement is a polynomial
    identity in t; all coefficients must vanish.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    field = g.field
    x = tuple(field(c) for c in x)
    m = rep.dim_v

    def P(vec):  # phi_t linear term
        return g.bracket(x, vec)

    def S(u_vec):  # psi_t linear term
        out = sub_vec(rep.act_L(x, u_vec), rep.act_R(x, u_vec))
        Ku = K.apply(u_vec)
        return add_vec(out, H.eval([x, Ku]))

    viol = []
    for y in range(g.dim):
        for z in range(g.dim):
            ey, ez = g.basis(y), g.basis(z)
            # t: P(y.z) = P(y).z + y.P(z)
            r1 = sub_vec(P(g.mul_basis(y, z)),
                         add_vec(g.mul(P(ey), ez), g.mul(ey, P(ez))))
            if not is_zero_vec(r1):
                viol.append((("t1", y, z), r1))
            # t^2: P(y).P(z) = 0
            r2 = g.mul(P(ey), P(ez))
            if not is_zero_vec(r2):
                viol.append((("t2", y, z), r2))
    alg_map = Report(not viol, viol)

    viol_l, viol_r = [], []
    for y in range(g.dim):
        ey = g.basis(y)
        for u in range(m):
            eu = _vbasis(rep, u)
            # t: S(L_y u) = L_y S(u) + L_{P(y)} u
            r1 = sub_vec(S(rep.act_L(ey, eu)),
                         add_vec(rep.act_L(ey, S(eu)), rep.act_L(P(ey), eu)))
            if not is_zero_vec(r1):
                viol_l.append((("t1", y, u), r1))
            # t^2: L_{P(y)} S(u) = 0
            r2 = rep.act_L(P(ey), S(eu))
            if not is_zero_vec(r2):
                viol_l.append((("t2", y, u), r2))
            r1 = sub_vec(S(rep.act_R(ey, eu)),
                         add_vec(rep.act_R(ey, S(eu)), rep.act_R(P(ey), eu)))
            if not is_zero_vec(r1):
                viol_r.append((("t1", y, u), r1))
            r2 = rep.act_R(P(ey), S(eu))
            if not is_zero_vec(r2):
                viol_r.append((("t2", y, u), r2))
    left = Report(not viol_l, viol_l)
    right = Report(not viol_r, viol_r)

    viol = []
    for y in range(g.dim):
        for z in range(g.dim):
            ey, ez = g.basis(y), g.basis(z)
            hyz = H.eval_basis((y, z))
            # t: S(H(y,z)) = H(P(y), z) + H(y, P(z))
            r1 = sub_vec(S(hyz), add_vec(H.eval([P(ey), ez]), H.eval([ey, P(ez)])))
            if not is_zero_vec(r1):
                viol.append((("t1", y, z), r1))
            # t^2: H(P(y), P(z)) = 0
            r2 = H.eval([P(ey), P(ez)])
            if not is_zero_vec(r2):
                viol.append((("t2", y, z), r2))
    weight = Report(not viol, viol)

    out = {
        "algebra_morphism": alg_map,
        "left_action": left,
        "right_action": right,
        "weight_compat": weight,
    }

    if K1 is not None and K1p is not None:
        # phi_t K_t = K'_t psi_t, coefficients of t and t^2
        viol = []
        for u in range(m):
            eu = _vbasis(rep, u)
            Ku = K.column(u)
            # t: K1(u) + P(Ku) = K(S(u)) + K1'(u)
            r1 = sub_vec(add_vec(K1.column(u), P(Ku)),
                         add_vec(K.apply(S(eu)), K1p.column(u)))
            if not is_zero_vec(r1):
                viol.append((("t1", u), r1))
            # t^2: P(K1 u) = K1'(S(u))
            r2 = sub_vec(P(K1.column(u)), K1p.apply(S(eu)))
            if not is_zero_vec(r2):
                viol.append((("t2", u), r2))
        out["intertwines_operator"] = Report(not viol, viol)
    return out


def check_equivalence_data(data: ReynoldsData, K1: Matrix, K1p: Matrix, x) -> Report:
    """Are K + t K1 and K + t K1' equivalent through the element x?

    The overall verdict follows the literal condition groups plus the two
    operator-intertwining identities; the re-derived expansion is attached
    under ``parts["rederived"]`` for comparison.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    field = g.field
    x = tuple(field(c) for c in x)
    parts = dict(_literal_groups(data, x))

    m = rep.dim_v
    viol = []
    for u in range(m):
        eu = _vbasis(rep, u)
        Ku = K.column(u)
        s = sub_vec(rep.act_L(x, eu), rep.act_R(x, eu))
        s = add_vec(s, H.eval([x, Ku]))
        lhs = add_vec(K1.column(u), sub_vec(g.mul(x, Ku), g.mul(Ku, x)))
        rhs = add_vec(K.apply(s), K1p.column(u))
        r = sub_vec(lhs, rhs)
        if not is_zero_vec(r):
            viol.append((("difference", u), r))
        lhs2 = sub_vec(g.mul(x, K1.column(u)), g.mul(K1.column(u), x))
        r2 = sub_vec(lhs2, K1p.apply(s))
        if not is_zero_vec(r2):
            viol.append((("conjugate", u), r2))
    parts["intertwines_operator"] = Report(not viol, viol)

    report = _combine(parts)
    rederived = _rederived_groups(data, x, K1, K1p)
    report.parts["rederived"] = _combine(rederived)
    report.parts["modes_agree"] = Report(
        all(parts[k].ok == rederived[k].ok for k in
            ("algebra_morphism", "left_action", "right_action", "weight_compat")), [])
    return report


def check_nijenhuis_element(data: ReynoldsData, x) -> Report:
    """Is x a Nijenhuis element for the operator?

    Requires x . Rbar_u(x) = Rbar_u(x) . x for every module basis vector
    plus the literal element condition groups.  The re-derived verdicts
    ride along in ``parts["rederived"]``.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    field = g.field
    x = tuple(field(c) for c in x)
    if len(x) != g.dim:
        raise ShapeError("element has the wrong length")
    m = rep.dim_v

    viol = []
    for u in range(m):
        eu = _vbasis(rep, u)
        Ku = K.column(u)
        rbar = sub_vec(g.mul(x, Ku), K.apply(rep.act_L(x, eu)))
        rbar = sub_vec(rbar, K.apply(H.eval([x, Ku])))
        r = sub_vec(g.mul(x, rbar), g.mul(rbar, x))
        if not is_zero_vec(r):
            viol.append((("rbar-commutes", u), r))
    parts = {"rbar_condition": Report(not viol, viol)}
    parts.update(_literal_groups(data, x))
    report = _combine(parts)
    report.parts["rederived"] = _combine(_rederived_groups(data, x))
    return report


def nijenhuis_elements(data: ReynoldsData) -> list:
    """All Nijenhuis elements over a prime field, in lexicographic order."""
    field = data.field
    if not isinstance(field, PrimeField):
        raise InfiniteFieldError("exhaustive enumeration needs a finite field")
    n = data.algebra.dim
    elements = field.elements()
    out = []

    def rec(prefix):
        if len(prefix) == n:
            if check_nijenhuis_element(data, tuple(prefix)).ok:
                out.append(tuple(prefix))
            return
        for e in elements:
            rec(prefix + [e])

    rec([])
    return out


@dataclass(frozen=True)
class RigidityReport:
    cocycle_count: int
    nijenhuis_count: int
    image_count: int
    criterion_holds: bool


def rigidity_probe(data: ReynoldsData) -> RigidityReport:
    """Decide the sufficient rigidity criterion over a prime field.

    Enumerates the full space of operator 1-cocycles Z^1 (as the span of
    the kernel of the degree-1 differential) and the coboundaries of all
    Nijenhuis elements, and reports whether the two sets coincide.  The
    verdict is a probe of the sufficient condition only: Z^1 = d_K(Nij)
    implies rigidity.
    """
    field = data.field
    if not isinstance(field, PrimeField):
        raise InfiniteFieldError("the rigidity probe needs a finite field")
    g, rep = data.algebra, data.rep
    d1 = operator_coboundary_matrix(data, 1)
    basis = d1.kernel().vectors
    elements = field.elements()

    cocycles = set()

    def span(prefix, acc):
        if len(prefix) == len(basis):
            cocycles.add(tuple(acc))
            return
        for c in elements:
            nxt = [a + c * b for a, b in zip(acc, basis[len(prefix)])]
            span(prefix + [c], nxt)

    zero_flat = [field.zero] * cochain_space_dim(rep.dim_v, g.dim, 1)
    span([], zero_flat)

    image = set()
    nij = nijenhuis_elements(data)
    for x in nij:
        mat = element_coboundary(data, x)
        flat = tuple(x for v in Cochain.from_matrix(mat).values for x in v)
        image.add(flat)

    return RigidityReport(len(cocycles), len(nij), len(image), cocycles == image)
