"""Graded bracket machinery: the diamond product, the Matsushima-Nijenhuis
bracket, derived binary/ternary brackets on operator cochains, the
Maurer-Cartan test, and the differential it induces.

Conventions (see SIGNS.md at the repository root for the full ledger):

* On C^*(X, X), an element P of arity p+1 has MN-degree p, and

      (P <> Q)(x_1, ..., x_{p+q+1})
        = sum over (q,1,p-1)-unshuffles s of
              sgn(s) P(Q(x_{s(1)}, ..., x_{s(q+1)}), x_{s(q+2)}, ..., x_{p+q+1})
        + (-1)^{pq} sum over (p,q)-unshuffles s of
              sgn(s) P(x_{s(1)}, ..., x_{s(p)}, Q(x_{s(p+1)}, ..., x_{s(p+q)}, x_{p+q+1}))

  with [P, Q] = P <> Q - (-1)^{pq} Q <> P.  A bilinear map pi is pre-Lie
  exactly when [pi, pi] = 0.

* Operator cochains P in Hom(wedge^{p-1} V (x) V, g) embed into
  C^p(W, W) for W = g + V by evaluating on the V-components and landing
  in the g-component.  Two square-zero elements of C^2(W, W) drive
  everything: the untwisted semidirect product mu + L + R, and the lift
  of the 2-cocycle H.  The derived brackets are

      [[P, Q]]      = (-1)^{p-1} [[mu+L+R, P], Q]            (degree p of P)
      [[P, Q, R]]   = -          [[[H, P], Q], R]

  restricted back to V-inputs.  The ternary sign is pinned by the anchor
  identity [[K,K,K]](u,v) = 6 K H(Ku, Kv).

* The Maurer-Cartan functional is MC(K) = 1/2 [[K,K]] - 1/6 [[K,K,K]];
  its vanishing is equivalent to the Reynolds identity.  The induced
  differential is d_K f = [[K, f]] - 1/2 [[K, K, f]], and it satisfies
  d_K f = (-1)^{n-1} (the operator-cohomology differential) for f of
  degree n.  Over F_2 and F_3 the scalar divisions do not exist, so these
  three combinations are evaluated on the integer lift of the data and
  reduced mod p afterwards; both halves of each division are exact
  because the bracket values are themselves even (resp. divisible by 6)
  integer polynomials of the input entries.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import PreLieAlgebra, Report, Representation
from .cochain import Cochain, _unshuffles, cochain_keys
from .errors import ShapeError
from .linalg import Matrix, add_vec, is_zero_vec, neg_vec, zero_vec
from .reynolds import ReynoldsData, semidirect_tensor
from .scalars import FpElement, PrimeField, QQ


def diamond(P: Cochain, Q: Cochain) -> Cochain:
    """The composition product on C^*(X, X)."""
    if P.dim_source != P.dim_target or Q.dim_source != Q.dim_target:
        raise ShapeError("diamond is defined on cochains from a space to itself")
    if P.dim_source != Q.dim_source:
        raise ShapeError("cochains live on different spaces")
    dim = P.dim_source
    field = P.field
    p = P.degree - 1
    q = Q.degree - 1
    out_degree = p + q + 1
    values = []
    outer_sign = 1 if (p * q) % 2 == 0 else -1
    for fb, last in cochain_keys(dim, out_degree):
        letters = list(fb)  # the p+q permutable arguments
        acc = zero_vec(field, dim)
        for s in _unshuffles((q, 1, p - 1)):
            word = s.perm
            inner_args = tuple(letters[word[i]] for i in range(q + 1))
            inner = Q.eval_basis(inner_args)
            if is_zero_vec(inner):
                continue
            outer_args = [inner] + [letters[word[i]] for i in range(q + 1, p + q)] + [last]
            term = P.eval(outer_args)
            acc = add_vec(acc, term if s.sign == 1 else neg_vec(term))
        for s in _unshuffles((p, q)):
            word = s.perm
            inner_args = tuple(letters[word[i]] for i in range(p, p + q)) + (last,)
            inner = Q.eval_basis(inner_args)
            if is_zero_vec(inner):
                continue
            outer_args = [letters[word[i]] for i in range(p)] + [inner]
            term = P.eval(outer_args)
            sign = outer_sign * s.sign
            acc = add_vec(acc, term if sign == 1 else neg_vec(term))
        values.append(acc)
    return Cochain(field, out_degree, dim, dim, values)


def mn_bracket(P: Cochain, Q: Cochain) -> Cochain:
    """[P, Q] = P <> Q - (-1)^{pq} Q <> P (graded antisymmetric)."""
    p = P.degree - 1
    q = Q.degree - 1
    second = diamond(Q, P)
    if (p * q) % 2 == 1:
        return diamond(P, Q) + second
    return diamond(P, Q) - second


def product_cochain(a: PreLieAlgebra) -> Cochain:
    """The multiplication of an algebra as a degree-2 cochain on itself."""
    values = [a.mul_basis(fb[0], last) for fb, last in cochain_keys(a.dim, 2)]
    return Cochain(a.field, 2, a.dim, a.dim, values)


def tensor_cochain(field, tensor) -> Cochain:
    """A raw cubical tensor as a degree-2 cochain (no axioms assumed)."""
    dim = len(tensor)
    values = [tensor[fb[0]][last] for fb, last in cochain_keys(dim, 2)]
    return Cochain(field, 2, dim, dim, values)


def check_prelie_via_bracket(field, tensor) -> Report:
    """pi is pre-Lie iff [pi, pi] = 0; an independent route to the axiom."""
    pi = tensor_cochain(field, tensor)
    sq = mn_bracket(pi, pi)
    violations = []
    for (fb, last), v in zip(sq.keys(), sq.values):
        if not is_zero_vec(v):
            violations.append((fb + (last,), v))
    return Report(not violations, violations)


# ---------------------------------------------------------------------------
# the big space W = g + V and the embedding of operator cochains


def lift_operator_cochain(P: Cochain, dim_g: int) -> Cochain:
    """Embed P: wedge^{p-1} V (x) V -> g into C^p(W, W), W = g + V.

    The lift vanishes whenever any argument has a g-component and lands in
    the g-coordinates of W.
    """
    m = P.dim_source
    if P.dim_target != dim_g:
        raise ShapeError("operator cochain must target the algebra")
    dim_w = dim_g + m
    field = P.field
    values = []
    for fb, last in cochain_keys(dim_w, P.degree):
        idxs = fb + (last,)
        if any(i < dim_g for i in idxs):
            values.append(zero_vec(field, dim_w))
            continue
        inner = P.eval_basis(tuple(i - dim_g for i in idxs))
        values.append(tuple(inner) + tuple(zero_vec(field, m)))
    return Cochain(field, P.degree, dim_w, dim_w, values)


def restrict_operator_cochain(F: Cochain, dim_g: int, dim_v: int) -> Cochain:
    """Restrict a W-cochain to V-inputs and project to the g-components."""
    if F.dim_source != dim_g + dim_v:
        raise ShapeError("cochain does not live on g + V")
    field = F.field
    values = []
    for fb, last in cochain_keys(dim_v, F.degree):
        idxs = tuple(i + dim_g for i in fb) + (last + dim_g,)
        w = F.eval_basis(idxs)
        values.append(tuple(w[:dim_g]))
    return Cochain(field, F.degree, dim_v, dim_g, values)


def untwisted_structure(g: PreLieAlgebra, rep: Representation) -> Cochain:
    """mu + L + R as a degree-2 cochain on W (the H = 0 semidirect product)."""
    return tensor_cochain(g.field, semidirect_tensor(g, rep, None))


def cocycle_structure(g: PreLieAlgebra, rep: Representation, H: Cochain) -> Cochain:
    """The lift of H to a degree-2 cochain on W: ((x,u),(y,v)) -> (0, H(x,y))."""
    n, m = g.dim, rep.dim_v
    field = g.field
    z = field.zero
    tensor = [[[z] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            hv = H.eval_basis((i, j))
            for k in range(m):
                tensor[i][j][n + k] = hv[k]
    return tensor_cochain(field, tensor)


def derived_bracket(g: PreLieAlgebra, rep: Representation,
                    P: Cochain, Q: Cochain) -> Cochain:
    """[[P, Q]] = (-1)^{p-1} [[mu+L+R, P], Q] restricted to operator cochains.

    For degree-1 arguments this reproduces

        [[K, K']](u, v) = Ku.K'v + K'u.Kv - K(L_{K'u}v + R_{K'v}u)
                                          - K'(L_{Ku}v + R_{Kv}u).
    """
    mu = untwisted_structure(g, rep)
    lifted_p = lift_operator_cochain(P, g.dim)
    lifted_q = lift_operator_cochain(Q, g.dim)
    nested = mn_bracket(mn_bracket(mu, lifted_p), lifted_q)
    out = restrict_operator_cochain(nested, g.dim, rep.dim_v)
    if (P.degree - 1) % 2 == 1:
        out = -out
    return out


def ternary_bracket(g: PreLieAlgebra, rep: Representation, H: Cochain,
                    P: Cochain, Q: Cochain, R: Cochain) -> Cochain:
    """[[P, Q, R]] = -[[[H, P], Q], R] restricted to operator cochains.

    Fully symmetric in degree-1 arguments; the sign makes
    [[K, K, K]](u, v) = 6 K H(Ku, Kv).
    """
    hw = cocycle_structure(g, rep, H)
    nested = mn_bracket(mn_bracket(mn_bracket(hw, lift_operator_cochain(P, g.dim)),
                                   lift_operator_cochain(Q, g.dim)),
                        lift_operator_cochain(R, g.dim))
    return -restrict_operator_cochain(nested, g.dim, rep.dim_v)


# ---------------------------------------------------------------------------
# integer lift for the divisions by 2 and 6 in small characteristic


def _lift_scalar(x) -> Fraction:
    if isinstance(x, FpElement):
        return Fraction(x.value)
    return x


def _lift_matrix(m: Matrix) -> Matrix:
    return Matrix(QQ, [[_lift_scalar(x) for x in row] for row in m.data])


def _lift_cochain(c: Cochain) -> Cochain:
    return Cochain(QQ, c.degree, c.dim_source, c.dim_target,
                   [[_lift_scalar(x) for x in v] for v in c.values])


def _lift_bundle(g: PreLieAlgebra, rep: Representation, H: Cochain):
    """Raw characteristic-zero copies of the data (no axioms re-imposed)."""
    tensor = [[[_lift_scalar(x) for x in row] for row in plane] for plane in g.product]
    g_q = PreLieAlgebra(QQ, tensor, check=False)
    rep_q = Representation(g_q, rep.dim_v,
                           [_lift_matrix(m) for m in rep.L],
                           [_lift_matrix(m) for m in rep.R], check=False)
    return g_q, rep_q, _lift_cochain(H)


def _reduce_cochain(c: Cochain, field) -> Cochain:
    values = []
    for v in c.values:
        row = []
        for x in v:
            if x.denominator != 1:
                raise AssertionError("integer lift produced a non-integer entry")
            row.append(field(x.numerator))
        values.append(row)
    return Cochain(field, c.degree, c.dim_source, c.dim_target, values)


def _needs_lift(field) -> bool:
    return isinstance(field, PrimeField) and field.p in (2, 3)


def _combination(g, rep, H, terms, field):
    """Evaluate sum of (coeff, bracket thunk) with exact division.

    ``terms`` is a list of (Fraction coefficient, callable(g, rep, H))
    producing cochains; over F_2/F_3 everything runs on the integer lift
    and is reduced afterwards.
    """
    if _needs_lift(field):
        g_q, rep_q, H_q = _lift_bundle(g, rep, H)
        acc = None
        for coeff, thunk in terms:
            c = thunk(g_q, rep_q, H_q).scale(coeff)
            acc = c if acc is None else acc + c
        return _reduce_cochain(acc, field)
    acc = None
    for coeff, thunk in terms:
        c = thunk(g, rep, H).scale(field(coeff))
        acc = c if acc is None else acc + c
    return acc


def _as_degree1(field, K: Matrix) -> Cochain:
    return Cochain.from_matrix(K)


def mc_residual(g: PreLieAlgebra, rep: Representation, H: Cochain,
                K: Matrix) -> Cochain:
    """The Maurer-Cartan functional 1/2 [[K,K]] - 1/6 [[K,K,K]] at K."""
    field = g.field
    lift = _needs_lift(field)

    def binary(gg, rr, hh):
        kc = Cochain.from_matrix(_lift_matrix(K)) if lift else Cochain.from_matrix(K)
        return derived_bracket(gg, rr, kc, kc)

    def ternary(gg, rr, hh):
        kc = Cochain.from_matrix(_lift_matrix(K)) if lift else Cochain.from_matrix(K)
        return ternary_bracket(gg, rr, hh, kc, kc, kc)

    return _combination(g, rep, H,
                        [(Fraction(1, 2), binary), (Fraction(-1, 6), ternary)],
                        field)


def check_maurer_cartan(g: PreLieAlgebra, rep: Representation, H: Cochain,
                        K: Matrix) -> Report:
    """Does K satisfy the Maurer-Cartan equation of the graded structure?

    Agrees with `check_rcw_reynolds` on every input; the agreement is the
    executable form of the characterization theorem.
    """
    if K.rows != g.dim or K.cols != rep.dim_v:
        raise ShapeError("operator has the wrong shape")
    resid = mc_residual(g, rep, H, K)
    violations = []
    for (fb, last), v in zip(resid.keys(), resid.values):
        if not is_zero_vec(v):
            violations.append((fb + (last,), v))
    return Report(not violations, violations)


def d_K(data: ReynoldsData, f: Cochain) -> Cochain:
    """The twisted differential d_K f = [[K, f]] - 1/2 [[K, K, f]].

    Squares to zero and equals (-1)^{n-1} times the operator-cohomology
    differential on degree-n cochains.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    if f.dim_source != rep.dim_v or f.dim_target != g.dim:
        raise ShapeError("cochain must map the module to the algebra")
    field = g.field
    lift = _needs_lift(field)

    def binary(gg, rr, hh):
        kc = Cochain.from_matrix(_lift_matrix(K)) if lift else Cochain.from_matrix(K)
        fc = _lift_cochain(f) if lift else f
        return derived_bracket(gg, rr, kc, fc)

    def ternary(gg, rr, hh):
        kc = Cochain.from_matrix(_lift_matrix(K)) if lift else Cochain.from_matrix(K)
        fc = _lift_cochain(f) if lift else f
        return ternary_bracket(gg, rr, hh, kc, kc, fc)

    return _combination(g, rep, H,
                        [(Fraction(1), binary), (Fraction(-1, 2), ternary)],
                        field)


def twisted_mc_residual(data: ReynoldsData, K2: Matrix) -> Cochain:
    """d_K(K') + 1/2 ([[K',K']] - [[K,K',K']]) - 1/6 [[K',K',K']].

    Vanishes iff K + K' satisfies the Reynolds identity; this is the
    Maurer-Cartan equation of the structure twisted by K.
    """
    g, rep, H, K = data.algebra, data.rep, data.cocycle, data.operator
    if K2.rows != g.dim or K2.cols != rep.dim_v:
        raise ShapeError("operator has the wrong shape")
    field = g.field
    lift = _needs_lift(field)

    def mk(gg):
        return (Cochain.from_matrix(_lift_matrix(K)) if lift else Cochain.from_matrix(K),
                Cochain.from_matrix(_lift_matrix(K2)) if lift else Cochain.from_matrix(K2))

    def t_dk_bin(gg, rr, hh):
        kc, kc2 = mk(gg)
        return derived_bracket(gg, rr, kc, kc2)

    def t_dk_ter(gg, rr, hh):
        kc, kc2 = mk(gg)
        return ternary_bracket(gg, rr, hh, kc, kc, kc2)

    def t_bin22(gg, rr, hh):
        kc, kc2 = mk(gg)
        return derived_bracket(gg, rr, kc2, kc2)

    def t_ter122(gg, rr, hh):
        kc, kc2 = mk(gg)
        return ternary_bracket(gg, rr, hh, kc, kc2, kc2)

    def t_ter222(gg, rr, hh):
        kc, kc2 = mk(gg)
        return ternary_bracket(gg, rr, hh, kc2, kc2, kc2)

    return _combination(
        data.algebra, data.rep, data.cocycle,
        [(Fraction(1), t_dk_bin), (Fraction(-1, 2), t_dk_ter),
         (Fraction(1, 2), t_bin22), (Fraction(-1, 2), t_ter122),
         (Fraction(-1, 6), t_ter222)],
        field)


def check_twisted_mc(data: ReynoldsData, K2: Matrix) -> Report:
    """Maurer-Cartan test in the structure twisted by a verified operator.

    Passes iff K + K' is again a Reynolds operator for the same weight.
    """
    resid = twisted_mc_residual(data, K2)
    violations = []
    for (fb, last), v in zip(resid.keys(), resid.values):
        if not is_zero_vec(v):
            violations.append((fb + (last,), v))
    return Report(not violations, violations)
