import random
from itertools import permutations

import pytest

from conftest import (
    g2_algebra,
    g3_algebra,
    g3_cocycle,
    random_algebra,
    random_cochain,
    random_pair,
    random_reynolds_data,
)
from prelie.algebra import PreLieAlgebra, check_prelie, regular_representation, zero_representation
from prelie.brackets import (
    check_maurer_cartan,
    check_prelie_via_bracket,
    check_twisted_mc,
    d_K,
    derived_bracket,
    diamond,
    lift_operator_cochain,
    mc_residual,
    mn_bracket,
    product_cochain,
    tensor_cochain,
    ternary_bracket,
    twisted_mc_residual,
    untwisted_structure,
)
from prelie.cochain import Cochain, cochain_keys
from prelie.linalg import Matrix, add_vec, basis_vec, scale_vec, sub_vec
from prelie.reynolds import ReynoldsData, check_rcw_reynolds
from prelie.scalars import QQ, PrimeField


# ---------------------------------------------------------------------------
# diamond and the bracket on C*(X, X)


def test_diamond_zero_annihilates():
    rng = random.Random(0)
    P = random_cochain(rng, QQ, 2, 2, 2)
    Z = Cochain.zero(QQ, 2, 2, 2)
    assert diamond(P, Z).is_zero() and diamond(Z, P).is_zero()
    assert mn_bracket(Z, P).is_zero()


def test_diamond_bilinear_hand_expansion():
    # for bilinear P, Q:  (P<>Q)(x,y,z) = P(Q(x,y),z) - P(Q(y,x),z)
    #                                    - P(x,Q(y,z)) + P(y,Q(x,z))
    rng = random.Random(1)
    P = random_cochain(rng, QQ, 2, 2, 2)
    Q = random_cochain(rng, QQ, 2, 2, 2)
    D = diamond(P, Q)
    for x in range(2):
        for y in range(2):
            for z in range(2):
                expected = P.eval([Q.eval_basis((x, y)), z])
                expected = sub_vec(expected, P.eval([Q.eval_basis((y, x)), z]))
                expected = sub_vec(expected, P.eval([x, Q.eval_basis((y, z))]))
                expected = add_vec(expected, P.eval([y, Q.eval_basis((x, z))]))
                assert D.eval_basis((x, y, z)) == expected


def test_prelie_iff_bracket_square_zero():
    rng = random.Random(2)
    hits = {True: 0, False: 0}
    for _ in range(30):
        if rng.random() < 0.5:
            tensor = random_algebra(rng).product
        else:
            tensor = [[[QQ(rng.randint(-1, 1)) for _ in range(2)] for _ in range(2)]
                      for _ in range(2)]
            if len(tensor) != 2:
                continue
        dim = len(tensor)
        direct = check_prelie(QQ, tensor).ok
        via = check_prelie_via_bracket(QQ, tensor).ok
        assert direct == via
        hits[direct] += 1
    assert hits[True] and hits[False]  # both verdicts exercised


def test_square_zero_derivation_of_bracket():
    # d_pi = [pi, -] squares to zero for a verified product pi
    rng = random.Random(3)
    for _ in range(6):
        a = random_algebra(rng, max_dim=2)
        pi = product_cochain(a)
        f = random_cochain(rng, QQ, rng.randint(1, 2), a.dim, a.dim)
        df = mn_bracket(pi, f)
        assert mn_bracket(pi, df).is_zero()


def test_bracket_graded_identity_odd_degree():
    # for odd MN-degree P: [P, P] = 2 P<>P (never asserted to vanish)
    rng = random.Random(4)
    P = random_cochain(rng, QQ, 2, 2, 2)  # MN-degree 1
    assert mn_bracket(P, P) == diamond(P, P).scale(QQ(2))


# ---------------------------------------------------------------------------
# derived brackets


def test_binary_bracket_reproduces_closed_form(g3_bundle):
    a, rep, _ = g3_bundle
    rng = random.Random(5)
    for _ in range(10):
        K = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        kc = Cochain.from_matrix(K)
        b = derived_bracket(a, rep, kc, kc)
        for u in range(3):
            for v in range(3):
                Ku, Kv = K.column(u), K.column(v)
                inner = add_vec(rep.act_L(Ku, basis_vec(QQ, 3, v)),
                                rep.act_R(Kv, basis_vec(QQ, 3, u)))
                expected = scale_vec(QQ(2), sub_vec(a.mul(Ku, Kv), K.apply(inner)))
                assert b.eval_basis((u, v)) == expected


def test_binary_bracket_polarized_form(g3_bundle):
    # [[K, K']](u,v) = Ku.K'v + K'u.Kv - K(L_{K'u}v + R_{K'v}u) - K'(L_{Ku}v + R_{Kv}u)
    a, rep, _ = g3_bundle
    rng = random.Random(6)
    K = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
    K2 = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
    b = derived_bracket(a, rep, Cochain.from_matrix(K), Cochain.from_matrix(K2))
    for u in range(3):
        for v in range(3):
            eu, ev = basis_vec(QQ, 3, u), basis_vec(QQ, 3, v)
            expected = add_vec(a.mul(K.column(u), K2.column(v)),
                               a.mul(K2.column(u), K.column(v)))
            expected = sub_vec(expected, K.apply(
                add_vec(rep.act_L(K2.column(u), ev), rep.act_R(K2.column(v), eu))))
            expected = sub_vec(expected, K2.apply(
                add_vec(rep.act_L(K.column(u), ev), rep.act_R(K.column(v), eu))))
            assert b.eval_basis((u, v)) == expected


def test_ternary_bracket_reproduces_closed_form(g3_bundle):
    a, rep, H = g3_bundle
    rng = random.Random(7)
    for _ in range(10):
        K = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        kc = Cochain.from_matrix(K)
        t = ternary_bracket(a, rep, H, kc, kc, kc)
        for u in range(3):
            for v in range(3):
                expected = scale_vec(QQ(6), K.apply(
                    H.eval([K.column(u), K.column(v)])))
                assert t.eval_basis((u, v)) == expected


def test_ternary_zero_argument(g3_bundle):
    a, rep, H = g3_bundle
    rng = random.Random(8)
    K = Cochain.from_matrix(Matrix(QQ, [[rng.randint(-2, 2)] * 3 for _ in range(3)]))
    Z = Cochain.zero(QQ, 1, 3, 3)
    assert ternary_bracket(a, rep, H, Z, K, K).is_zero()
    assert ternary_bracket(a, rep, H, K, Z, K).is_zero()
    assert ternary_bracket(a, rep, H, K, K, Z).is_zero()


def test_ternary_symmetric_at_degree_one(g3_bundle):
    a, rep, H = g3_bundle
    rng = random.Random(9)
    cs = [Cochain.from_matrix(Matrix(QQ, [[rng.randint(-2, 2) for _ in range(3)]
                                          for _ in range(3)])) for _ in range(3)]
    ref = ternary_bracket(a, rep, H, *cs)
    for p in permutations(range(3)):
        assert ternary_bracket(a, rep, H, cs[p[0]], cs[p[1]], cs[p[2]]) == ref


def test_derived_bracket_graded_antisymmetry():
    rng = random.Random(10)
    a, rep = random_pair(rng, max_dim=2)
    for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        P = random_cochain(rng, QQ, p, rep.dim_v, a.dim)
        Q = random_cochain(rng, QQ, q, rep.dim_v, a.dim)
        lhs = derived_bracket(a, rep, P, Q)
        rhs = derived_bracket(a, rep, Q, P)
        sign = QQ(-1 if (p * q) % 2 == 0 else 1)  # -(-1)^{pq}
        assert lhs == rhs.scale(sign)


def test_lifted_cochains_commute(g3_bundle):
    a, rep, _ = g3_bundle
    rng = random.Random(11)
    P = lift_operator_cochain(random_cochain(rng, QQ, 2, 3, 3), a.dim)
    Q = lift_operator_cochain(random_cochain(rng, QQ, 1, 3, 3), a.dim)
    assert mn_bracket(P, Q).is_zero()


def test_semidirect_square_zero_iff_cocycle(g3_bundle):
    # [mu~_H, mu~_H] = 0 exactly when H is a 2-cocycle
    from prelie.brackets import cocycle_structure

    a, rep, H = g3_bundle
    mu = untwisted_structure(a, rep)
    good = tensor_cochain(QQ, [[list(add_vec(mu.eval_basis((i, j)),
                                             cocycle_structure(a, rep, H).eval_basis((i, j))))
                                for j in range(6)] for i in range(6)])
    assert mn_bracket(good, good).is_zero()
    bad_H = Cochain.from_entries(QQ, 2, 3, 3, {((2,), 1): (0, 0, 1)})
    bad = tensor_cochain(QQ, [[list(add_vec(mu.eval_basis((i, j)),
                                            cocycle_structure(a, rep, bad_H).eval_basis((i, j))))
                               for j in range(6)] for i in range(6)])
    assert not mn_bracket(bad, bad).is_zero()


# ---------------------------------------------------------------------------
# Maurer-Cartan


def test_mc_zero_operator(g3_bundle):
    a, rep, H = g3_bundle
    assert check_maurer_cartan(a, rep, H, Matrix.zero(QQ, 3, 3)).ok


def test_mc_vanishing_third_row_family(g3_bundle):
    a, rep, H = g3_bundle
    rng = random.Random(12)
    for _ in range(5):
        K = Matrix(QQ, [[rng.randint(-3, 3) for _ in range(3)] for _ in range(2)]
                   + [[0, 0, 0]])
        assert check_maurer_cartan(a, rep, H, K).ok


def test_mc_agrees_with_direct_checker_rationals(g3_bundle):
    a, rep, H = g3_bundle
    rng = random.Random(13)
    seen = {True: 0, False: 0}
    for _ in range(30):
        K = Matrix(QQ, [[rng.randint(-1, 1) for _ in range(3)] for _ in range(3)])
        mc = check_maurer_cartan(a, rep, H, K).ok
        direct = check_rcw_reynolds(a, rep, H, K).ok
        assert mc == direct
        seen[direct] += 1
    assert seen[True] and seen[False]


def test_mc_agrees_over_f3():
    F3 = PrimeField(3)
    a = PreLieAlgebra.build(F3, 3, {(2, 2, 1): 1})
    rep = regular_representation(a)
    H = Cochain.from_entries(F3, 2, 3, 3, {((2,), 2): (0, 0, 1)})
    rng = random.Random(14)
    for _ in range(100):
        K = Matrix(F3, [[rng.randint(0, 2) for _ in range(3)] for _ in range(3)])
        assert check_maurer_cartan(a, rep, H, K).ok == \
            check_rcw_reynolds(a, rep, H, K).ok


def test_mc_lift_matches_direct_over_f5():
    # 6 is invertible mod 5: direct evaluation must agree with the checker
    F5 = PrimeField(5)
    a = PreLieAlgebra.build(F5, 3, {(2, 2, 1): 1})
    rep = regular_representation(a)
    H = Cochain.from_entries(F5, 2, 3, 3, {((2,), 2): (0, 0, 1)})
    rng = random.Random(15)
    for _ in range(40):
        K = Matrix(F5, [[rng.randint(0, 4) for _ in range(3)] for _ in range(3)])
        assert check_maurer_cartan(a, rep, H, K).ok == \
            check_rcw_reynolds(a, rep, H, K).ok


# ---------------------------------------------------------------------------
# d_K


def test_dk_zero(g3_data):
    assert d_K(g3_data, Cochain.zero(QQ, 1, 3, 3)).is_zero()


def test_dk_equals_signed_partial(g3_data):
    from prelie.opcohomology import operator_coboundary

    rng = random.Random(16)
    for n in (1, 2):
        for _ in range(5):
            f = random_cochain(rng, QQ, n, 3, 3)
            dk = d_K(g3_data, f)
            pd = operator_coboundary(g3_data, f)
            assert dk == (pd if n % 2 == 1 else -pd)


def test_dk_squares_to_zero(g3_data):
    rng = random.Random(17)
    for _ in range(5):
        f = random_cochain(rng, QQ, 1, 3, 3)
        assert d_K(g3_data, d_K(g3_data, f)).is_zero()


def test_dk_over_f2():
    F2 = PrimeField(2)
    a = PreLieAlgebra.build(F2, 3, {(2, 2, 1): 1})
    rep = regular_representation(a)
    H = Cochain.from_entries(F2, 2, 3, 3, {((2,), 2): (0, 0, 1)})
    K = Matrix(F2, [[1, 0, 1], [0, 1, 0], [0, 0, 0]])
    data = ReynoldsData.build(a, rep, H, K)
    from prelie.opcohomology import operator_coboundary

    rng = random.Random(18)
    for n in (1, 2):
        f = random_cochain(rng, F2, n, 3, 3, 0, 1)
        dk = d_K(data, f)
        pd = operator_coboundary(data, f)
        assert dk == (pd if n % 2 == 1 else -pd)
        assert d_K(data, dk).is_zero()


# ---------------------------------------------------------------------------
# twisted structure


def test_twisted_mc_zero_and_negative(g3_data):
    assert check_twisted_mc(g3_data, Matrix.zero(QQ, 3, 3)).ok
    assert check_twisted_mc(g3_data, -g3_data.operator).ok  # K + K' = 0 is Reynolds


def test_twisted_mc_agrees_with_sum_checker(g3_data):
    rng = random.Random(19)
    data = g3_data
    seen = {True: 0, False: 0}
    for _ in range(25):
        K2 = Matrix(QQ, [[rng.randint(-1, 1) for _ in range(3)] for _ in range(3)])
        twisted = check_twisted_mc(data, K2).ok
        direct = check_rcw_reynolds(data.algebra, data.rep, data.cocycle,
                                    data.operator + K2).ok
        assert twisted == direct
        seen[direct] += 1
    assert seen[True] and seen[False]


def test_twisted_mc_over_f3():
    F3 = PrimeField(3)
    a = PreLieAlgebra.build(F3, 3, {(2, 2, 1): 1})
    rep = regular_representation(a)
    H = Cochain.from_entries(F3, 2, 3, 3, {((2,), 2): (0, 0, 1)})
    K = Matrix(F3, [[1, 2, 0], [0, 1, 1], [0, 0, 0]])
    data = ReynoldsData.build(a, rep, H, K)
    rng = random.Random(20)
    for _ in range(60):
        K2 = Matrix(F3, [[rng.randint(0, 2) for _ in range(3)] for _ in range(3)])
        assert check_twisted_mc(data, K2).ok == \
            check_rcw_reynolds(a, rep, H, K + K2).ok


def test_mn_bracket_graded_leibniz():
    # [P,[Q,R]] = [[P,Q],R] + (-1)^{pq}[Q,[P,R]] with MN degrees p = arity-1
    rng = random.Random(50)
    for _ in range(4):
        for (ap, aq, ar) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2)]:
            P = random_cochain(rng, QQ, ap, 2, 2)
            Q = random_cochain(rng, QQ, aq, 2, 2)
            R = random_cochain(rng, QQ, ar, 2, 2)
            p, q = ap - 1, aq - 1
            lhs = mn_bracket(P, mn_bracket(Q, R))
            rhs = mn_bracket(mn_bracket(P, Q), R)
            corr = mn_bracket(Q, mn_bracket(P, R))
            rhs = (rhs - corr) if (p * q) % 2 == 1 else (rhs + corr)
            assert lhs == rhs


def test_derived_bracket_graded_leibniz():
    # same shape with operator-cochain degrees p = arity
    rng = random.Random(51)
    a = g2_algebra()
    rep = regular_representation(a)

    def br(P, Q):
        return derived_bracket(a, rep, P, Q)

    for _ in range(4):
        for (p, q, r) in [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 1)]:
            P = random_cochain(rng, QQ, p, 2, 2)
            Q = random_cochain(rng, QQ, q, 2, 2)
            R = random_cochain(rng, QQ, r, 2, 2)
            lhs = br(P, br(Q, R))
            rhs = br(br(P, Q), R)
            corr = br(Q, br(P, R))
            rhs = (rhs - corr) if (p * q) % 2 == 1 else (rhs + corr)
            assert lhs == rhs
