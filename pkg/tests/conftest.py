"""Shared fixtures: known algebras, and generators of random verified data.

Random verified Reynolds bundles come from two sources that are verified
by construction: inverses of invertible 1-cochains (weight -dh), and the
zero operator with a weight sampled from the kernel of the degree-2
coboundary matrix.  Transporting any bundle along random unimodular basis
changes of the algebra and the module yields messy-looking but still
exactly verified instances.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from prelie.algebra import (
    PreLieAlgebra,
    Representation,
    regular_representation,
    zero_representation,
)
from prelie.cochain import Cochain, coboundary_matrix, cochain_keys
from prelie.linalg import Matrix
from prelie.reynolds import ReynoldsData, reynolds_from_invertible_cochain
from prelie.scalars import QQ, PrimeField

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


# ---------------------------------------------------------------------------
# fixed algebras


def g3_algebra(field=QQ) -> PreLieAlgebra:
    """dim 3, single product e3.e3 = e2."""
    return PreLieAlgebra.build(field, 3, {(2, 2, 1): 1})


def g2_algebra(field=QQ) -> PreLieAlgebra:
    """dim 2, products e2.e1 = -e1 and e2.e2 = e2."""
    return PreLieAlgebra.build(field, 2, {(1, 0, 0): -1, (1, 1, 1): 1})


def g3b_algebra(field=QQ) -> PreLieAlgebra:
    """dim 3, products e3.e2 = e2 and e3.e3 = -e3."""
    return PreLieAlgebra.build(field, 3, {(2, 1, 1): 1, (2, 2, 2): -1})


def truncated_poly_algebra(field=QQ) -> PreLieAlgebra:
    """Commutative associative truncation on basis (1, x, x^2); unital."""
    entries = {}
    for i in range(3):
        for j in range(3):
            if i + j <= 2:
                entries[(i, j, i + j)] = 1
    return PreLieAlgebra.build(field, 3, entries, unit=(1, 0, 0))


def g3_cocycle(field=QQ) -> Cochain:
    return Cochain.from_entries(field, 2, 3, 3, {((2,), 2): (0, 0, 1)})


@pytest.fixture
def g3():
    return g3_algebra()


@pytest.fixture
def g3_bundle():
    a = g3_algebra()
    return a, regular_representation(a), g3_cocycle()


@pytest.fixture
def g3_data(g3_bundle):
    a, rep, H = g3_bundle
    K = Matrix(QQ, [[1, 2, 3], [4, 5, 6], [0, 0, 0]])
    return ReynoldsData.build(a, rep, H, K)


# ---------------------------------------------------------------------------
# randomized verified instances


def unimodular(rng: random.Random, field, n: int, steps: int = 3) -> Matrix:
    """A small random invertible matrix built from elementary operations."""
    m = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = field(rng.choice([-1, 1]))
        for k in range(n):
            m[j][k] = m[j][k] + c * m[i][k]
    return Matrix(field, m)


def conjugate_algebra(a: PreLieAlgebra, P: Matrix) -> PreLieAlgebra:
    """Transport of structure along x -> P x (an algebra isomorphism)."""
    inv = P.inverse()
    tensor = []
    for i in range(a.dim):
        plane = []
        for j in range(a.dim):
            plane.append(inv.apply(a.mul(P.column(i), P.column(j))))
        tensor.append(plane)
    unit = inv.apply(a.unit) if a.unit is not None else None
    return PreLieAlgebra(a.field, tensor, unit=unit, check=True)


def conjugate_representation(rep: Representation, new_algebra: PreLieAlgebra,
                             P: Matrix, Q: Matrix) -> Representation:
    """Transport along phi = P on the algebra and psi = Q on the module."""
    qinv = Q.inverse()
    L, R = [], []
    for i in range(new_algebra.dim):
        x = P.column(i)
        L.append(qinv * rep.L_of(x) * Q)
        R.append(qinv * rep.R_of(x) * Q)
    return Representation(new_algebra, rep.dim_v, L, R, check=True)


def base_algebras(field=QQ):
    return [
        PreLieAlgebra.abelian(field, 2),
        PreLieAlgebra.abelian(field, 3),
        g3_algebra(field),
        g2_algebra(field),
        g3b_algebra(field),
        truncated_poly_algebra(field),
    ]


def random_algebra(rng: random.Random, field=QQ, max_dim: int = 3) -> PreLieAlgebra:
    candidates = [a for a in base_algebras(field) if a.dim <= max_dim]
    a = rng.choice(candidates)
    P = unimodular(rng, field, a.dim)
    return conjugate_algebra(a, P)


def random_pair(rng: random.Random, field=QQ, max_dim: int = 3):
    """A random verified (algebra, representation) pair."""
    a = random_algebra(rng, field, max_dim)
    kind = rng.choice(["regular", "zero", "conjugated"])
    if kind == "regular":
        return a, regular_representation(a)
    if kind == "zero":
        return a, zero_representation(a, rng.randint(1, max_dim))
    reg = regular_representation(a)
    Q = unimodular(rng, field, a.dim)
    return a, conjugate_representation(reg, a, Matrix.identity(field, a.dim), Q)


def random_cochain(rng: random.Random, field, degree: int, dim_source: int,
                   dim_target: int, lo: int = -2, hi: int = 2) -> Cochain:
    keys = cochain_keys(dim_source, degree)
    return Cochain(field, degree, dim_source, dim_target,
                   [[field(rng.randint(lo, hi)) for _ in range(dim_target)]
                    for _ in keys])


def random_invertible(rng: random.Random, field, n: int) -> Matrix:
    for _ in range(50):
        m = Matrix(field, [[field(rng.randint(-2, 2)) for _ in range(n)]
                           for _ in range(n)])
        if m.inverse() is not None:
            return m
    return Matrix.identity(field, n)


def random_two_cocycle(rng: random.Random, a: PreLieAlgebra, rep: Representation):
    """A random element of the kernel of the degree-2 coboundary matrix."""
    d2 = coboundary_matrix(a, rep, 2)
    basis = d2.kernel().vectors
    field = a.field
    m = rep.dim_v
    keys = cochain_keys(a.dim, 2)
    flat = [field.zero] * (len(keys) * m)
    for vec in basis:
        c = field(rng.randint(-1, 1))
        if c:
            flat = [x + c * y for x, y in zip(flat, vec)]
    values = [flat[i * m:(i + 1) * m] for i in range(len(keys))]
    return Cochain(field, 2, a.dim, m, values)


def random_reynolds_data(rng: random.Random, field=QQ, max_dim: int = 3,
                         invertible_only: bool = False) -> ReynoldsData:
    """A random verified Reynolds bundle.

    Draws from the invertible-cochain construction (weight -dh, operator
    h^{-1}) and, unless ``invertible_only``, from zero operators with a
    random 2-cocycle weight.
    """
    if not invertible_only and rng.random() < 0.3:
        a, rep = random_pair(rng, field, max_dim)
        H = random_two_cocycle(rng, a, rep)
        K = Matrix.zero(field, a.dim, rep.dim_v)
        return ReynoldsData.build(a, rep, H, K)
    a = random_algebra(rng, field, max_dim)
    kind = rng.choice(["regular", "conjugated"])
    if kind == "regular":
        rep = regular_representation(a)
    else:
        Q = unimodular(rng, field, a.dim)
        rep = conjugate_representation(regular_representation(a), a,
                                       Matrix.identity(field, a.dim), Q)
    h = Cochain.from_matrix(random_invertible(rng, field, a.dim))
    return reynolds_from_invertible_cochain(a, rep, h)
