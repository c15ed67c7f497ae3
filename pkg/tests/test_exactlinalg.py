"""Tests for exact integer/rational linear algebra.

The determinant oracle used here is recursive Laplace expansion, kept
deliberately independent of the Bareiss implementation under test.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubiclat.exactlinalg import (
    IntMatrix,
    RatMatrix,
    determinant,
    inverse_unimodular,
    kernel_basis,
    ldlt_signature,
    saturate_rows,
    sign_normalize,
    smith_normal_form,
    xgcd,
)


def laplace_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


def random_matrix(rng, nrows, ncols, lim=20):
    return IntMatrix([[rng.randint(-lim, lim) for _ in range(ncols)] for _ in range(nrows)])


def random_unimodular(rng, n, steps=12):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        k = rng.randint(-2, 2)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5 and n > 1:
        m[0], m[1] = m[1], m[0]
    return IntMatrix(m)


def snf_diag(D):
    return [D.rows[t][t] for t in range(min(D.nrows, D.ncols))]


# ---------------------------------------------------------------------------
# xgcd


def test_xgcd_basics():
    for a, b in [(0, 0), (0, 5), (5, 0), (12, 18), (-12, 18), (7, -3), (1, 1)]:
        g, x, y = xgcd(a, b)
        assert g >= 0
        assert a * x + b * y == g
        if a or b:
            assert a % g == 0 and b % g == 0


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd_identity(a, b):
    g, x, y = xgcd(a, b)
    assert a * x + b * y == g
    assert g >= 0


# ---------------------------------------------------------------------------
# smith normal form


def test_snf_identity_is_canonical():
    I3 = IntMatrix.identity(3)
    D, U, V = smith_normal_form(I3)
    assert D == I3 and U == I3 and V == I3


def test_snf_zero_matrix():
    Z = IntMatrix.zeros(2, 2)
    D, U, V = smith_normal_form(Z)
    assert D == Z
    assert U == IntMatrix.identity(2)
    assert V == IntMatrix.identity(2)


def test_snf_a2_gram():
    # hand row reduction gives diag(1, 3); the product equals |det| = 3
    M = IntMatrix([[2, -1], [-1, 2]])
    D, U, V = smith_normal_form(M)
    assert snf_diag(D) == [1, 3]
    assert (U @ M @ V) == D


def test_snf_rectangular_and_zero_rows():
    M = IntMatrix([[2, 4, 6]])
    D, U, V = smith_normal_form(M)
    assert snf_diag(D) == [2]
    assert (U @ M @ V) == D
    M0 = IntMatrix([], ncols=4)
    D, U, V = smith_normal_form(M0)
    assert D.nrows == 0 and V == IntMatrix.identity(4)


def test_snf_random_reconstruction():
    rng = random.Random(20260810)
    for _ in range(400):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        M = random_matrix(rng, nr, nc)
        D, U, V = smith_normal_form(M)
        assert (U @ M @ V) == D
        assert abs(laplace_det([list(r) for r in U.rows])) == 1
        assert abs(laplace_det([list(r) for r in V.rows])) == 1
        diag = snf_diag(D)
        assert all(x >= 0 for x in diag)
        nonzero = [x for x in diag if x != 0]
        assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        # off-diagonal of D vanishes
        assert all(
            D.rows[i][j] == 0
            for i in range(nr)
            for j in range(nc)
            if i != j
        )


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_snf_property(nr, nc, data):
    rows = [
        [data.draw(st.integers(-20, 20)) for _ in range(nc)] for _ in range(nr)
    ]
    M = IntMatrix(rows)
    D, U, V = smith_normal_form(M)
    assert (U @ M @ V) == D


# ---------------------------------------------------------------------------
# determinant


def test_determinant_examples():
    assert determinant(IntMatrix([[0, 1], [1, 0]])) == -1
    assert determinant(IntMatrix([[-2, 1, 0], [1, -2, 1], [0, 1, 8]])) == 26
    assert determinant(IntMatrix([[-26]])) == -26


def test_determinant_rejects_nonsquare():
    with pytest.raises(ValueError):
        determinant(IntMatrix([[1, 2, 3], [4, 5, 6]]))


def test_determinant_against_laplace_oracle():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(1, 5)
        M = random_matrix(rng, n, n, lim=9)
        assert determinant(M) == laplace_det([list(r) for r in M.rows])


def test_determinant_equals_snf_product_up_to_sign():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 5)
        M = random_matrix(rng, n, n, lim=8)
        det = determinant(M)
        if det == 0:
            continue
        D, _, _ = smith_normal_form(M)
        prod = 1
        for x in snf_diag(D):
            prod *= x
        assert abs(det) == prod


# ---------------------------------------------------------------------------
# kernels and saturation


def test_kernel_examples():
    assert kernel_basis(IntMatrix.identity(3)) == []
    assert kernel_basis(IntMatrix([[1, 1]])) == [(1, -1)]
    # saturation: the kernel of [[2, 4]] is generated by the primitive (2, -1)
    assert kernel_basis(IntMatrix([[2, 4]])) == [(2, -1)]


def test_kernel_annihilates_and_is_saturated():
    rng = random.Random(17)
    for _ in range(120):
        nr, nc = rng.randint(1, 4), rng.randint(1, 5)
        M = random_matrix(rng, nr, nc, lim=6)
        basis = kernel_basis(M)
        for v in basis:
            assert M.mul_vec(v) == (0,) * nr
        if basis:
            stacked = IntMatrix(basis, ncols=nc)
            D, _, _ = smith_normal_form(stacked)
            assert all(x == 1 for x in snf_diag(D) if x != 0)
            assert all(x == 1 for x in snf_diag(D)[: len(basis)])


def test_saturate_rows():
    sat = saturate_rows(IntMatrix([[2, 0]]))
    assert sat == [(1, 0)]
    sat = saturate_rows(IntMatrix([[1, 0], [0, 1]]))
    assert len(sat) == 2


# ---------------------------------------------------------------------------
# signatures


def test_ldlt_examples():
    assert ldlt_signature(IntMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    from cubiclat.lattices import e8

    assert ldlt_signature(e8().gram) == (8, 0, 0)
    assert ldlt_signature(IntMatrix([[0]])) == (0, 0, 1)


def test_ldlt_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        ldlt_signature(IntMatrix([[0, 1], [2, 0]]))


def test_ldlt_counts_sum_to_dimension():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 5)
        M = random_matrix(rng, n, n, lim=5)
        sym = IntMatrix(
            [[M.rows[i][j] + M.rows[j][i] for j in range(n)] for i in range(n)]
        )
        p, m, z = ldlt_signature(sym)
        assert p + m + z == n


def test_ldlt_congruence_invariance():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        M = random_matrix(rng, n, n, lim=5)
        sym = IntMatrix(
            [[M.rows[i][j] + M.rows[j][i] for j in range(n)] for i in range(n)]
        )
        Q = random_unimodular(rng, n)
        cong = Q.transpose() @ sym @ Q
        assert ldlt_signature(sym) == ldlt_signature(cong)


def test_ldlt_rational_entries():
    G = RatMatrix([[Fraction(1, 2), 0], [0, Fraction(-2, 3)]])
    assert ldlt_signature(G) == (1, 1, 0)


def test_ldlt_hyperbolic_pivot_needs_column_swap():
    # zero diagonal, off-diagonal pair in a non-adjacent position
    G = IntMatrix([[0, 0, 1], [0, 0, 2], [1, 2, 0]])
    assert ldlt_signature(G) == (1, 1, 1)


def test_ldlt_hyperbolic_pivot_needs_row_swap():
    # the first nonzero off-diagonal entry sits below the working row
    G = IntMatrix([[0, 0, 0], [0, 0, 3], [0, 3, 0]])
    assert ldlt_signature(G) == (1, 1, 1)
    G4 = IntMatrix(
        [[0, 0, 0, 0], [0, 0, 0, 5], [0, 0, 2, 0], [0, 5, 0, 0]]
    )
    assert ldlt_signature(G4) == (2, 1, 1)


# ---------------------------------------------------------------------------
# unimodular inverse


def test_inverse_unimodular():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 3)
        Q = random_unimodular(rng, n)
        assert (Q @ inverse_unimodular(Q)) == IntMatrix.identity(n)
    with pytest.raises(ValueError):
        inverse_unimodular(IntMatrix([[2]]))


def test_sign_normalize():
    assert sign_normalize((0, -2, 1)) == (0, 2, -1)
    assert sign_normalize((0, 0)) == (0, 0)
    assert sign_normalize((3, -1)) == (3, -1)
