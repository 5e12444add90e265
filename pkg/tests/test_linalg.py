import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stardefect.linalg import (
    GF32003,
    PrimeField,
    QQ,
    Subspace,
    _echelon_reference,
    independent_rows,
    kernel_basis,
    matmul_mod,
    rank,
    rref,
)

GF65537 = PrimeField(65537)


def random_matrix(rng, rows, cols, p, lo=0, hi=None):
    return rng.integers(lo, hi if hi is not None else p, size=(rows, cols)) % p


def test_rref_identity():
    I = np.eye(2, dtype=np.int64)
    r, R, piv = rref(I, GF32003)
    assert r == 2
    assert np.array_equal(R, I)
    assert piv == (0, 1)


def test_rref_zero_matrix():
    Z = np.zeros((3, 4), dtype=np.int64)
    r, R, piv = rref(Z, GF32003)
    assert r == 0
    assert piv == ()


def test_rref_dependent_rows_rationals():
    M = QQ.matrix([[1, 2], [2, 4]])
    r, R, piv = rref(M, QQ)
    assert r == 1
    assert R[0, 0] == 1 and R[0, 1] == 2


def test_kernel_of_identity_is_zero():
    K = kernel_basis(np.eye(3, dtype=np.int64), GF32003)
    assert K.shape[0] == 0


def test_kernel_single_row():
    M = GF32003.matrix([[1, 1, 1]])
    K = kernel_basis(M, GF32003)
    assert K.shape[0] == 2
    assert not np.any(matmul_mod(M, K.T, GF32003))


def test_kernel_zero_matrix_full():
    K = kernel_basis(np.zeros((2, 5), dtype=np.int64), GF32003)
    assert K.shape[0] == 5


def test_intersect_coordinate_subspaces():
    f = GF32003
    A = Subspace.from_rows(f.matrix([[1, 0, 0], [0, 1, 0]]), f)
    B = Subspace.from_rows(f.matrix([[0, 1, 0], [0, 0, 1]]), f)
    C = A.intersect(B)
    assert C.dim == 1
    assert np.array_equal(C.basis, f.matrix([[0, 1, 0]]))


def test_intersect_idempotent_and_full():
    f = GF32003
    A = Subspace.from_rows(f.matrix([[1, 2, 3], [0, 1, 7]]), f)
    assert A.intersect(A) == A
    assert A.intersect(Subspace.full(3, f)) == A


def test_sum_of_complements_is_full():
    f = GF32003
    A = Subspace.from_rows(f.matrix([[1, 0, 0]]), f)
    B = Subspace.from_rows(f.matrix([[0, 1, 0], [0, 0, 1]]), f)
    assert A.sum(B) == Subspace.full(3, f)


def test_contains():
    f = GF32003
    A = Subspace.from_rows(f.matrix([[1, 0, 0]]), f)
    assert A.contains(np.array([1, 0, 0]))
    assert A.contains(np.array([5, 0, 0]))
    assert not A.contains(np.array([0, 1, 0]))


def test_ambient_mismatch_raises():
    f = GF32003
    A = Subspace.from_rows(f.matrix([[1, 0]]), f)
    B = Subspace.from_rows(f.matrix([[1, 0, 0]]), f)
    with pytest.raises(ValueError):
        A.intersect(B)


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField(3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 14), st.integers(1, 14))
def test_blocked_matches_reference_gfp(seed, nrows, ncols):
    rng = np.random.default_rng(seed)
    M = random_matrix(rng, nrows, ncols, 32003)
    r1, R1, p1 = rref(M, GF32003)
    r2, R2, p2 = _echelon_reference(M, GF32003, reduced=True)
    assert r1 == r2 and p1 == p2
    assert np.array_equal(R1[:r1], R2[:r2])


def test_blocked_matches_reference_large():
    rng = np.random.default_rng(7)
    M = random_matrix(rng, 150, 201, 32003)
    M[40:50] = 0  # force some dependent structure
    M[60:90] = M[0:30]
    r1, R1, p1 = rref(M, GF32003)
    r2, R2, p2 = _echelon_reference(M, GF32003, reduced=True)
    assert (r1, p1) == (r2, p2)
    assert np.array_equal(R1[:r1], R2[:r2])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 8))
def test_rank_transpose_invariance(seed, nrows, ncols):
    rng = np.random.default_rng(seed)
    M = random_matrix(rng, nrows, ncols, 32003)
    assert rank(M, GF32003) == rank(M.T.copy(), GF32003)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 9), st.integers(1, 9))
def test_rank_nullity(seed, nrows, ncols):
    rng = np.random.default_rng(seed)
    M = random_matrix(rng, nrows, ncols, 32003)
    K = kernel_basis(M, GF32003)
    assert K.shape[0] + rank(M, GF32003) == ncols
    if K.size:
        assert not np.any(matmul_mod(M, K.T, GF32003))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_modular_rank_matches_rational_rank_small_entries(seed, nrows, ncols):
    # small integer entries: no denominator can be divisible by 32003
    rng = np.random.default_rng(seed)
    M = rng.integers(-3, 4, size=(nrows, ncols))
    r_q = rank(QQ.matrix(M.tolist()), QQ)
    r_p = rank(M % 32003, GF32003)
    assert r_q == r_p


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_subspace_canonical_equality(seed):
    # the same span presented via two scrambled generating sets has one basis
    rng = np.random.default_rng(seed)
    f = GF32003
    B = random_matrix(rng, 3, 7, 32003)
    C1 = random_matrix(rng, 5, 3, 32003, lo=0)
    C2 = random_matrix(rng, 6, 3, 32003, lo=0)
    S1 = Subspace.from_rows(matmul_mod(C1, B, f), f)
    S2 = Subspace.from_rows(matmul_mod(C2, B, f), f)
    span = Subspace.from_rows(B, f)
    if S1.dim == span.dim:
        assert S1 == span
    assert S1.is_subspace_of(span) and S2.is_subspace_of(span)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 9))
def test_intersection_dimension_formula(seed, n):
    rng = np.random.default_rng(seed)
    f = GF32003
    A = Subspace.from_rows(random_matrix(rng, rng.integers(1, n + 1), n, 32003), f)
    B = Subspace.from_rows(random_matrix(rng, rng.integers(1, n + 1), n, 32003), f)
    inter = A.intersect(B)
    total = A.sum(B)
    assert inter.dim + total.dim == A.dim + B.dim
    assert inter.is_subspace_of(A) and inter.is_subspace_of(B)


def test_independent_rows_spans():
    rng = np.random.default_rng(3)
    f = GF32003
    M = random_matrix(rng, 10, 4, 32003)
    M[5] = M[0]
    M[7] = (M[1] + M[2]) % 32003
    keep = independent_rows(M, f)
    assert len(keep) == rank(M, f)
    assert Subspace.from_rows(M[keep], f) == Subspace.from_rows(M, f)


def test_field_cross_check_dimensions():
    rng = np.random.default_rng(11)
    M = rng.integers(-5, 6, size=(20, 30))
    assert rank(M % 32003, GF32003) == rank(M % 65537, GF65537)
