import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rankgpt.field import make_context
from rankgpt.gabidulin import GabidulinCode, generator_matrix, q_vandermonde, random_full_rank_vector
from rankgpt.ranklin import (
    BaseMatrix,
    ExtMatrix,
    InvalidPositions,
    column_rank,
    deletion_ranks,
    dual_space,
    expand_to_base,
    hstack,
    lam,
    puncture,
    rank_reduction,
    rank_weight,
    row_space_dim,
    rref,
    vector,
    vstack,
)

from oracles import log_q, rank_right_to_left, span_size

A = 2  # alpha in F_4


def _span_rank(values, ctx):
    return log_q(span_size(values, ctx.add, 0, ctx.q), ctx.q)


# -- expansion and rank weight --------------------------------------------------


def test_expand_zero_and_ones(F4):
    assert expand_to_base(vector([0, 0, 0], F4)).data.tolist() == [[0, 0, 0], [0, 0, 0]]
    assert expand_to_base(vector([1, 1, 1], F4)).data.tolist() == [[1, 1, 1], [0, 0, 0]]


def test_expand_f4_example(F4):
    B = expand_to_base(vector([A, A ^ 1, 1], F4))
    assert B.data.T.tolist() == [[0, 1], [1, 1], [1, 0]]
    assert rank_weight(vector([A, A ^ 1, 1], F4)) == 2


def test_rank_weight_small_cases(F4):
    assert rank_weight(vector([0, 0, 0], F4)) == 0
    assert rank_weight(vector([1, 1, 1], F4)) == 1


@pytest.mark.parametrize("q,m,n", [(2, 6, 5), (3, 3, 4), (2, 4, 7)])
def test_rank_weight_matches_span_enumeration(q, m, n, rng):
    ctx = make_context(q, m)
    for _ in range(15):
        v = ctx.random(rng, n)
        if rng.random() < 0.5:  # force dependencies
            v[-1] = ctx.add(int(v[0]), int(v[1]))
        assert rank_weight(vector(v, ctx)) == _span_rank(v.tolist(), ctx)


def test_column_rank_examples(F4):
    assert column_rank(ExtMatrix.identity(3, F4)) == 3
    assert column_rank(ExtMatrix.zeros(2, 3, F4)) == 0
    row = vector([A, A ^ 1, 1], F4)
    assert column_rank(vstack(row, row.frob(1))) == 2


def test_column_rank_matches_enumeration(rng):
    ctx = make_context(2, 4)
    for _ in range(10):
        M = ExtMatrix.random(2, 5, ctx, rng)
        M.data[:, 4] = ctx.add_arr(M.data[:, 0], M.data[:, 2])
        # columns as tuples; F_q span via pairwise tuple addition
        cols = [tuple(M.data[:, j].tolist()) for j in range(5)]
        add = lambda x, y: tuple(ctx.add(a, b) for a, b in zip(x, y))
        assert column_rank(M) == log_q(span_size(cols, add, (0, 0), 2), 2)


def test_rank_weight_invariant_under_base_transform(F2_12, rng):
    for _ in range(20):
        v = ExtMatrix.random(1, 8, F2_12, rng)
        T = BaseMatrix.random_invertible(8, 2, rng)
        assert rank_weight(v @ T) == rank_weight(v)


def test_corollary_weight_bounded_by_column_rank(F2_12, rng):
    for _ in range(20):
        M = ExtMatrix.random(3, 10, F2_12, rng)
        M = M @ BaseMatrix.random(10, 10, 2, rng)
        x = ExtMatrix.random(1, 3, F2_12, rng)
        assert rank_weight(x @ M) <= column_rank(M)


# -- row space, rref, dual -----------------------------------------------------


def test_row_space_dim_examples(F2_12, rng):
    assert row_space_dim(ExtMatrix.identity(4, F2_12)) == 4
    r = ExtMatrix.random(1, 5, F2_12, rng)
    assert row_space_dim(vstack(r, r)) == 1
    M = ExtMatrix.random(3, 5, F2_12, rng)
    assert row_space_dim(M) == rank_right_to_left(M.tolist(), F2_12) == 3


@pytest.mark.parametrize("q,m", [(2, 12), (3, 4), (2, 3)])
def test_row_space_dim_matches_second_elimination(q, m, rng):
    ctx = make_context(q, m)
    for _ in range(20):
        k, n = int(rng.integers(1, 6)), int(rng.integers(1, 7))
        M = ExtMatrix.random(k, n, ctx, rng)
        if k > 1:
            M.data[-1] = ctx.add_arr(M.data[0], ctx.scale_arr(M.data[1], int(ctx.random(rng))))
        assert row_space_dim(M) == rank_right_to_left(M.tolist(), ctx)


def test_rref_shape(F2_12, rng):
    M = ExtMatrix.random(3, 6, F2_12, rng)
    R, piv = rref(M)
    assert piv == [0, 1, 2]
    assert R[:, :3] == ExtMatrix.identity(3, F2_12)


def test_dual_examples(F4):
    assert dual_space(ExtMatrix.identity(2, F4)).rows == 0
    H = dual_space(vector([1, 1], F4))
    assert H.rows == 1
    assert (vector([1, 1], F4) @ H.T).is_zero()


def _same_row_space(A, B):
    return A.rows == B.rows and rref(A)[0] == rref(B)[0]


@pytest.mark.parametrize("q,m", [(2, 12), (3, 4)])
def test_dual_annihilation_and_involution(q, m, rng):
    ctx = make_context(q, m)
    for _ in range(25):
        k, n = int(rng.integers(1, 6)), int(rng.integers(2, 9))
        M = ExtMatrix.random(k, n, ctx, rng)
        H = dual_space(M)
        assert H.rows == n - row_space_dim(M)
        assert (M @ H.T).is_zero()
        D = dual_space(H)
        assert _same_row_space(D, rref(M)[0][: row_space_dim(M)])


# -- rank reduction --------------------------------------------------------------


def test_rank_reduction_duplicate_column(F2_12, rng):
    c = ExtMatrix.random(2, 1, F2_12, rng)
    M = hstack(c, c)
    M_star, T = rank_reduction(M)
    assert T.is_invertible()
    assert M_star.cols == 1 == column_rank(M)
    assert M @ T == hstack(M_star, ExtMatrix.zeros(2, 1, F2_12))


def test_rank_reduction_zero_matrix(F2_12):
    M_star, T = rank_reduction(ExtMatrix.zeros(2, 3, F2_12))
    assert M_star.cols == 0
    assert T.is_invertible()


def test_rank_reduction_full_rank_gives_identity(F2_12, rng):
    M = ExtMatrix.random(2, 4, F2_12, rng)
    M_star, T = rank_reduction(M)
    assert T == BaseMatrix.identity(4, 2)
    assert M_star == M


@pytest.mark.parametrize("zeros_first", [False, True])
def test_rank_reduction_postcondition(zeros_first, rng):
    ctx = make_context(2, 6)
    for _ in range(30):
        k, n = int(rng.integers(1, 3)), int(rng.integers(2, 12))
        M = ExtMatrix.random(k, n, ctx, rng)
        M_star, T = rank_reduction(M, zeros_first=zeros_first)
        s = column_rank(M)
        zero = ExtMatrix.zeros(k, n - s, ctx)
        expect = hstack(zero, M_star) if zeros_first else hstack(M_star, zero)
        assert T.is_invertible()
        assert M_star.cols == s == column_rank(M_star)
        assert M @ T == expect


def test_rank_reduction_vandermonde_block(F2_12, rng):
    # (X1 | G) with b in the F_q-span of g: column rank n, a zero columns
    from rankgpt.gpt import engineered_b

    n, k, a = 8, 3, 3
    g = random_full_rank_vector(n, F2_12, rng)
    for s in range(a + 1):
        b = engineered_b(g, a, s, rng)
        M = hstack(q_vandermonde(b, k), generator_matrix(GabidulinCode(g, k)))
        M_star, T = rank_reduction(M)
        oracle = rank_weight(hstack(b, g))
        assert M_star.cols == oracle == n + s
        assert (M @ T)[:, oracle:].is_zero()


# -- Frobenius stacking, puncturing ------------------------------------------------


def test_lam_zero_is_identity(F2_12, rng):
    M = ExtMatrix.random(2, 5, F2_12, rng)
    assert lam(M, 0) == M
    assert lam(M, 2).shape == (6, 5)
    assert lam(M, 2)[2:4, :] == M.frob(1)


def test_lam_gabidulin_and_random(F2_12, rng):
    g = random_full_rank_vector(8, F2_12, rng)
    G = generator_matrix(GabidulinCode(g, 3))
    assert [row_space_dim(lam(G, i)) for i in range(5)] == [3, 4, 5, 6, 7]
    M = ExtMatrix.random(2, 8, F2_12, rng)
    assert row_space_dim(lam(M, 2)) == 6


def test_lam_commutes_with_base_matrix(rng):
    for q, m in [(2, 12), (3, 4)]:
        ctx = make_context(q, m)
        for _ in range(10):
            Am = ExtMatrix.random(3, 6, ctx, rng)
            B = BaseMatrix.random(6, 5, q, rng)
            for i in range(4):
                assert lam(Am @ B, i) == lam(Am, i) @ B


def test_prop5_bounds(F2_12, rng):
    n, k, ell = 10, 3, 2
    g = random_full_rank_vector(n, F2_12, rng)
    G = generator_matrix(GabidulinCode(g, k))
    for _ in range(10):
        A_ = hstack(ExtMatrix.random(k, ell, F2_12, rng), G)
        for i in range(n - k):
            d = min((i + 1) * k, ell)
            assert k + i <= row_space_dim(lam(A_, i)) <= k + i + d


def test_puncture(F2_12, rng):
    M = ExtMatrix.random(2, 3, F2_12, rng)
    assert puncture(M, []) == M
    assert puncture(M, [2]) == hstack(M[:, 0:1], M[:, 2:3])
    for bad in ([0], [4], [1, 2, 3]):
        with pytest.raises(InvalidPositions):
            puncture(M, bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 9), st.booleans())
def test_deletion_ranks_brute_force(seed, k, n, dependent):
    ctx = make_context(2, 4)
    rng = np.random.default_rng(seed)
    M = ExtMatrix.random(k, n, ctx, rng)
    if dependent and n > 2:
        M.data[:, -1] = M.data[:, 0]
        M.data[:, 1] = 0
    r, after = deletion_ranks(M)
    assert r == row_space_dim(M)
    if n > 1:
        assert after == [row_space_dim(puncture(M, [j + 1])) for j in range(n)]
