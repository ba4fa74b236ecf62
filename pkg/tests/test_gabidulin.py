import pytest

from rankgpt.field import make_context
from rankgpt.gabidulin import (
    DecodingFailure,
    DegenerateSystem,
    GabidulinCode,
    GabidulinError,
    InvalidRank,
    LengthMismatch,
    decode,
    dual_vector,
    encode,
    generator_matrix,
    random_full_rank_vector,
    random_rank_error,
    support_from_dual,
)
from rankgpt.ranklin import (
    BaseMatrix,
    ExtMatrix,
    dual_space,
    lam,
    rank_weight,
    rref,
    row_space_dim,
    vector,
)


def _code(n, k, ctx, rng):
    return GabidulinCode(random_full_rank_vector(n, ctx, rng), k)


def test_generator_rows_are_frobenius_powers(F2_12, rng):
    code = _code(8, 4, F2_12, rng)
    G = generator_matrix(code)
    for j in range(4):
        assert G[j : j + 1, :] == code.g.frob(j)
    assert row_space_dim(G) == 4
    assert generator_matrix(GabidulinCode(code.g, 1)) == code.g


def test_code_validation(F2_12, rng):
    g = random_full_rank_vector(6, F2_12, rng)
    with pytest.raises(GabidulinError):
        GabidulinCode(g, 6)
    dep = vector([1, 1, 2], F2_12)
    with pytest.raises(GabidulinError):
        GabidulinCode(dep, 1)


def test_lambda_closure(F2_12, rng):
    code = _code(10, 4, F2_12, rng)
    G = generator_matrix(code)
    for i in range(code.n - code.k):
        big = generator_matrix(GabidulinCode(code.g, code.k + i))
        assert rref(lam(G, i))[0][: code.k + i] == rref(big)[0]


def test_encode_examples(F2_12, rng):
    code = _code(8, 3, F2_12, rng)
    assert encode(ExtMatrix.zeros(1, 3, F2_12), code).is_zero()
    assert encode(vector([1, 0, 0], F2_12), code) == code.g
    with pytest.raises(LengthMismatch):
        encode(vector([1, 0], F2_12), code)


def test_decode_pure_codeword(F2_12, rng):
    code = _code(12, 6, F2_12, rng)
    msg = ExtMatrix.random(1, 6, F2_12, rng)
    out, err = decode(encode(msg, code), code)
    assert out == msg and err.t == 0 and err.e.is_zero()


@pytest.mark.parametrize("q,m,n,k", [(2, 12, 12, 6), (2, 24, 20, 10), (3, 7, 7, 3), (2, 10, 9, 4)])
def test_decode_at_radius(q, m, n, k, rng):
    ctx = make_context(q, m)
    code = _code(n, k, ctx, rng)
    for _ in range(25):
        msg = ExtMatrix.random(1, k, ctx, rng)
        e = random_rank_error(n, code.t, ctx, rng)
        out, err = decode(encode(msg, code) + e.e, code)
        assert out == msg
        assert err.e == e.e and err.t == code.t


def test_decode_beyond_radius_fails_or_differs(F2_12, rng):
    code = _code(12, 6, F2_12, rng)
    fails = 0
    for _ in range(20):
        msg = ExtMatrix.random(1, 6, F2_12, rng)
        e = random_rank_error(12, 5, F2_12, rng)
        try:
            out, _ = decode(encode(msg, code) + e.e, code)
            fails += out != msg
        except DecodingFailure:
            fails += 1
    assert fails == 20


def test_rank_one_sweep_subset(rng):
    ctx = make_context(2, 6)
    code = _code(6, 2, ctx, rng)
    msg = ExtMatrix.random(1, 2, ctx, rng)
    c = encode(msg, code)
    for lam_ in range(1, 64, 7):
        for bits in range(1, 64, 5):
            v = [(bits >> i) & 1 for i in range(6)]
            e = vector([ctx.mul(lam_, x) for x in v], ctx)
            assert decode(c + e, code)[0] == msg


def test_dual_vector_n2(F2_12, rng):
    g = random_full_rank_vector(2, F2_12, rng)
    h = dual_vector(g)
    g1, g2 = g.data[0].tolist()
    # h proportional to (g2, -g1); normalized first entry 1
    assert h.data[0, 0] == 1
    assert h.data[0, 1] == F2_12.div(F2_12.neg(g1), g2)


def test_dual_vector_spans_dual(F2_12, rng):
    for n in (3, 8, 12):
        g = random_full_rank_vector(n, F2_12, rng)
        h = dual_vector(g)
        G = generator_matrix(GabidulinCode(g, n - 1))
        assert (G @ h.T).is_zero()
        assert rank_weight(h) == n
        D = dual_space(G)
        assert D.rows == 1 and rref(D)[0] == rref(h)[0]
        assert support_from_dual(h) == rref(g)[0]


def test_dual_vector_degenerate(F2_12):
    with pytest.raises(DegenerateSystem):
        dual_vector(vector([1, 1, 2], F2_12))


def test_random_rank_error(F2_12, rng):
    assert random_rank_error(12, 0, F2_12, rng).e.is_zero()
    e1 = random_rank_error(12, 1, F2_12, rng)
    assert rank_weight(e1.e) == 1
    assert all(rank_weight(random_rank_error(12, 3, F2_12, rng).e) == 3 for _ in range(200))
    with pytest.raises(InvalidRank):
        random_rank_error(5, 6, F2_12, rng)


def test_prop2_base_transform(F2_12, rng):
    for _ in range(10):
        code = _code(8, 3, F2_12, rng)
        T = BaseMatrix.random_invertible(8, 2, rng)
        lhs = generator_matrix(code) @ T
        rhs = generator_matrix(GabidulinCode(code.g @ T, 3))
        assert rref(lhs)[0] == rref(rhs)[0]
