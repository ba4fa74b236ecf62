"""Gabidulin codes: generator matrices, encoding, decoding, dual vectors.

The decoder is a Welch-Berlekamp style interpolation over q-linearized
polynomials.  For a received word y = f(g) + e with rank(e) <= t it finds
V (q-degree <= t) and N (q-degree <= k+t-1), not both zero, such that
V(y_i) = N(g_i) for every position.  Any such pair satisfies N = V o f, and
the message polynomial f is recovered by left division.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldContext
from .ranklin import (
    BaseMatrix,
    ExtMatrix,
    base_rank,
    dual_space,
    rank_weight,
    vector,
)


class GabidulinError(ValueError):
    pass


class LengthMismatch(GabidulinError):
    pass


class DecodingFailure(GabidulinError):
    pass


class DegenerateSystem(GabidulinError):
    pass


class InvalidRank(GabidulinError):
    pass


@dataclass(frozen=True, eq=False)
class GabidulinCode:
    g: ExtMatrix  # 1 x n support vector of full rank weight
    k: int

    def __post_init__(self):
        n = self.g.cols
        if not 1 <= self.k < n:
            raise GabidulinError(f"need 1 <= k < n, got k={self.k}, n={n}")
        if n > self.ctx.m:
            raise GabidulinError(f"length n={n} exceeds extension degree m={self.ctx.m}")
        if rank_weight(self.g) != n:
            raise GabidulinError("support vector g must have rank weight n")

    @property
    def ctx(self) -> FieldContext:
        return self.g.ctx

    @property
    def n(self) -> int:
        return self.g.cols

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2


@dataclass(frozen=True, eq=False)
class RankError:
    e: ExtMatrix
    t: int


def q_vandermonde(v: ExtMatrix, rows: int) -> ExtMatrix:
    """Matrix whose row j is v^[j], for j = 0..rows-1."""
    ctx = v.ctx
    return ExtMatrix(np.vstack([ctx.frob_arr(v.data[0], j) for j in range(rows)]), ctx)


def generator_matrix(code: GabidulinCode) -> ExtMatrix:
    return q_vandermonde(code.g, code.k)


def encode(msg: ExtMatrix, code: GabidulinCode) -> ExtMatrix:
    if msg.cols != code.k or msg.rows != 1:
        raise LengthMismatch(f"message of length {msg.cols}, code dimension {code.k}")
    return msg @ generator_matrix(code)


def _left_divide(V, N, k, ctx):
    """Solve V o f = N for f with q-degree < k, or return None."""
    dv = max(i for i, c in enumerate(V) if c)
    vlead_inv = ctx.inv(V[dv])
    f = [0] * k
    N = list(N) + [0] * max(0, dv + k - len(N))
    for j in range(k - 1, -1, -1):
        l = j + dv
        acc = N[l]
        for i in range(dv):
            if l - i < k:
                acc = ctx.sub(acc, ctx.mul(V[i], ctx.frob(f[l - i], i)))
        f[j] = ctx.frob(ctx.mul(acc, vlead_inv), -dv)
    # remainder check on every coefficient of N
    comp = [0] * (len(V) + k)
    for i, vi in enumerate(V):
        if vi:
            for j, fj in enumerate(f):
                comp[i + j] = ctx.add(comp[i + j], ctx.mul(vi, ctx.frob(fj, i)))
    width = max(len(comp), len(N))
    comp += [0] * (width - len(comp))
    N += [0] * (width - len(N))
    if comp != N:
        return None
    return f


def decode(y: ExtMatrix, code: GabidulinCode) -> tuple[ExtMatrix, RankError]:
    """Correct an error of rank at most floor((n-k)/2).

    Returns the message and the error; raises DecodingFailure when the
    error is beyond the radius or the word is inconsistent.
    """
    ctx = code.ctx
    n, k, t = code.n, code.k, code.t
    if y.cols != n or y.rows != 1:
        raise LengthMismatch(f"received word of length {y.cols}, code length {n}")
    yv = y.data[0]
    gv = code.g.data[0]
    cols = [ctx.frob_arr(yv, j) for j in range(t + 1)]
    cols += [ctx.neg_arr(ctx.frob_arr(gv, j)) for j in range(k + t)]
    A = ExtMatrix(np.stack(cols, axis=1), ctx)
    K = dual_space(A)
    if K.rows == 0:
        raise DecodingFailure("interpolation system has only the trivial solution")
    sol = [int(x) for x in K.data[0]]
    V, N = sol[: t + 1], sol[t + 1 :]
    if not any(V):
        raise DecodingFailure("interpolation returned V = 0")
    f = _left_divide(V, N, k, ctx)
    if f is None:
        raise DecodingFailure("left division left a remainder")
    msg = vector(f, ctx)
    err = y - encode(msg, code)
    w = rank_weight(err)
    if w > t:
        raise DecodingFailure(f"decoded error has rank {w} > {t}")
    return msg, RankError(err, w)


def dual_vector(g: ExtMatrix) -> ExtMatrix:
    """h spanning the dual of Gab_{n-1}(g), first nonzero entry scaled to 1."""
    n = g.cols
    ctx = g.ctx
    if rank_weight(g) != n or n > ctx.m:
        raise DegenerateSystem("g must have rank weight n <= m")
    H = dual_space(q_vandermonde(g, n - 1))
    if H.rows != 1:
        raise DegenerateSystem(f"dual has dimension {H.rows}, expected 1")
    return normalize_first(H)


def normalize_first(v: ExtMatrix) -> ExtMatrix:
    ctx = v.ctx
    nz = np.flatnonzero(v.data[0])
    if nz.size == 0:
        return v
    return v.scale(ctx.inv(int(v.data[0, nz[0]])))


def support_from_dual(h: ExtMatrix) -> ExtMatrix:
    """Inverse of ``dual_vector``: g with sum_i g_i^[j] h_i = 0 for j <= n-2.

    Applying [-j] to equation j makes it linear in g:
    sum_i g_i h_i^[-j] = 0.
    """
    n = h.cols
    ctx = h.ctx
    rows = np.vstack([ctx.frob_arr(h.data[0], -j) for j in range(n - 1)])
    K = dual_space(ExtMatrix(rows, ctx))
    if K.rows != 1:
        raise DegenerateSystem(f"kernel has dimension {K.rows}, expected 1")
    return normalize_first(K)


def random_full_rank_vector(n: int, ctx: FieldContext, rng) -> ExtMatrix:
    if n > ctx.m:
        raise InvalidRank(f"no vector of length {n} has rank weight {n} when m={ctx.m}")
    while True:
        g = vector(ctx.random(rng, n), ctx)
        if rank_weight(g) == n:
            return g


def random_rank_error(n: int, t: int, ctx: FieldContext, rng) -> RankError:
    """e = u V with u of rank t and V a full-rank t x n base matrix."""
    if not 0 <= t <= min(n, ctx.m):
        raise InvalidRank(f"rank {t} impossible for length {n}, m={ctx.m}")
    if t == 0:
        return RankError(ExtMatrix.zeros(1, n, ctx), 0)
    u = random_full_rank_vector(t, ctx, rng)
    while True:
        Vb = BaseMatrix.random(t, n, ctx.q, rng)
        if base_rank(Vb) == t:
            break
    return RankError(u @ Vb, t)


def random_error_up_to(n: int, t: int, ctx: FieldContext, rng) -> RankError:
    """Error whose rank is uniform in 0..t."""
    r = int(rng.integers(0, t + 1))
    return random_rank_error(n, r, ctx, rng)

