"""The GPT public-key cryptosystem and its "smart approach" variant.

Public matrix layout: ``G_pub = S (X | G) P`` for the general variant and
``G_pub = S (X1 | X2 | G) P`` for the smart one, where X1 is the k x a
q-Vandermonde matrix on a vector b.  P always has entries in F_q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldContext, make_context
from .gabidulin import (
    GabidulinCode,
    LengthMismatch,
    decode,
    generator_matrix,
    q_vandermonde,
    random_error_up_to,
    random_full_rank_vector,
    random_rank_error,
)
from .ranklin import (
    BaseMatrix,
    ExtMatrix,
    ext_inverse,
    hstack,
    rank_weight,
    row_space_dim,
    vector,
)

GENERAL = "general"
SMART = "smart"


class ParamViolation(ValueError):
    pass


@dataclass(frozen=True)
class GptParams:
    q: int
    m: int
    n: int
    k: int
    ell: int
    variant: str = GENERAL
    a: int = 0

    def __post_init__(self):
        self.validate()

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2

    @property
    def length(self) -> int:
        return self.n + self.ell

    def validate(self):
        if self.variant not in (GENERAL, SMART):
            raise ParamViolation(f"unknown variant {self.variant!r}")
        if not 1 <= self.k < self.n <= self.m:
            raise ParamViolation(f"need 1 <= k < n <= m, got k={self.k} n={self.n} m={self.m}")
        if not 0 < self.ell < self.n:
            raise ParamViolation(f"need 0 < ell < n, got ell={self.ell}")
        if self.variant == SMART and not 0 < self.a < self.ell:
            raise ParamViolation(f"smart variant needs 0 < a < ell, got a={self.a}")
        if self.variant == GENERAL and self.a != 0:
            raise ParamViolation("general variant takes a = 0")

    def context(self) -> FieldContext:
        return make_context(self.q, self.m)


@dataclass(frozen=True, eq=False)
class PublicKey:
    G_pub: ExtMatrix
    t: int
    params: GptParams

    def __eq__(self, other):
        if not isinstance(other, PublicKey):
            return NotImplemented
        return (self.G_pub, self.t, self.params) == (other.G_pub, other.t, other.params)


@dataclass(frozen=True, eq=False)
class SecretKey:
    S: ExtMatrix
    P: BaseMatrix
    g: ExtMatrix
    X: ExtMatrix  # full distortion block, (X1 | X2) for the smart variant
    params: GptParams
    b: ExtMatrix | None = None  # smart only

    @property
    def code(self) -> GabidulinCode:
        return GabidulinCode(self.g, self.params.k)

    @property
    def X1(self) -> ExtMatrix | None:
        if self.b is None:
            return None
        return self.X[:, : self.params.a]

    @property
    def X2(self) -> ExtMatrix | None:
        if self.b is None:
            return None
        return self.X[:, self.params.a :]

    def public_matrix(self) -> ExtMatrix:
        return self.S @ hstack(self.X, generator_matrix(self.code)) @ self.P

    def __eq__(self, other):
        if not isinstance(other, SecretKey):
            return NotImplemented
        return (self.S, self.P, self.g, self.X, self.params, self.b) == (
            other.S, other.P, other.g, other.X, other.params, other.b,
        )


@dataclass(frozen=True, eq=False)
class Ciphertext:
    z: ExtMatrix

    def __eq__(self, other):
        if not isinstance(other, Ciphertext):
            return NotImplemented
        return self.z == other.z


def random_invertible(k: int, ctx: FieldContext, rng) -> ExtMatrix:
    while True:
        S = ExtMatrix.random(k, k, ctx, rng)
        if row_space_dim(S) == k:
            return S


def _finish(params, ctx, S, X, g, rng, b=None):
    P = BaseMatrix.random_invertible(params.length, params.q, rng)
    sk = SecretKey(S=S, P=P, g=g, X=X, params=params, b=b)
    pk = PublicKey(G_pub=sk.public_matrix(), t=params.t, params=params)
    return pk, sk


def keygen_general(params: GptParams, rng, g: ExtMatrix | None = None):
    if params.variant != GENERAL:
        raise ParamViolation("keygen_general needs the general variant")
    ctx = params.context()
    if g is None:
        g = random_full_rank_vector(params.n, ctx, rng)
    S = random_invertible(params.k, ctx, rng)
    X = ExtMatrix.random(params.k, params.ell, ctx, rng)
    return _finish(params, ctx, S, X, g, rng)


def keygen_smart(params: GptParams, rng, b: ExtMatrix | None = None, g: ExtMatrix | None = None):
    """Smart-approach key; ``b`` and ``g`` may be forced to engineer s."""
    if params.variant != SMART:
        raise ParamViolation("keygen_smart needs the smart variant")
    ctx = params.context()
    if g is None:
        g = random_full_rank_vector(params.n, ctx, rng)
    if b is None:
        b = vector(ctx.random(rng, params.a), ctx)
    if b.cols != params.a:
        raise ParamViolation(f"b has length {b.cols}, expected a={params.a}")
    S = random_invertible(params.k, ctx, rng)
    X1 = q_vandermonde(b, params.k)
    X2 = ExtMatrix.random(params.k, params.ell - params.a, ctx, rng)
    return _finish(params, ctx, S, hstack(X1, X2), g, rng, b=b)


def keygen(params: GptParams, rng):
    if params.variant == SMART:
        return keygen_smart(params, rng)
    return keygen_general(params, rng)


def engineered_b(g: ExtMatrix, a: int, s: int, rng) -> ExtMatrix:
    """A length-a vector b with rank_weight(b | g) = n + s.

    s fresh directions outside the F_q-span of g are drawn, the remaining
    a - s entries are random F_q-combinations of g and those directions, and
    the result is mixed by a random invertible a x a base matrix.
    """
    ctx = g.ctx
    n = g.cols
    if not 0 <= s <= a or n + s > ctx.m:
        raise ParamViolation(f"cannot reach excess rank {s} with a={a}, n={n}, m={ctx.m}")
    while True:
        u = vector(ctx.random(rng, s), ctx)
        if rank_weight(hstack(g, u)) == n + s:
            break
    span = hstack(g, u)
    combos = span @ BaseMatrix.random(n + s, a - s, ctx.q, rng)
    b = hstack(u, combos) @ BaseMatrix.random_invertible(a, ctx.q, rng)
    return b


def encrypt(msg: ExtMatrix, pk: PublicKey, rng, exact_rank: bool = True, t: int | None = None) -> Ciphertext:
    """z = msg G_pub + e with rank(e) = t (or uniform in 0..t if not exact)."""
    k = pk.params.k
    if msg.rows != 1 or msg.cols != k:
        raise LengthMismatch(f"message of length {msg.cols}, expected {k}")
    t = pk.t if t is None else t
    ctx = pk.G_pub.ctx
    N = pk.G_pub.cols
    if exact_rank:
        e = random_rank_error(N, t, ctx, rng)
    else:
        e = random_error_up_to(N, t, ctx, rng)
    return Ciphertext(msg @ pk.G_pub + e.e)


def decrypt(ct: Ciphertext, sk: SecretKey) -> ExtMatrix:
    n = sk.params.n
    zp = ct.z @ sk.P.inverse()
    tail = zp[:, zp.cols - n :]
    m_star, _ = decode(tail, sk.code)
    return m_star @ ext_inverse(sk.S)


def random_message(k: int, ctx: FieldContext, rng) -> ExtMatrix:
    return ExtMatrix.random(1, k, ctx, rng)
