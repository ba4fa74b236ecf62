"""Frobenius-stacking distinguisher and Overbeck-style key recovery.

For G_pub = S (X | G) P with P over F_q, the code spanned by
Lambda_{n-k-1}(G_pub) generically has a one-dimensional dual spanned by
h_pub = (0 | h) P^{-T}, where h is dual to Gab_{n-1}(g).  A base-field
transform Q with h_pub Q = (0 | h*) exposes a Gabidulin support g* (the
vector dual to h*) and a decomposition G_pub = S* (X* | G*) Q^T.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gabidulin import (
    DegenerateSystem,
    GabidulinCode,
    decode,
    generator_matrix,
    support_from_dual,
)
from .gpt import Ciphertext
from .ranklin import (
    BaseMatrix,
    ExtMatrix,
    SingularMatrix,
    dual_space,
    ext_inverse,
    hstack,
    lam,
    rank_reduction,
    rank_weight,
    row_space_dim,
    rref,
)


class OverbeckError(ValueError):
    pass


class DualDimensionNotOne(OverbeckError):
    def __init__(self, dim: int):
        super().__init__(f"dual of the stacked code has dimension {dim}, expected 1")
        self.dim = dim


class RecoveryInconsistent(OverbeckError):
    pass


@dataclass(frozen=True, eq=False)
class AlternativeKey:
    S_star: ExtMatrix
    X_star: ExtMatrix
    g_star: ExtMatrix
    P_star: BaseMatrix
    k: int

    @property
    def n_eff(self) -> int:
        return self.g_star.cols

    @property
    def ell_eff(self) -> int:
        return self.X_star.cols

    @property
    def code(self) -> GabidulinCode:
        return GabidulinCode(self.g_star, self.k)

    def public_matrix(self) -> ExtMatrix:
        return self.S_star @ hstack(self.X_star, generator_matrix(self.code)) @ self.P_star

    def __eq__(self, other):
        if not isinstance(other, AlternativeKey):
            return NotImplemented
        return (self.S_star, self.X_star, self.g_star, self.P_star, self.k) == (
            other.S_star, other.X_star, other.g_star, other.P_star, other.k,
        )


def lambda_profile(G: ExtMatrix, i_max: int) -> list[int]:
    """row_space_dim(Lambda_i(G)) for i = 0..i_max."""
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    return [row_space_dim(lam(G, i)) for i in range(i_max + 1)]


def dual_dimension(G: ExtMatrix, i: int) -> int:
    return G.cols - row_space_dim(lam(G, i))


def recover(G_pub: ExtMatrix, k: int, n_eff: int, ell_eff: int) -> AlternativeKey:
    N = G_pub.cols
    if N != n_eff + ell_eff:
        raise ValueError(f"public length {N} != n_eff + ell_eff = {n_eff + ell_eff}")
    if not 1 <= k < n_eff:
        raise ValueError(f"need 1 <= k < n_eff, got k={k}, n_eff={n_eff}")

    H = dual_space(lam(G_pub, n_eff - k - 1))
    if H.rows != 1:
        raise DualDimensionNotOne(H.rows)
    h_pub = H

    if rank_weight(h_pub) != n_eff:
        raise RecoveryInconsistent(
            f"dual vector has rank weight {rank_weight(h_pub)}, expected {n_eff}"
        )
    h_star, Q = rank_reduction(h_pub, zeros_first=True)
    if not h_pub @ Q == hstack(ExtMatrix.zeros(1, ell_eff, G_pub.ctx), h_star):
        raise RecoveryInconsistent("rank reduction of the dual vector failed")

    try:
        g_star = support_from_dual(h_star)
    except DegenerateSystem as exc:
        raise RecoveryInconsistent(str(exc)) from exc
    if rank_weight(g_star) != n_eff:
        raise RecoveryInconsistent("recovered support is not of full rank weight")

    P_star = Q.T
    G_prime = G_pub @ P_star.inverse()
    Y = G_prime[:, :ell_eff]
    Z = G_prime[:, ell_eff:]
    G_star = generator_matrix(GabidulinCode(g_star, k))

    # S* from Z = S* G*, using k independent columns of G*
    _, piv = rref(G_star)
    if len(piv) != k:
        raise RecoveryInconsistent("Gabidulin generator is rank deficient")
    try:
        S_star = Z[:, piv] @ ext_inverse(G_star[:, piv])
        S_inv = ext_inverse(S_star)
    except SingularMatrix as exc:
        raise RecoveryInconsistent(str(exc)) from exc
    if not S_star @ G_star == Z:
        raise RecoveryInconsistent("trailing block is not a scrambled Gabidulin code")
    X_star = S_inv @ Y

    alt = AlternativeKey(S_star=S_star, X_star=X_star, g_star=g_star, P_star=P_star, k=k)
    if not alt.public_matrix() == G_pub:
        raise RecoveryInconsistent("alternative key does not reproduce the public matrix")
    return alt


def decrypt_with(alt: AlternativeKey, ct: Ciphertext | ExtMatrix) -> ExtMatrix:
    z = ct.z if isinstance(ct, Ciphertext) else ct
    zp = z @ alt.P_star.inverse()
    tail = zp[:, zp.cols - alt.n_eff :]
    m_star, _ = decode(tail, alt.code)
    return m_star @ ext_inverse(alt.S_star)
