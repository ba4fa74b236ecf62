"""Linear algebra over F_q and F_{q^m}.

``ExtMatrix`` wraps a 2-D int64 array of packed extension elements together
with its ``FieldContext``; vectors are 1 x n matrices.  ``BaseMatrix`` holds
entries of F_q.  Because F_q embeds in the packing as ``0..q-1``, a
``BaseMatrix`` can multiply an ``ExtMatrix`` from either side.

Position sets (puncturing) are 1-based, as in {1, ..., n}.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .field import FieldContext


class InvalidPositions(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class ExtMatrix:
    __slots__ = ("data", "ctx")

    def __init__(self, data, ctx: FieldContext):
        data = np.array(data, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(1, -1)
        if data.ndim != 2:
            raise ValueError("ExtMatrix needs 2-D data")
        self.data = data
        self.ctx = ctx

    @classmethod
    def zeros(cls, rows, cols, ctx):
        return cls(np.zeros((rows, cols), dtype=np.int64), ctx)

    @classmethod
    def identity(cls, n, ctx):
        return cls(np.eye(n, dtype=np.int64), ctx)

    @classmethod
    def random(cls, rows, cols, ctx, rng):
        return cls(ctx.random(rng, (rows, cols)), ctx)

    @property
    def shape(self):
        return self.data.shape

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def T(self):
        return ExtMatrix(self.data.T, self.ctx)

    def __repr__(self):
        return f"ExtMatrix({self.rows}x{self.cols}, q={self.ctx.q}, m={self.ctx.m})"

    def __eq__(self, other):
        if not isinstance(other, ExtMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None

    def __getitem__(self, key):
        out = self.data[key]
        if np.ndim(out) == 0:
            return int(out)
        return ExtMatrix(out, self.ctx)

    def __add__(self, other):
        return ExtMatrix(self.ctx.add_arr(self.data, _ext_data(other, self.ctx)), self.ctx)

    def __sub__(self, other):
        return ExtMatrix(self.ctx.sub_arr(self.data, _ext_data(other, self.ctx)), self.ctx)

    def __neg__(self):
        return ExtMatrix(self.ctx.neg_arr(self.data), self.ctx)

    def __matmul__(self, other):
        if isinstance(other, BaseMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            prod = self.ctx.scale_arr(self.data[:, :, None], other.data[None, :, :])
            return ExtMatrix(self.ctx.sum_arr(prod, axis=1), self.ctx)
        if isinstance(other, ExtMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            prod = self.ctx.mul_arr(self.data[:, :, None], other.data[None, :, :])
            return ExtMatrix(self.ctx.sum_arr(prod, axis=1), self.ctx)
        return NotImplemented

    def scale(self, c: int) -> "ExtMatrix":
        return ExtMatrix(self.ctx.mul_arr(self.data, c), self.ctx)

    def frob(self, i: int) -> "ExtMatrix":
        return ExtMatrix(self.ctx.frob_arr(self.data, i), self.ctx)

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self):
        return self.data.tolist()


class BaseMatrix:
    """Matrix over the prime field F_q."""

    __slots__ = ("data", "q")

    def __init__(self, data, q: int):
        data = np.array(data, dtype=np.int64) % q
        if data.ndim == 1:
            data = data.reshape(1, -1)
        self.data = data
        self.q = q

    @classmethod
    def identity(cls, n, q):
        return cls(np.eye(n, dtype=np.int64), q)

    @classmethod
    def random(cls, rows, cols, q, rng):
        return cls(rng.integers(0, q, size=(rows, cols)), q)

    @classmethod
    def random_invertible(cls, n, q, rng):
        while True:
            M = cls.random(n, n, q, rng)
            if base_rank(M) == n:
                return M

    @property
    def shape(self):
        return self.data.shape

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def T(self):
        return BaseMatrix(self.data.T, self.q)

    def __repr__(self):
        return f"BaseMatrix({self.rows}x{self.cols}, q={self.q})"

    def __eq__(self, other):
        if not isinstance(other, BaseMatrix):
            return NotImplemented
        return self.q == other.q and bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def __getitem__(self, key):
        out = self.data[key]
        if np.ndim(out) == 0:
            return int(out)
        return BaseMatrix(out, self.q)

    def __matmul__(self, other):
        if isinstance(other, BaseMatrix):
            return BaseMatrix((self.data @ other.data) % self.q, self.q)
        if isinstance(other, ExtMatrix):
            ctx = other.ctx
            prod = ctx.scale_arr(other.data[None, :, :], self.data[:, :, None])
            return ExtMatrix(ctx.sum_arr(prod, axis=1), ctx)
        return NotImplemented

    def inverse(self) -> "BaseMatrix":
        n = self.rows
        if self.cols != n:
            raise SingularMatrix("non-square matrix")
        aug = np.concatenate([self.data, np.eye(n, dtype=np.int64)], axis=1)
        R, piv = _rref_mod_q(aug, self.q, ncols=n)
        if len(piv) < n:
            raise SingularMatrix("matrix is singular over F_q")
        return BaseMatrix(R[:, n:], self.q)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and base_rank(self) == self.rows

    def to_ext(self, ctx: FieldContext) -> ExtMatrix:
        if ctx.q != self.q:
            raise ValueError("characteristic mismatch")
        return ExtMatrix(self.data, ctx)


def _ext_data(x, ctx):
    if isinstance(x, ExtMatrix):
        return x.data
    if isinstance(x, BaseMatrix):
        return x.data
    return np.asarray(x, dtype=np.int64)


def vector(values, ctx: FieldContext) -> ExtMatrix:
    return ExtMatrix(np.asarray(values, dtype=np.int64).reshape(1, -1), ctx)


def hstack(*mats: ExtMatrix) -> ExtMatrix:
    return ExtMatrix(np.hstack([M.data for M in mats]), mats[0].ctx)


def vstack(*mats: ExtMatrix) -> ExtMatrix:
    return ExtMatrix(np.vstack([M.data for M in mats]), mats[0].ctx)


# -- elimination kernels ------------------------------------------------------


def _rref_mod_q(A, q, ncols=None):
    """RREF over F_q; pivots searched only in the first ``ncols`` columns."""
    A = np.array(A, dtype=np.int64) % q
    rows, cols = A.shape
    ncols = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        inv = pow(int(A[r, c]), -1, q)
        A[r] = (A[r] * inv) % q
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - col[hit, None] * A[r]) % q
        pivots.append(c)
        r += 1
    return A, pivots


def _rref_ext(A, ctx: FieldContext, forward_only=False):
    """RREF over F_{q^m}: leftmost pivots, rows normalised to a leading 1."""
    A = np.array(A, dtype=np.int64)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r, c:] = ctx.mul_arr(A[r, c:], ctx.inv(lead))
        col = A[:, c].copy()
        col[r] = 0
        if forward_only:
            col[:r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            upd = ctx.mul_arr(col[hit, None], A[r, None, c:])
            A[hit, c:] = ctx.sub_arr(A[hit, c:], upd)
        pivots.append(c)
        r += 1
    return A, pivots


def rref(M: ExtMatrix) -> tuple[ExtMatrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    R, piv = _rref_ext(M.data, M.ctx)
    return ExtMatrix(R[: len(piv)], M.ctx), piv


def base_rref(B: BaseMatrix) -> tuple[BaseMatrix, list[int]]:
    R, piv = _rref_mod_q(B.data, B.q)
    return BaseMatrix(R[: len(piv)], B.q), piv


def base_rank(B: BaseMatrix) -> int:
    return len(_rref_mod_q(B.data, B.q)[1])


def row_space_dim(M: ExtMatrix) -> int:
    """Rank of M over F_{q^m}."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rref_ext(M.data, M.ctx, forward_only=True)[1])


def ext_inverse(M: ExtMatrix) -> ExtMatrix:
    n = M.rows
    if M.cols != n:
        raise SingularMatrix("non-square matrix")
    aug = np.concatenate([M.data, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = _rref_ext(aug, M.ctx)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise SingularMatrix("matrix is singular over F_{q^m}")
    return ExtMatrix(R[:, n:], M.ctx)


def solve_left(A: ExtMatrix, B: ExtMatrix) -> ExtMatrix:
    """Some X with X @ A == B; raises SingularMatrix when none exists."""
    ctx = A.ctx
    # X A = B  <=>  A^T X^T = B^T
    aug = np.concatenate([A.data.T, B.data.T], axis=1)
    R, piv = _rref_ext(aug, ctx)
    na = A.rows
    if piv and piv[-1] >= na:
        raise SingularMatrix("inconsistent system")
    Xt = np.zeros((na, B.rows), dtype=np.int64)
    for i, c in enumerate(piv):
        Xt[c] = R[i, na:]
    X = ExtMatrix(Xt.T, ctx)
    return X


def _kernel_from_rref(R, piv, cols, neg):
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        for i, p in enumerate(piv):
            K[row, p] = R[i, f]
    if len(free):
        K[:, piv] = neg(K[:, piv])
    return K


def dual_space(M: ExtMatrix) -> ExtMatrix:
    """Canonical basis of the dual code {z : M z^T = 0}."""
    R, piv = _rref_ext(M.data, M.ctx)
    K = _kernel_from_rref(R, piv, M.cols, M.ctx.neg_arr)
    return ExtMatrix(K.reshape(len(K), M.cols), M.ctx)


def base_kernel(B: BaseMatrix) -> BaseMatrix:
    """Basis (as rows) of {v in F_q^n : B v^T = 0}."""
    R, piv = _rref_mod_q(B.data, B.q)
    K = _kernel_from_rref(R, piv, B.cols, lambda x: (-x) % B.q)
    return BaseMatrix(K.reshape(len(K), B.cols), B.q)


# -- rank metric --------------------------------------------------------------


def expand_to_base(v: ExtMatrix) -> BaseMatrix:
    """m x n base-field matrix whose column j holds the coefficients of v_j."""
    if v.rows != 1:
        raise ValueError("expand_to_base takes a 1 x n vector")
    d = v.ctx.digits(v.data[0])  # (n, m)
    return BaseMatrix(d.T, v.ctx.q)


def _stacked_expansion(M: ExtMatrix) -> BaseMatrix:
    d = M.ctx.digits(M.data)  # (k, n, m)
    k, n, m = d.shape
    return BaseMatrix(d.transpose(0, 2, 1).reshape(k * m, n), M.ctx.q)


def rank_weight(v: ExtMatrix) -> int:
    """Dimension of the F_q-span of the entries of a vector."""
    return base_rank(expand_to_base(v))


def column_rank(M: ExtMatrix) -> int:
    """Dimension of the F_q-span of the columns of M."""
    if M.rows == 0:
        return 0
    return base_rank(_stacked_expansion(M))


def rank_reduction(M: ExtMatrix, zeros_first: bool = False):
    """Return (M_star, T) with T invertible over F_q and M T = (M_star | 0).

    With ``zeros_first`` the zero block is moved to the front: M T = (0 | M_star).
    """
    q = M.ctx.q
    n = M.cols
    B = _stacked_expansion(M)
    R, piv = _rref_mod_q(B.data, q)
    K = _kernel_from_rref(R, piv, n, lambda x: (-x) % q)
    E = np.eye(n, dtype=np.int64)[piv]
    blocks = [K, E] if zeros_first else [E, K]
    T = BaseMatrix(np.vstack([b.reshape(-1, n) for b in blocks]).T, q)
    MT = M @ T
    s = len(piv)
    M_star = MT[:, n - s :] if zeros_first else MT[:, :s]
    return M_star, T


# -- Frobenius stacking and puncturing -----------------------------------------


def lam(M: ExtMatrix, i: int) -> ExtMatrix:
    """Vertical stack of M^[0], ..., M^[i]."""
    if i < 0:
        raise ValueError("lambda index must be >= 0")
    return ExtMatrix(np.vstack([M.ctx.frob_arr(M.data, j) for j in range(i + 1)]), M.ctx)


def puncture(M: ExtMatrix, J: Iterable[int]) -> ExtMatrix:
    """Remove the (1-based) columns listed in J, keeping the order of the rest."""
    J = set(int(j) for j in J)
    n = M.cols
    if any(not 1 <= j <= n for j in J):
        raise InvalidPositions(f"positions {sorted(J)} out of range 1..{n}")
    if len(J) >= n:
        raise InvalidPositions("cannot puncture every position")
    keep = [c for c in range(n) if c + 1 not in J]
    return ExtMatrix(M.data[:, keep], M.ctx)


def deletion_ranks(M: ExtMatrix) -> tuple[int, list[int]]:
    """Rank of M and, for every column c, the rank of M with column c removed.

    One elimination serves every column: deleting a free column keeps the
    rank, deleting a pivot column keeps it iff that pivot row still has a
    nonzero entry elsewhere.
    """
    R, piv = _rref_ext(M.data, M.ctx)
    r = len(piv)
    out = [r] * M.cols
    for i, p in enumerate(piv):
        row = R[i].copy()
        row[p] = 0
        if not row.any():
            out[p] = r - 1
    return r, out
