"""Arithmetic in F_q and in the extension F_{q^m} = F_q[x]/(f).

Extension elements are stored as plain integers: the coefficient vector
``(c_0, ..., c_{m-1})`` of ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` is packed
as ``sum(c_i * q**i)``.  With this packing the base field F_q sits inside
F_{q^m} as the integers ``0..q-1``, so base-field matrices can be mixed with
extension matrices without conversion.

Two families of operations are offered: scalar ones on Python ints
(``add``, ``mul``, ``inv``, ``frob``...) and vectorised ones on numpy int64
arrays (``add_arr``, ``mul_arr``, ``frob_arr``...).  Characteristic two uses
bitwise kernels, odd characteristic goes through digit arrays.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


class FieldError(ValueError):
    pass


class NonPrimeQ(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b, q):
    """Remainder of a by b over F_q, coefficient lists low -> high."""
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], -1, q)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = (a[-1] * inv_lead) % q
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % q
        a = _poly_trim(a)
    return a


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(modulus, q: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _poly_trim(modulus)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if q == 2:
        fi = sum(c << i for i, c in enumerate(f))
        return all(_gf2_mod(fi, d) for d in range(2, 1 << (deg // 2 + 1)))
    for d in range(1, deg // 2 + 1):
        for low in product(range(q), repeat=d):
            if not _poly_mod(f, list(low) + [1], q):
                return False
    return True


def _smallest_irreducible(q: int, m: int) -> tuple[int, ...]:
    # Ordered by the packed integer value, i.e. lexicographic from the top
    # coefficient down.
    for code in range(q**m):
        low = [(code // q**i) % q for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, q):
            return tuple(cand)
    raise ReducibleModulus(f"no irreducible polynomial of degree {m} over F_{q}")


class FieldContext:
    """The pair F_q subset F_{q^m}, fixed by (q, m, modulus).

    ``modulus`` lists the coefficients of a monic irreducible polynomial
    from the constant term up, so it has ``m + 1`` entries and ends in 1.
    """

    def __init__(self, q: int, m: int, modulus):
        if not is_prime(q):
            raise NonPrimeQ(f"q={q} is not prime")
        if m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
        modulus = tuple(int(c) % q for c in modulus)
        if len(_poly_trim(modulus)) != m + 1 or len(modulus) != m + 1:
            raise DegreeMismatch(f"modulus {modulus} does not have degree {m}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if q**m >= 2**62:
            raise FieldError("q**m too large for the int64 packing")
        if not is_irreducible(modulus, q):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{q}")
        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q**m
        self._binary = q == 2
        self._pows = np.array([q**i for i in range(m)], dtype=np.int64)
        # x^j mod f for j = m .. 2m-2, used by both multiplication kernels
        self._red_digits = np.zeros((max(m - 1, 0), m), dtype=np.int64)
        cur = [(-c) % q for c in modulus[:m]]  # x^m
        for j in range(m - 1):
            self._red_digits[j] = cur
            # multiply by x and reduce
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * fc) % q for c, fc in zip(cur, modulus[:m])]
        if self._binary:
            self._mod_int = sum(c << i for i, c in enumerate(modulus))
        self._frob_cache: dict[int, tuple] = {}

    def __repr__(self):
        return f"FieldContext(q={self.q}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldContext)
            and (self.q, self.m, self.modulus) == (other.q, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.q, self.m, self.modulus))

    # -- packing ----------------------------------------------------------

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            raise DegreeMismatch(f"{len(coeffs)} coefficients for degree {self.m}")
        if any(not 0 <= c < self.q for c in coeffs):
            raise FieldError(f"coefficients {coeffs} not reduced mod {self.q}")
        return sum(int(c) * self.q**i for i, c in enumerate(coeffs))

    def coeffs(self, a: int) -> tuple[int, ...]:
        a = int(a)
        return tuple((a // self.q**i) % self.q for i in range(self.m))

    def digits(self, arr) -> np.ndarray:
        """Coefficient digits of every entry, as a new trailing axis of size m."""
        arr = np.asarray(arr, dtype=np.int64)
        return (arr[..., None] // self._pows) % self.q

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.q) @ self._pows

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def random(self, rng, size=None):
        return rng.integers(0, self.order, size=size, dtype=np.int64)

    def random_base(self, rng, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    # -- scalar arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._binary:
            return a ^ b
        return int(self.add_arr(a, b))

    def sub(self, a: int, b: int) -> int:
        if self._binary:
            return a ^ b
        return int(self.sub_arr(a, b))

    def neg(self, a: int) -> int:
        if self._binary:
            return a
        return int(self.neg_arr(a))

    def mul(self, a: int, b: int) -> int:
        if self._binary:
            a, b = int(a), int(b)
            r = 0
            while b:
                if b & 1:
                    r ^= a
                a <<= 1
                b >>= 1
            for d in range(2 * self.m - 2, self.m - 1, -1):
                if r >> d & 1:
                    r ^= self._mod_int << (d - self.m)
            return r
        return int(self.mul_arr(a, b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = int(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_{q^m}")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, i: int) -> int:
        return int(self.frob_arr(np.int64(a), i))

    # -- vectorised arithmetic ----------------------------------------------

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._binary:
            return a ^ b
        return self.from_digits(self.digits(a) + self.digits(b))

    def sub_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._binary:
            return a ^ b
        return self.from_digits(self.digits(a) - self.digits(b))

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self._binary:
            return a.copy()
        return self.from_digits(-self.digits(a))

    def sum_arr(self, a, axis):
        a = np.asarray(a, dtype=np.int64)
        if self._binary:
            return np.bitwise_xor.reduce(a, axis=axis)
        return self.from_digits(self.digits(a).sum(axis=axis))

    def scale_arr(self, a, c):
        """Multiply extension entries ``a`` by base-field entries ``c``."""
        a = np.asarray(a, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if self._binary:
            return a & -(c & 1)
        return self.from_digits(self.digits(a) * c[..., None])

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        m = self.m
        if self._binary:
            a, b = np.broadcast_arrays(a, b)
            r = np.zeros(a.shape, dtype=np.int64)
            for j in range(m):
                r ^= (a << j) & -((b >> j) & 1)
            for d in range(2 * m - 2, m - 1, -1):
                r ^= -((r >> d) & 1) & (self._mod_int << (d - m))
            return r
        da = self.digits(a)
        db = self.digits(b)
        da, db = np.broadcast_arrays(da, db)
        conv = np.zeros(da.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            conv[..., i : i + m] += da[..., i : i + 1] * db
        low = conv[..., :m] + conv[..., m:] @ self._red_digits
        return self.from_digits(low)

    def inv_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero in F_{q^m}")
        result = np.ones_like(a)
        base = a.copy()
        e = self.order - 2
        while e:
            if e & 1:
                result = self.mul_arr(result, base)
            base = self.mul_arr(base, base)
            e >>= 1
        return result

    def _frob_images(self, i: int):
        """Images of the monomial basis under x -> x^(q^i), i in [0, m)."""
        if i not in self._frob_cache:
            imgs = []
            for j in range(self.m):
                xj = self.q**j  # packed x^j
                imgs.append(self.pow(xj, self.q**i))
            imgs = np.array(imgs, dtype=np.int64)
            self._frob_cache[i] = (imgs, self.digits(imgs))
        return self._frob_cache[i]

    def frob_arr(self, a, i: int):
        """Entrywise a^(q^i); i may be negative and is reduced mod m."""
        a = np.asarray(a, dtype=np.int64)
        i %= self.m
        if i == 0:
            return a.copy()
        imgs, img_digits = self._frob_images(i)
        if self._binary:
            r = np.zeros(a.shape, dtype=np.int64)
            for j in range(self.m):
                r ^= -((a >> j) & 1) & imgs[j]
            return r
        return self.from_digits(self.digits(a) @ img_digits)


@lru_cache(maxsize=None)
def _cached_context(q: int, m: int, modulus: tuple | None) -> FieldContext:
    if not is_prime(q):
        raise NonPrimeQ(f"q={q} is not prime")
    if m < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {m}")
    if modulus is None:
        modulus = _smallest_irreducible(q, m)
    return FieldContext(q, m, modulus)


def make_context(q: int, m: int, modulus=None) -> FieldContext:
    """Build (or fetch from cache) the context for F_{q^m}.

    Without an explicit modulus the smallest monic irreducible polynomial of
    degree m is used, ordering candidates by their packed integer value.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_context(int(q), int(m), modulus)


def ext_add(a: int, b: int, ctx: FieldContext) -> int:
    return ctx.add(a, b)


def ext_sub(a: int, b: int, ctx: FieldContext) -> int:
    return ctx.sub(a, b)


def ext_mul(a: int, b: int, ctx: FieldContext) -> int:
    return ctx.mul(a, b)


def ext_inv(a: int, ctx: FieldContext) -> int:
    return ctx.inv(a)


def frobenius(a: int, i: int, ctx: FieldContext) -> int:
    return ctx.frob(a, i)
