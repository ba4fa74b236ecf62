"""Key recovery against the smart-approach GPT variant.

The public code of a smart key is a general GPT public code of length
n + s + ell - a padded with w = a - s redundant columns, where
n + s = rank_weight(b | g).  The attack finds s from where the Frobenius
stacking stops growing, strips w redundant columns one at a time while the
stacked dimension stays at y = n + s + ell - a, and hands the reduced
matrix to Overbeck's recovery with support length n + s.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .gpt import SMART, GptParams, ParamViolation, PublicKey, encrypt, random_message
from .gabidulin import DecodingFailure
from .overbeck import (
    AlternativeKey,
    DualDimensionNotOne,
    OverbeckError,
    decrypt_with,
    recover,
)
from .ranklin import ExtMatrix, deletion_ranks, lam, puncture, row_space_dim

PHASES = ("compute_s", "redundancy", "overbeck")


class StabilizationNotFound(ValueError):
    pass


class NoRedundancyFound(ValueError):
    pass


class AttackError(RuntimeError):
    """A phase of the attack failed; ``phase`` names it, ``cause`` holds the error."""

    def __init__(self, phase: str, cause: Exception):
        super().__init__(f"attack failed in phase {phase}: {cause}")
        self.phase = phase
        self.cause = cause


@dataclass(eq=False)
class AttackResult:
    s: int
    redundancy_set: tuple[int, ...]  # 1-based positions in the original public code
    reduced_pub: ExtMatrix
    alt: AlternativeKey
    stats: dict = field(default_factory=dict)

    @property
    def w(self) -> int:
        return len(self.redundancy_set)


def _stacked_rank(G, i, cache):
    if i not in cache:
        cache[i] = row_space_dim(lam(G, i))
    return cache[i]


def compute_s(G_pub: ExtMatrix, k: int, n: int, a: int, trace: list | None = None) -> int:
    """Smallest s in [0, a] with rank Lambda_{n+s-k} = rank Lambda_{n+s+1-k}.

    Walks s downward from a while the equality holds, stopping at 0.
    """
    cache: dict[int, int] = {}
    s = a
    while s >= 0:
        lo = _stacked_rank(G_pub, n + s - k, cache)
        hi = _stacked_rank(G_pub, n + s + 1 - k, cache)
        if trace is not None:
            trace.append((s, lo, hi))
        if lo != hi:
            break
        s -= 1
    s += 1
    if s > a:
        raise StabilizationNotFound(
            f"stacked rank still grows at s={a}; not a smart key with a={a}"
        )
    return s


def find_redundancy_set(
    G_pub: ExtMatrix,
    s: int,
    k: int,
    n: int,
    ell: int,
    a: int,
    rng=None,
    ordered: bool = False,
    trace: list | None = None,
) -> list[int]:
    """Remove w = a - s columns while dim Lambda_{n+s-k} stays at n+s+ell-a.

    Candidates are drawn uniformly from the remaining positions (or left to
    right with ``ordered``); a rejected candidate leaves the pool until the
    next acceptance.  Returned positions are 1-based in G_pub.
    """
    w = a - s
    if w == 0:
        return []
    if w < 0:
        raise ValueError(f"s={s} exceeds a={a}")
    if rng is None and not ordered:
        raise ValueError("random candidate order needs an rng")
    y = n + s + ell - a
    f = n + s - k
    current = G_pub
    labels = list(range(1, G_pub.cols + 1))
    rank, after = deletion_ranks(lam(current, f))
    if rank != y:
        raise NoRedundancyFound(f"dim Lambda_{f} of the public code is {rank}, expected {y}")
    accepted: list[int] = []
    pool = list(range(current.cols))
    while len(accepted) < w:
        if not pool:
            raise NoRedundancyFound(
                f"no removable column left after {len(accepted)} of {w} removals"
            )
        j = pool[0] if ordered else pool[int(rng.integers(len(pool)))]
        if after[j] == y:
            accepted.append(labels.pop(j))
            current = puncture(current, [j + 1])
            rank, after = deletion_ranks(lam(current, f))
            if rank != y:
                raise NoRedundancyFound(f"dimension {rank} != {y} after removing column")
            if trace is not None:
                trace.append((accepted[-1], rank))
            pool = list(range(current.cols))
        else:
            pool.remove(j)
    return accepted


def attack(
    pk: PublicKey,
    rng=None,
    params: GptParams | None = None,
    ordered: bool = False,
    retries: int = 5,
) -> AttackResult:
    params = pk.params if params is None else params
    if params.variant != SMART or params.a <= 0:
        raise ParamViolation("the attack targets smart-approach keys with a > 0")
    if rng is None:
        rng = np.random.default_rng()
    G_pub = pk.G_pub
    n, k, ell, a = params.n, params.k, params.ell, params.a
    timings = {p: 0.0 for p in PHASES}
    stats: dict = {"timings": timings, "s_trace": [], "redundancy_trace": [], "retries": 0}

    t0 = time.perf_counter()
    try:
        s = compute_s(G_pub, k, n, a, trace=stats["s_trace"])
    except StabilizationNotFound as exc:
        raise AttackError("compute_s", exc) from exc
    finally:
        timings["compute_s"] += time.perf_counter() - t0

    attempt = 0
    while True:
        t0 = time.perf_counter()
        trace: list = []
        try:
            I = find_redundancy_set(G_pub, s, k, n, ell, a, rng, ordered=ordered, trace=trace)
        except NoRedundancyFound as exc:
            raise AttackError("redundancy", exc) from exc
        finally:
            timings["redundancy"] += time.perf_counter() - t0
        stats["redundancy_trace"] = trace
        reduced = puncture(G_pub, I)

        t0 = time.perf_counter()
        try:
            alt = recover(reduced, k, n + s, ell - a)
            break
        except DualDimensionNotOne as exc:
            if attempt >= retries or not I:
                raise AttackError("overbeck", exc) from exc
            attempt += 1
            stats["retries"] = attempt
        except OverbeckError as exc:
            raise AttackError("overbeck", exc) from exc
        finally:
            timings["overbeck"] += time.perf_counter() - t0

    stats["y"] = n + s + ell - a
    return AttackResult(s=s, redundancy_set=tuple(I), reduced_pub=reduced, alt=alt, stats=stats)


def decrypt_punctured(result: AttackResult, z: ExtMatrix) -> ExtMatrix:
    return decrypt_with(result.alt, puncture(z, result.redundancy_set))


def verify(pk: PublicKey, result: AttackResult, trials: int, rng) -> float:
    """Fraction of fresh ciphertexts the recovered key decrypts exactly.

    Ciphertexts are punctured at the redundancy set first.  Zero trials
    give 1.0.
    """
    if trials <= 0:
        return 1.0
    ctx = pk.G_pub.ctx
    good = 0
    for _ in range(trials):
        msg = random_message(pk.params.k, ctx, rng)
        ct = encrypt(msg, pk, rng)
        try:
            good += decrypt_punctured(result, ct.z) == msg
        except (DecodingFailure, ValueError):
            pass
    return good / trials
