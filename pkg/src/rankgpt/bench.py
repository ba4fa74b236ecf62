"""Benchmark grid for the smart-approach attack.

Each grid point (q, m, n, k, ell, a) runs ``trials`` independent
keygen + attack + verify rounds.  Every round is seeded from
``SeedSequence([seed, point_index, trial])`` so rows are reproducible and
independent of the worker count.
"""

from __future__ import annotations

import csv
import itertools
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .gpt import SMART, GptParams, ParamViolation, keygen_smart
from .smartattack import PHASES, AttackError, attack, verify

FIELDS = [
    "q", "m", "n", "k", "ell", "a", "trial", "s", "w",
    "phase", "wall_time", "success", "complexity",
]


def complexity(p: GptParams) -> int:
    return p.k**3 * (p.n + p.a + 1 - p.k) ** 3


def grid(qs, ms, ns, ks, ells, as_):
    """Valid smart parameter sets from the cartesian product, in input order."""
    out = []
    for q, m, n, k, ell, a in itertools.product(qs, ms, ns, ks, ells, as_):
        try:
            out.append(GptParams(q, m, n, k, ell, SMART, a))
        except ParamViolation:
            continue
    return out


def run_trial(p: GptParams, point: int, trial: int, seed: int, verify_trials: int):
    rng = np.random.default_rng(np.random.SeedSequence([seed, point, trial]))
    pk, _ = keygen_smart(p, rng)
    base = dict(q=p.q, m=p.m, n=p.n, k=p.k, ell=p.ell, a=p.a, trial=trial,
                complexity=complexity(p))
    t0 = time.perf_counter()
    try:
        res = attack(pk, rng)
    except AttackError as exc:
        total = time.perf_counter() - t0
        return [dict(base, s=-1, w=-1, phase=exc.phase, wall_time=total, success=0),
                dict(base, s=-1, w=-1, phase="total", wall_time=total, success=0)]
    total = time.perf_counter() - t0
    ok = int(verify(pk, res, verify_trials, rng) == 1.0)
    rows = [dict(base, s=res.s, w=res.w, phase=ph, wall_time=res.stats["timings"][ph], success=ok)
            for ph in PHASES]
    rows.append(dict(base, s=res.s, w=res.w, phase="total", wall_time=total, success=ok))
    return rows


def _job(args):
    return run_trial(*args)


def run(points, trials: int, seed: int, verify_trials: int = 10, workers: int = 1):
    jobs = [(p, i, t, seed, verify_trials) for i, p in enumerate(points) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_job, jobs))
    else:
        chunks = [_job(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    order = {ph: i for i, ph in enumerate(PHASES + ("total",))}
    rows.sort(key=lambda r: (r["q"], r["m"], r["n"], r["k"], r["ell"], r["a"], r["trial"],
                             order.get(r["phase"], -1)))
    return rows


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({**r, "wall_time": f"{r['wall_time']:.6f}"})


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        for key in FIELDS:
            if key == "phase":
                continue
            r[key] = float(r[key]) if key == "wall_time" else int(r[key])
    return rows
