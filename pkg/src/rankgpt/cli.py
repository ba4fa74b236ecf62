"""Command-line driver: ``rankgpt <subcommand> ...``.

Exit status: 0 on success, 1 when a computation phase fails, 2 for usage
errors (bad flags, unreadable or malformed files, invalid parameters).
Randomness comes from numpy's PCG64 generator seeded with ``--seed``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from . import serialize as ser
from .gabidulin import DecodingFailure
from .gpt import GptParams, ParamViolation, decrypt, encrypt, keygen, random_message
from .overbeck import dual_dimension, lambda_profile
from .plots import plot_bench, plot_lambda_profile
from .smartattack import AttackError, AttackResult, attack, verify


class PhaseFailure(Exception):
    def __init__(self, phase, msg):
        super().__init__(f"phase {phase} failed: {msg}")
        self.phase = phase


def _rng(args):
    return np.random.default_rng(args.seed)


def _load(path, reader):
    try:
        return reader(ser.parse(ser.read_text(path)))
    except OSError as exc:
        raise ser.ParseError(f"{path}: {exc.strerror}") from None
    except ser.ParseError as exc:
        raise ser.ParseError(f"{path}: {exc}") from None


def _write(path, text):
    ser.write_text(path, text)


def cmd_keygen(args):
    params = GptParams(args.q, args.m, args.n, args.k, args.ell, args.variant, args.a)
    pk, sk = keygen(params, _rng(args))
    _write(f"{args.out}.pk", ser.serialize(ser.public_key_file(pk)))
    _write(f"{args.out}.sk", ser.serialize(ser.secret_key_file(sk)))
    print(f"wrote {args.out}.pk {args.out}.sk")


def cmd_encrypt(args):
    pk = _load(args.pk, ser.public_key_from)
    rng = _rng(args)
    if args.msg:
        msg = _load(args.msg, ser.message_from)
    else:
        msg = random_message(pk.params.k, pk.G_pub.ctx, rng)
        _write(f"{args.out}.msg", ser.serialize(ser.message_file(msg)))
    try:
        ct = encrypt(msg, pk, rng)
    except ValueError as exc:
        raise PhaseFailure("encrypt", exc) from exc
    _write(args.out, ser.serialize(ser.ciphertext_file(ct)))


def cmd_decrypt(args):
    sk = _load(args.sk, ser.secret_key_from)
    ct = _load(args.ct, ser.ciphertext_from)
    try:
        msg = decrypt(ct, sk)
    except (DecodingFailure, ValueError) as exc:
        raise PhaseFailure("decrypt", exc) from exc
    _write(args.out, ser.serialize(ser.message_file(msg)))


def cmd_distinguish(args):
    pk = _load(args.pk, ser.public_key_from)
    p = pk.params
    i_max = args.i_max if args.i_max is not None else p.n - p.k
    G = pk.G_pub
    prof = lambda_profile(G, i_max)
    print("i\tdim\tdual_dim\trandom\tgabidulin")
    for i, d in enumerate(prof):
        print(f"{i}\t{d}\t{G.cols - d}\t{min(G.cols, (i + 1) * p.k)}\t{min(G.cols, p.k + i)}")
    i0 = p.n - p.k - 1
    print(f"# dual dimension at i=n-k-1={i0}: {dual_dimension(G, i0)}")
    if args.plot:
        plot_lambda_profile(prof, G.cols, p.k, args.plot, title=f"{p.variant} GPT, n={p.n} k={p.k}")


def cmd_attack(args):
    pk = _load(args.pk, ser.public_key_from)
    rng = _rng(args)
    try:
        res = attack(pk, rng, ordered=args.ordered)
    except AttackError as exc:
        raise PhaseFailure(exc.phase, exc.cause) from exc
    ratio = verify(pk, res, args.trials, rng)
    rep = ser.report_from_result(res, ratio, args.trials, seed=args.seed)
    _write(f"{args.out}.report", ser.serialize_report(rep, timings=not args.omit_timings))
    _write(f"{args.out}.alt", ser.serialize(ser.alt_key_file(res.alt, res.s, res.redundancy_set)))
    print(f"s={res.s} w={res.w} redundancy={list(res.redundancy_set)} verify={ratio}")
    if ratio < 1.0:
        raise PhaseFailure("verify", f"ratio {ratio} < 1")


def cmd_verify(args):
    pk = _load(args.pk, ser.public_key_from)
    alt, s, I = _load(args.alt, ser.alt_key_from)
    res = AttackResult(s=s, redundancy_set=I, reduced_pub=None, alt=alt)
    ratio = verify(pk, res, args.trials, _rng(args))
    print(f"verify={ratio}")
    if ratio < 1.0:
        raise PhaseFailure("verify", f"ratio {ratio} < 1")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_bench(args):
    points = bench_mod.grid(args.q, args.m, args.n, args.k, args.ell, args.a)
    if not points:
        raise ParamViolation("bench grid contains no valid smart parameter set")
    rows = bench_mod.run(points, args.trials, args.seed, args.verify_trials, args.workers)
    bench_mod.write_csv(rows, args.out)
    if not args.no_plot:
        plot_bench(rows, str(Path(args.out).with_suffix(".png")))
    failed = sum(1 for r in rows if r["phase"] == "total" and not r["success"])
    print(f"wrote {len(rows)} rows to {args.out}; failures={failed}")


def _params_flags(sp, lists=False):
    kind = _int_list if lists else int
    sp.add_argument("--q", type=kind, default=[2] if lists else 2)
    sp.add_argument("--m", type=kind, required=True)
    sp.add_argument("--n", type=kind, required=True)
    sp.add_argument("--k", type=kind, required=True)
    sp.add_argument("--ell", type=kind, required=True)
    sp.add_argument("--a", type=kind, default=None if lists else 0, required=lists)


def build_parser():
    ap = argparse.ArgumentParser(prog="rankgpt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("keygen", help="generate a key pair")
    _params_flags(sp)
    sp.add_argument("--variant", choices=["general", "smart"], default="general")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="prefix for <out>.pk and <out>.sk")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("encrypt", help="encrypt a message file")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--msg", help="message file; a random message is drawn if omitted")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_encrypt)

    sp = sub.add_parser("decrypt", help="decrypt with the secret key")
    sp.add_argument("--sk", required=True)
    sp.add_argument("--ct", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_decrypt)

    sp = sub.add_parser("distinguish", help="print the Frobenius-stacking profile")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--i-max", type=int, default=None)
    sp.add_argument("--plot", help="also save the profile as an image")
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("attack", help="recover an alternative key from a smart public key")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--out", required=True, help="prefix for <out>.report and <out>.alt")
    sp.add_argument("--ordered", action="store_true", help="scan candidates left to right")
    sp.add_argument("--omit-timings", action="store_true",
                    help="leave wall-times out of the report (byte-reproducible output)")
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("verify", help="measure the decryption rate of a recovered key")
    sp.add_argument("--pk", required=True)
    sp.add_argument("--alt", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=50)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time the attack over a parameter grid")
    _params_flags(sp, lists=True)
    sp.add_argument("--trials", type=int, default=3, help="keys per grid point")
    sp.add_argument("--verify-trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True, help="CSV path; the figure goes next to it")
    sp.add_argument("--no-plot", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except PhaseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ser.ParseError, ParamViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
