"""Line-oriented text format for keys, ciphertexts, messages and reports.

Layout::

    GPTv1
    field q=2 m=4 mod=1,1,0,0,1
    params kind=pk variant=smart n=... k=... ell=... a=... t=...
    mat G_pub 2 6
    1,0,0,0 0,1,0,0 ...
    ...

Every extension element is written as its m comma-separated coefficients,
constant term first.  Base-field matrices use the same element encoding.
Output is canonical: single spaces, no trailing whitespace, LF endings and
a final newline.  Attack reports use ``report``/``trace``/``time`` lines
instead of matrix blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .field import FieldContext, FieldError, make_context
from .gpt import Ciphertext, GptParams, PublicKey, SecretKey
from .overbeck import AlternativeKey
from .ranklin import BaseMatrix, ExtMatrix

MAGIC = "GPTv1"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line


@dataclass
class KeyFile:
    ctx: FieldContext
    params: dict[str, str] = field(default_factory=dict)
    blocks: dict[str, ExtMatrix] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, KeyFile):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and list(self.params.items()) == list(other.params.items())
            and list(self.blocks) == list(other.blocks)
            and all(self.blocks[r] == other.blocks[r] for r in self.blocks)
        )


def format_element(a: int, ctx: FieldContext) -> str:
    return ",".join(str(c) for c in ctx.coeffs(a))


def _format_row(row, ctx) -> str:
    digits = ctx.digits(row)
    return " ".join(",".join(map(str, d)) for d in digits.tolist())


def serialize(kf: KeyFile) -> str:
    ctx = kf.ctx
    lines = [
        MAGIC,
        f"field q={ctx.q} m={ctx.m} mod={','.join(map(str, ctx.modulus))}",
        ("params " + " ".join(f"{k}={v}" for k, v in kf.params.items())).rstrip(),
    ]
    for role, M in kf.blocks.items():
        lines.append(f"mat {role} {M.rows} {M.cols}")
        lines.extend(_format_row(row, ctx) for row in M.data)
    return "\n".join(lines) + "\n"


def _kv(tokens, lineno):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", lineno)
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _ints(text, lineno, what):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"malformed {what} {text!r}", lineno) from None


def _header(lines):
    if not lines or lines[0] != MAGIC:
        raise ParseError(f"missing {MAGIC} header", 1)
    if len(lines) < 2 or not lines[1].startswith("field "):
        raise ParseError("missing field line", 2)
    f = _kv(lines[1].split()[1:], 2)
    try:
        q, m = int(f["q"]), int(f["m"])
        mod = _ints(f["mod"], 2, "modulus")
        ctx = make_context(q, m, mod)
    except KeyError as exc:
        raise ParseError(f"field line lacks {exc.args[0]}", 2) from None
    except (FieldError, ValueError) as exc:
        raise ParseError(f"bad field: {exc}", 2) from None
    return ctx


def parse(text: str) -> KeyFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    ctx = _header(lines)
    if len(lines) < 3 or not lines[2].startswith("params"):
        raise ParseError("missing params line", 3)
    params = _kv(lines[2].split()[1:], 3)
    blocks: dict[str, ExtMatrix] = {}
    i = 3
    while i < len(lines):
        lineno = i + 1
        parts = lines[i].split(" ")
        if len(parts) != 4 or parts[0] != "mat":
            raise ParseError(f"expected 'mat <role> <rows> <cols>', got {lines[i]!r}", lineno)
        role = parts[1]
        try:
            rows, cols = int(parts[2]), int(parts[3])
        except ValueError:
            raise ParseError(f"bad dimensions in {lines[i]!r}", lineno) from None
        data = np.zeros((rows, cols, ctx.m), dtype=np.int64)
        for r in range(rows):
            i += 1
            if i >= len(lines):
                raise ParseError(f"block {role} truncated: {r} of {rows} rows present", i + 1)
            cells = lines[i].split(" ")
            if len(cells) != cols:
                raise ParseError(f"block {role}: expected {cols} entries, got {len(cells)}", i + 1)
            for c, cell in enumerate(cells):
                coeffs = _ints(cell, i + 1, "element")
                if len(coeffs) != ctx.m or any(not 0 <= x < ctx.q for x in coeffs):
                    raise ParseError(f"block {role}: bad element {cell!r}", i + 1)
                data[r, c] = coeffs
        blocks[role] = ExtMatrix(ctx.from_digits(data).reshape(rows, cols), ctx)
        i += 1
    return KeyFile(ctx, params, blocks)


# -- typed views ----------------------------------------------------------------


def _params_fields(p: GptParams, kind: str) -> dict[str, str]:
    return {
        "kind": kind,
        "variant": p.variant,
        "n": str(p.n),
        "k": str(p.k),
        "ell": str(p.ell),
        "a": str(p.a),
        "t": str(p.t),
    }


def _require(kf: KeyFile, kind: str, roles):
    if kf.params.get("kind") != kind:
        raise ParseError(f"expected a {kind} file, got kind={kf.params.get('kind')}")
    for role in roles:
        if role not in kf.blocks:
            raise ParseError(f"missing block {role}")


def _params_from(kf: KeyFile) -> GptParams:
    try:
        p = GptParams(
            q=kf.ctx.q,
            m=kf.ctx.m,
            n=int(kf.params["n"]),
            k=int(kf.params["k"]),
            ell=int(kf.params["ell"]),
            variant=kf.params["variant"],
            a=int(kf.params["a"]),
        )
    except KeyError as exc:
        raise ParseError(f"params line lacks {exc.args[0]}") from None
    except ValueError as exc:
        raise ParseError(f"bad params: {exc}") from None
    if "t" in kf.params and int(kf.params["t"]) != p.t:
        raise ParseError(f"t={kf.params['t']} inconsistent with n, k")
    return p


def _base(M: ExtMatrix, role: str) -> BaseMatrix:
    if (M.data >= M.ctx.q).any():
        raise ParseError(f"block {role} must have entries in the base field")
    return BaseMatrix(M.data, M.ctx.q)


def public_key_file(pk: PublicKey) -> KeyFile:
    return KeyFile(pk.G_pub.ctx, _params_fields(pk.params, "pk"), {"G_pub": pk.G_pub})


def public_key_from(kf: KeyFile) -> PublicKey:
    _require(kf, "pk", ["G_pub"])
    p = _params_from(kf)
    G = kf.blocks["G_pub"]
    if G.shape != (p.k, p.length):
        raise ParseError(f"G_pub has shape {G.shape}, expected {(p.k, p.length)}")
    return PublicKey(G, p.t, p)


def secret_key_file(sk: SecretKey) -> KeyFile:
    blocks = {"S": sk.S, "P": sk.P.to_ext(sk.S.ctx), "g": sk.g, "X": sk.X}
    if sk.b is not None:
        blocks["b"] = sk.b
    return KeyFile(sk.S.ctx, _params_fields(sk.params, "sk"), blocks)


def secret_key_from(kf: KeyFile) -> SecretKey:
    _require(kf, "sk", ["S", "P", "g", "X"])
    p = _params_from(kf)
    b = kf.blocks.get("b")
    return SecretKey(
        S=kf.blocks["S"],
        P=_base(kf.blocks["P"], "P"),
        g=kf.blocks["g"],
        X=kf.blocks["X"],
        params=p,
        b=b,
    )


def ciphertext_file(ct: Ciphertext) -> KeyFile:
    return KeyFile(ct.z.ctx, {"kind": "ct", "length": str(ct.z.cols)}, {"z": ct.z})


def ciphertext_from(kf: KeyFile) -> Ciphertext:
    _require(kf, "ct", ["z"])
    return Ciphertext(kf.blocks["z"])


def message_file(msg: ExtMatrix) -> KeyFile:
    return KeyFile(msg.ctx, {"kind": "msg", "length": str(msg.cols)}, {"msg": msg})


def message_from(kf: KeyFile) -> ExtMatrix:
    _require(kf, "msg", ["msg"])
    return kf.blocks["msg"]


def _positions(text: str) -> tuple[int, ...]:
    if text == "-":
        return ()
    return tuple(int(x) for x in text.split(","))


def _positions_text(pos) -> str:
    return ",".join(map(str, pos)) if pos else "-"


def alt_key_file(alt: AlternativeKey, s: int, redundancy_set) -> KeyFile:
    params = {
        "kind": "alt",
        "k": str(alt.k),
        "n_eff": str(alt.n_eff),
        "ell_eff": str(alt.ell_eff),
        "s": str(s),
        "I": _positions_text(redundancy_set),
    }
    blocks = {
        "S_star": alt.S_star,
        "X_star": alt.X_star,
        "g_star": alt.g_star,
        "P_star": alt.P_star.to_ext(alt.S_star.ctx),
    }
    return KeyFile(alt.S_star.ctx, params, blocks)


def alt_key_from(kf: KeyFile) -> tuple[AlternativeKey, int, tuple[int, ...]]:
    _require(kf, "alt", ["S_star", "X_star", "g_star", "P_star"])
    try:
        k = int(kf.params["k"])
        s = int(kf.params["s"])
        I = _positions(kf.params["I"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad alt params: {exc}") from None
    alt = AlternativeKey(
        S_star=kf.blocks["S_star"],
        X_star=kf.blocks["X_star"],
        g_star=kf.blocks["g_star"],
        P_star=_base(kf.blocks["P_star"], "P_star"),
        k=k,
    )
    return alt, s, I


# -- attack reports ---------------------------------------------------------------


@dataclass
class AttackReport:
    seed: int | None
    s: int
    w: int
    redundancy_set: tuple[int, ...]
    verify_ratio: float
    trials: int
    s_trace: list[tuple[int, int, int]] = field(default_factory=list)
    redundancy_trace: list[tuple[int, int]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)


def report_from_result(result, verify_ratio: float, trials: int, seed=None) -> AttackReport:
    return AttackReport(
        seed=seed,
        s=result.s,
        w=result.w,
        redundancy_set=tuple(result.redundancy_set),
        verify_ratio=float(verify_ratio),
        trials=trials,
        s_trace=[tuple(x) for x in result.stats.get("s_trace", [])],
        redundancy_trace=[tuple(x) for x in result.stats.get("redundancy_trace", [])],
        timings=dict(result.stats.get("timings", {})),
    )


def serialize_report(rep: AttackReport, timings: bool = True) -> str:
    seed = "-" if rep.seed is None else str(rep.seed)
    lines = [
        MAGIC,
        f"report seed={seed} s={rep.s} w={rep.w} verify={rep.verify_ratio!r} trials={rep.trials}",
        f"redundancy {_positions_text(rep.redundancy_set)}",
        "trace compute_s " + " ".join(f"{s}:{lo}:{hi}" for s, lo, hi in rep.s_trace),
        "trace redundancy " + " ".join(f"{p}:{d}" for p, d in rep.redundancy_trace),
    ]
    if timings:
        lines += [f"time {phase} {sec!r}" for phase, sec in rep.timings.items()]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_report(text: str) -> AttackReport:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MAGIC:
        raise ParseError(f"missing {MAGIC} header", 1)
    need = ["report", "redundancy", "trace compute_s", "trace redundancy"]
    for idx, prefix in enumerate(need, start=1):
        if idx >= len(lines) or not lines[idx].startswith(prefix):
            raise ParseError(f"missing {prefix!r} line", idx + 1)
    try:
        head = _kv(lines[1].split()[1:], 2)
        seed = None if head["seed"] == "-" else int(head["seed"])
        rep = AttackReport(
            seed=seed,
            s=int(head["s"]),
            w=int(head["w"]),
            redundancy_set=_positions(lines[2].split(" ", 1)[1]),
            verify_ratio=float(head["verify"]),
            trials=int(head["trials"]),
        )
        for tok in lines[3].split()[2:]:
            rep.s_trace.append(tuple(int(x) for x in tok.split(":")))
        for tok in lines[4].split()[2:]:
            rep.redundancy_trace.append(tuple(int(x) for x in tok.split(":")))
    except (KeyError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed report: {exc}") from None
    for lineno, line in enumerate(lines[5:], start=6):
        parts = line.split(" ")
        if len(parts) != 3 or parts[0] != "time":
            raise ParseError(f"unexpected line {line!r}", lineno)
        try:
            rep.timings[parts[1]] = float(parts[2])
        except ValueError:
            raise ParseError(f"bad timing {parts[2]!r}", lineno) from None
    return rep


def write_text(path, text: str):
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def read_text(path) -> str:
    with open(path, newline="\n") as fh:
        return fh.read()
