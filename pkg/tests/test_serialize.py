import pytest

from rankgpt import serialize as ser
from rankgpt.gpt import encrypt, keygen, random_message
from rankgpt.smartattack import attack

from conftest import P1, P1_GENERAL


def test_alpha_in_f4(F4):
    assert ser.format_element(2, F4) == "0,1"
    assert ser.format_element(3, F4) == "1,1"


def test_header_layout(rng):
    pk, _ = keygen(P1, rng)
    text = ser.serialize(ser.public_key_file(pk))
    lines = text.split("\n")
    assert lines[0] == "GPTv1"
    assert lines[1].startswith("field q=2 m=12 mod=")
    assert lines[2] == "params kind=pk variant=smart n=12 k=6 ell=4 a=2 t=3"
    assert lines[3] == "mat G_pub 6 16"
    assert text.endswith("\n") and "\r" not in text
    assert all(line == line.rstrip() for line in lines)


@pytest.mark.parametrize("params", [P1, P1_GENERAL])
def test_key_roundtrip(params, rng):
    for _ in range(10):
        pk, sk = keygen(params, rng)
        t_pk = ser.serialize(ser.public_key_file(pk))
        t_sk = ser.serialize(ser.secret_key_file(sk))
        assert ser.public_key_from(ser.parse(t_pk)) == pk
        assert ser.secret_key_from(ser.parse(t_sk)) == sk
        assert ser.serialize(ser.parse(t_pk)) == t_pk
        assert ser.serialize(ser.parse(t_sk)) == t_sk


def test_ciphertext_and_message_roundtrip(rng):
    pk, _ = keygen(P1, rng)
    msg = random_message(6, pk.G_pub.ctx, rng)
    ct = encrypt(msg, pk, rng)
    t_ct = ser.serialize(ser.ciphertext_file(ct))
    t_msg = ser.serialize(ser.message_file(msg))
    assert ser.ciphertext_from(ser.parse(t_ct)) == ct
    assert ser.message_from(ser.parse(t_msg)) == msg


def test_alt_and_report_roundtrip(rng):
    pk, _ = keygen(P1, rng)
    res = attack(pk, rng)
    t_alt = ser.serialize(ser.alt_key_file(res.alt, res.s, res.redundancy_set))
    alt, s, I = ser.alt_key_from(ser.parse(t_alt))
    assert alt == res.alt and s == res.s and I == res.redundancy_set
    rep = ser.report_from_result(res, 1.0, 50, seed=7)
    for timings in (True, False):
        text = ser.serialize_report(rep, timings=timings)
        back = ser.parse_report(text)
        assert ser.serialize_report(back, timings=timings) == text
    assert ser.parse_report(ser.serialize_report(rep)) == rep


def test_report_empty_redundancy():
    rep = ser.AttackReport(seed=None, s=3, w=0, redundancy_set=(), verify_ratio=1.0, trials=0)
    text = ser.serialize_report(rep)
    assert "redundancy -" in text
    assert ser.parse_report(text) == rep


def test_truncated_file_names_block(rng):
    pk, _ = keygen(P1, rng)
    lines = ser.serialize(ser.public_key_file(pk)).split("\n")
    with pytest.raises(ser.ParseError, match="G_pub") as info:
        ser.parse("\n".join(lines[:6]) + "\n")
    assert info.value.line == 7
    with pytest.raises(ser.ParseError, match="missing block G_pub"):
        ser.public_key_from(ser.parse("\n".join(lines[:3]) + "\n"))


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda ls: ["GPTv2"] + ls[1:], 1),
        (lambda ls: [ls[0], "field q=2 m=12 mod=1,0,1"] + ls[2:], 2),
        (lambda ls: ls[:4] + [ls[4].replace("0,", "2,", 1)] + ls[5:], 5),
        (lambda ls: ls[:3] + ["mat G_pub six 16"] + ls[4:], 4),
    ],
)
def test_malformed_files(mutate, where, rng):
    pk, _ = keygen(P1, rng)
    lines = ser.serialize(ser.public_key_file(pk)).rstrip("\n").split("\n")
    with pytest.raises(ser.ParseError) as info:
        ser.parse("\n".join(mutate(lines)) + "\n")
    assert info.value.line == where


def test_kind_mismatch(rng):
    pk, _ = keygen(P1, rng)
    kf = ser.parse(ser.serialize(ser.public_key_file(pk)))
    with pytest.raises(ser.ParseError, match="expected a sk file"):
        ser.secret_key_from(kf)
