import os
import random
import shutil
import subprocess

import pytest

import engelkit as ek


def cli():
    path = os.environ.get("ENGEL_CLI") or shutil.which("engel")
    if not path:
        pytest.skip("engel executable not available")
    return path


def run_cli(*args):
    return subprocess.run([cli(), *args], capture_output=True, text=True)


def kv(text):
    out = {}
    for line in text.splitlines():
        k, _, v = line.partition("=")
        out[k] = v.strip('"')
    return out


def test_burnside_structure():
    g = ek.catalog("burnside3:2")
    assert g.order == 27
    info = g.describe()
    assert info["exponent"] == 3
    assert info["nilpotency_class"] == 2
    assert len(g.elements()) == 27
    for x in g.elements():
        assert (x ** 3).is_identity()


def test_arithmetic_against_matrices():
    # Heisenberg normal form a^x b^y c^z with c = [a, b] as a unitriangular matrix.
    h = ek.catalog("heisenberg")

    def mat(e):
        x, y, z = e.exponents
        return (x, y, x * y + z)

    def mul(m, n):
        return (m[0] + n[0], m[1] + n[1], m[2] + n[2] + m[0] * n[1])

    rng = random.Random(3)
    for _ in range(300):
        u = h.from_exponents([rng.randint(-10**12, 10**12) for _ in range(3)])
        v = h.from_exponents([rng.randint(-10**12, 10**12) for _ in range(3)])
        assert mat(u * v) == mul(mat(u), mat(v))
        assert (u * u.inverse()).is_identity()


def test_encoding_round_trip():
    g = ek.catalog("freenil:2:3")
    x = g.from_exponents([-(2**70), 5, 0, 1, -1])
    b = x.to_bytes()
    assert b[:2] == b"\x00\x05"
    assert g.from_bytes(b) == x
    with pytest.raises(ValueError):
        g.from_bytes(b[:-1])


def test_laws_and_degree():
    assert ek.check_law(ek.catalog("burnside3:2"), "engel2")["holds"]
    verdict = ek.check_law(ek.catalog("C3wrC3"), "engel2")
    assert not verdict["holds"] and len(verdict["witness"]) == 2
    assert ek.degree(ek.catalog("S3"))["fraction"] == "1/2"
    assert ek.degree(ek.catalog("Q8"))["fraction"] == "5/8"
    mc = ek.degree(ek.catalog("S3"), mode="montecarlo", samples=20000, seed=1)
    assert mc["lower"] <= mc["value"] <= mc["upper"]


def test_solvers():
    c = ek.catalog("C:1000")
    x = c.element("a^3")
    assert ek.dlp_cyclic(x, x ** 777) == 777
    b = ek.catalog("burnside3:2")
    assert ek.geodesic_length(b, [b.element("a"), b.element("b")], b.element("a b A B")) == 4
    assert ek.word_problem(b, "a a a")
    assert ek.power_decision(b.element("a"), b.element("b")) is None


def test_sessions_match_across_transports():
    a = ek.run_session("sdp", 11)
    b = ek.run_session("sdp", 11, transport="tcp")
    assert a["ok"] and b["ok"]
    assert a["transcript"] == b["transcript"]
    hashes = {p["key_hash"] for p in ek.run_session("mkep", 5, users=3)["parties"]}
    assert len(hashes) == 1


def test_cli_examples():
    r = run_cli("group", "info", "--name", "burnside3:2", "--format", "kv")
    assert r.returncode == 0
    info = kv(r.stdout)
    assert (info["order"], info["exponent"], info["class"]) == ("27", "3", "2")

    r = run_cli("calc", "engel", "--name", "burnside3:2", "--x", "a", "--y", "b", "--n", "2", "--format", "kv")
    assert kv(r.stdout)["result"] == "identity"

    r = run_cli("degree", "--name", "S3", "--n", "1", "--mode", "exact", "--format", "kv")
    assert kv(r.stdout)["degree"] == "1/2"


def test_cli_exit_codes_and_determinism():
    assert run_cli("group").returncode == 2
    assert run_cli("calc", "mul", "--name", "nosuch", "--x", "a", "--y", "a").returncode == 2
    assert run_cli("proto", "sdp").returncode == 2  # --seed is required
    assert run_cli("solve", "geodesic", "--name", "burnside3:3", "--g", "a b c", "--max-steps", "3").returncode == 3
    first = run_cli("proto", "sss1", "--seed", "9", "--bits", "16", "--format", "kv")
    second = run_cli("proto", "sss1", "--seed", "9", "--bits", "16", "--format", "kv")
    assert first.returncode == 0 and first.stdout == second.stdout


def test_cli_hello_mismatch_across_processes():
    import socket

    ports = []
    for _ in range(2):
        s = socket.socket()
        s.bind(("127.0.0.1", 0))
        ports.append(s.getsockname()[1])
        s.close()
    eps = ",".join(f"127.0.0.1:{p}" for p in ports)
    base = [cli(), "proto", "sdp", "--seed", "4", "--endpoints", eps, "--timeout", "10"]
    one = subprocess.Popen(base + ["--role", "1", "--group", "expquot:2:2:25"],
                           stdout=subprocess.PIPE, stderr=subprocess.PIPE)
    zero = subprocess.run(base + ["--role", "0"], capture_output=True, text=True)
    one.wait(timeout=30)
    assert zero.returncode == 4
    assert one.returncode == 4
    assert "group mismatch" in zero.stderr
