import json
import math

import pytest

import s3flow

R = 1 / math.sqrt(2)


def close(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def test_field_values():
    assert close(s3flow.paper_field((1, 0, 0, 0)), (0, 4, 0, 0), 1e-14)
    assert close(s3flow.paper_field((R, 0, R, 0)), (0, 0, 0, 2 * math.sqrt(2)), 1e-14)
    assert s3flow.bernoulli((R, 0, R, 0)) == pytest.approx(2.0)
    assert s3flow.pressure((1, 0, 0, 0)) == -8.0


def test_frame_is_orthonormal():
    p = (0.6, 0.3, -0.5, 0.55)
    n = math.sqrt(sum(x * x for x in p))
    p = tuple(x / n for x in p)
    f = s3flow.frame(p)
    for i in range(3):
        assert abs(sum(a * b for a, b in zip(f[i], p))) < 1e-12
        for j in range(3):
            dot = sum(a * b for a, b in zip(f[i], f[j]))
            assert dot == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)


def test_maps():
    assert close(s3flow.hopf((1, 0, 0, 0)), (0, 0, 1), 0)
    assert close(s3flow.psi((0, 1, 0, 0), 2), (-1, 0, 0, 0), 1e-15)
    assert close(s3flow.phi((0, 1, 0, 0)), s3flow.hopf((-1, 0, 0, 0)), 1e-15)
    lam1, lam2 = s3flow.singular_values("hopf", (0.5, 0.5, 0.5, 0.5))
    assert lam1 == pytest.approx(1.0) and lam2 == pytest.approx(1.0)


def test_hopf_invariant_on_small_grid():
    assert s3flow.hopf_invariant("paper", (12, 24, 24)) == pytest.approx(2.0, abs=1e-2)


def test_streamline_period():
    c = s3flow.streamline("paper", (R, 0, R, 0))
    assert c["closed"]
    assert c["period"] == pytest.approx(math.pi / 2, rel=1e-8)
    with pytest.raises(s3flow.DynamicsError):
        s3flow.streamline("paper", (0, 0.6, 0.8, 0))


def test_linking():
    assert s3flow.linking_number("hopf", (0, 0, 1), (0, 0, -1))[0] == 1
    value, raw = s3flow.linking_number("phi", (0.6, 0, 0.8), (-0.6, 0, 0.8))
    assert value == 2 and abs(raw - 2) < 0.05
    assert len(s3flow.fibre("phi", (0, 0, -1))) == 2


def test_reports():
    r = s3flow.verify("paper", samples=200)
    assert r["pass"]
    assert all("tolerance" in c for c in r["checks"])
    assert not s3flow.verify("phi_k:3", samples=100)["pass"]
    with pytest.raises(ValueError):
        s3flow.verify("nonsense")


def test_cli_in_process_is_deterministic():
    a = s3flow.run(["verify", "hopf", "--samples", "100"])
    b = s3flow.run(["verify", "hopf", "--samples", "100"])
    assert a[0] == 0 and a == b
    assert json.loads(a[1])["target"] == "hopf"
    assert s3flow.run(["orbit", "paper", "--start", "0,0.6,0.8,0"])[0] == 3
