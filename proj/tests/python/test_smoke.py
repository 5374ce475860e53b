import math

import pytest

qpavg = pytest.importorskip("qpavg")


GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def test_weights_sum_to_one():
    for kernel in ("equal", "quad", "sin2", "exp"):
        w = qpavg.weights(kernel, 1000)
        assert len(w) == 1000
        assert abs(sum(w) - 1.0) < 1e-13


def test_rigid_rotation():
    lifted = [GOLDEN * n for n in range(2001)]
    assert abs(qpavg.rotation_number(lifted) - GOLDEN) < 1e-12
    vals = [math.cos(2 * math.pi * ((GOLDEN * n) % 1.0)) for n in range(10000)]
    assert abs(qpavg.weighted_average(vals)) < 1e-14
    b, c = qpavg.fourier_coeffs(vals, GOLDEN, 4)
    assert abs(b[1] - 1.0) < 1e-12
    assert max(abs(x) for x in c) < 1e-12


def test_maps():
    x, y = qpavg.standard_map_step(0.0, 0.0)
    assert x == 0.0 and y == 0.0
    x, y = qpavg.torus_step(0.0, 0.0)
    assert abs(x - 0.70546262529920505765) < 1e-14
    lam = qpavg.lyapunov("standard", (math.pi, 1.65), 20000)
    assert abs(lam[0] + lam[1]) < 1e-8


def test_run_matches_cli_semantics():
    out = qpavg.run("rotnum", system="torus2d", n=20000)
    assert out["config"]["system"] == "torus2d_map"
    assert abs(out["scalars"]["rho1"] - 0.71805) < 1e-3
    sec = qpavg.run("section", n=5)
    assert len(sec["rows"]) == 5
    assert "conjugacy" in qpavg.commands()


def test_errors():
    with pytest.raises(qpavg.ConfigError):
        qpavg.run("rotnum", system="nosuch")
    with pytest.raises(qpavg.NumericalError):
        qpavg.run("rotnum", system="standard", ic=["-0.607", "2.01"], n=20000)
