import cmath
import math

import pytest

import hamoeba as hm


def test_distance_examples():
    o = hm.HPoint()
    p = hm.HPoint.from_entries(2.0, 1.0, 1j)
    assert hm.distance(o, p) == pytest.approx(math.acosh(1.5), rel=1e-14)
    q = hm.geodesic_from_origin((1, 0), 2.0)
    assert hm.distance_from_origin(q) == pytest.approx(2.0, rel=1e-14)
    assert hm.distance_from_origin(hm.rescale(q, 2.0)) == pytest.approx(1.0, rel=1e-14)
    assert hm.busemann((0, 1), q) == pytest.approx(-2.0, rel=1e-14)


def test_invalid_point_raises():
    with pytest.raises(hm.HamoebaError):
        hm.HPoint.from_entries(1.0, 0.5, 0.0)


def test_kappa_conventions():
    a = [[math.e, 0], [0, 1 / math.e]]
    assert hm.distance_from_origin(hm.kappa(a, "polar")) == pytest.approx(1.0)
    assert hm.distance_from_origin(hm.kappa(a, "gram")) == pytest.approx(2.0)


def test_trace_samples_and_oracle():
    c = 3.0
    mats = hm.sample_trace_surface(c, 500, seed=1)
    assert len(mats) == 500
    rmin = hm.trace_oracle_rmin(c)
    assert rmin == pytest.approx(math.acosh(1.5), abs=1e-12)
    for m in mats:
        assert abs(m[0][0] + m[1][1] - c) < 1e-9
        assert hm.distance_from_origin(hm.kappa(m)) >= rmin - 1e-9


def test_roots():
    roots = sorted(hm.poly_roots([2, -3, 1]), key=lambda z: z.real)
    assert roots[0] == pytest.approx(1.0)
    assert roots[1] == pytest.approx(2.0)


def test_limit_and_hausdorff():
    rows = hm.tropical_limit("trace", [100.0, 1000.0], samples=2000, seed=3)
    assert [r["n"] for r in rows] == [100.0, 1000.0]
    for r in rows:
        assert r["oracle_violations"] == 0
        assert r["r_min_rescaled"] >= r["r_pred"] - 1e-9
    ray = [hm.geodesic_from_origin((1, 1j), t / 10) for t in range(31)]
    assert hm.hausdorff_capped(ray, ray, 3.0)["value"] == 0.0


def test_steer_and_lemma():
    s = hm.steer(1e4, 1.5, (1, 2 + 1j))
    assert s["trace_residual"] < 1e-9
    assert s["gap"] < 1e-2
    rep = hm.lemma_check(1.0, 0.5, 1.2, [10 + 0.5 * i for i in range(61)], k=500, seed=1)
    assert rep["slope"] == pytest.approx(-3.0, rel=0.02)
    assert rep["sigma_hat"] is not None


def test_cli_in_process():
    code, out, _ = hm.run_cli(["--version"])
    assert code == 0 and hm.__version__ in out
    code, _, err = hm.run_cli(["steer", "--c", "1"])
    assert code == 1
    code, out, _ = hm.run_cli(["steer", "--c", "100", "--lambda", "1.5"])
    assert code == 0 and '"gap"' in out
