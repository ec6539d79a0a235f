import json
from functools import lru_cache
from math import gamma

import numpy as np
import pytest
from scipy.integrate import quad

from fracspec import (
    CylinderSpec,
    Grid1D,
    GridFn1D,
    InequalityReport,
    KernelParams,
    ParameterError,
    cylinder_nu1,
    hartman_wintner_check,
    lyapunov_check,
    rfk_sweep,
)
from fracspec.eigen1d import eigen_frac1d
from fracspec.fraclap import fraclap_matrix_2d, lambda1
from fracspec.inequalities import max_workers
from fracspec.shapes import builtin_mask, disk_mask, rectangle_mask, square_mask


@lru_cache(maxsize=None)
def mu1(alpha, n=128):
    return eigen_frac1d(KernelParams(alpha), n, 1, residuals=False).mu1


def const(value, n=201, a=0.0, b=1.0):
    g = Grid1D.uniform(a, b, n)
    return GridFn1D(g, np.full(n, float(value)))


# -- report -------------------------------------------------------------------


def test_report_tolerance_semantics():
    r = InequalityReport("x", 1.0 - 5e-10, 1.0)
    assert r.satisfied and r.equality
    r = InequalityReport("x", 1.0 - 2e-9, 1.0)
    assert not r.satisfied and not r.equality
    r = InequalityReport("x", 1000.0 - 5e-7, 1000.0)  # tolerance scales with |rhs|
    assert r.satisfied
    d = json.loads(r.to_json())
    assert set(d) >= {"lhs", "rhs", "margin", "satisfied", "equality", "context", "verdict"}
    assert d["verdict"] == "necessary condition satisfied"


# -- Lyapunov -----------------------------------------------------------------


def test_lyapunov_classical_equality():
    for lam in (0.0, 2.5):
        r = lyapunov_check(const(lam + 4), 1.0, lam)
        assert r.lhs == pytest.approx(4.0, abs=1e-12)
        assert r.rhs == pytest.approx(4.0, abs=1e-8)
        assert r.satisfied and r.equality


def test_lyapunov_zero_potential():
    r = lyapunov_check(const(3.0), 0.8, 3.0)
    assert r.lhs == 0.0 and not r.satisfied


def test_lyapunov_witness_three_quarters():
    m = mu1(0.75)
    r = lyapunov_check(const(m + 1.0), 0.75, 1.0)
    assert r.lhs == pytest.approx(m, rel=1e-12)
    assert r.satisfied and r.margin > 0


def test_lyapunov_sign_changes_exact():
    g = Grid1D(np.array([0.0, 0.3, 0.35, 0.8, 1.0]))
    q = GridFn1D(g, np.array([2.0, -1.0, 0.5, 4.0, -3.0]))
    r = lyapunov_check(q, 0.9, 0.25)
    x, y = g.nodes, q.values - 0.25
    cross = np.flatnonzero(y[:-1] * y[1:] < 0)
    roots = x[cross] + (x[cross + 1] - x[cross]) * y[cross] / (y[cross] - y[cross + 1])
    f = lambda t: abs(np.interp(t, x, y))
    oracle, _ = quad(f, 0, 1, points=np.r_[x[1:-1], roots], limit=200, epsabs=1e-14)
    assert roots.size == 3
    assert r.lhs == pytest.approx(oracle, rel=1e-12)


# -- Hartman-Wintner ----------------------------------------------------------


def test_hw_classical_equality():
    r = hartman_wintner_check(const(6.0, n=11), 1.0, 0.0)
    assert abs(r.lhs - r.rhs) <= 1e-9
    assert r.rhs == 1.0
    assert r.satisfied and r.equality


def test_hw_nonpositive_part():
    g = Grid1D.uniform(0, 1, 21)
    q = GridFn1D.from_callable(g, lambda x: 2 - np.sin(3 * x))
    r = hartman_wintner_check(q, 0.7, 5.0)
    assert r.lhs == 0.0 and not r.satisfied


def K_ref(alpha, b, x, t):
    m = max(x, t)
    if m >= b:
        return 0.0
    if x == t:
        val, _ = quad(lambda s: 1.0, m, b, weight="alg", wvar=(2 * alpha - 2, 0), epsrel=1e-12)
    else:
        f = lambda s: (s - min(x, t)) ** (alpha - 1)
        val, _ = quad(f, m, b, weight="alg", wvar=(alpha - 1, 0), epsrel=1e-12)
    return val / gamma(alpha) ** 2


def test_hw_against_nested_quadrature():
    alpha, lam = 0.75, 1.0
    g = Grid1D.uniform(0, 1, 9)
    q = GridFn1D.from_callable(g, lambda x: 1 + 40 * (x - 0.2) * (0.9 - x))
    r = hartman_wintner_check(q, alpha, lam)
    kaa = K_ref(alpha, 1.0, 0.0, 0.0)

    def integrand(s):
        w = kaa * K_ref(alpha, 1.0, s, s) - K_ref(alpha, 1.0, 0.0, s) ** 2
        return w * max(np.interp(s, g.nodes, q.values) - lam, 0.0)

    oracle, _ = quad(integrand, 0, 1, points=[0.2, 0.875, 0.9], limit=200, epsrel=1e-11)
    assert r.rhs == pytest.approx(kaa, rel=1e-13)
    assert r.lhs == pytest.approx(oracle, rel=1e-9)


def test_hw_witness_three_quarters():
    r = hartman_wintner_check(const(mu1(0.75) + 2.0), 0.75, 2.0)
    assert r.satisfied and r.margin > 0


# -- invariants ---------------------------------------------------------------


@pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9, 1.0])
def test_witness_potentials_pass(alpha):
    m = mu1(alpha)
    for lam in (0.0, 1.0, 10.0):
        q = const(m + lam)
        for check in (lyapunov_check, hartman_wintner_check):
            assert check(q, alpha, lam).margin >= -1e-9


def numeric_fields(r):
    return (r.lhs, r.rhs, r.margin, r.satisfied, r.equality)


@pytest.mark.parametrize("check", [lyapunov_check, hartman_wintner_check])
def test_shift_covariance_bitwise_on_dyadic_data(check):
    g = Grid1D.uniform(0, 1, 65)
    rng = np.random.default_rng(11)
    q = np.round(rng.uniform(0, 20, 65) * 2**20) / 2**20
    base = check(GridFn1D(g, q), 0.8, 3.0)
    for c in (0.5, 3.0, 1024.0, -2.0):
        shifted = check(GridFn1D(g, q + c), 0.8, 3.0 + c)
        assert numeric_fields(shifted) == numeric_fields(base)


@pytest.mark.parametrize("check", [lyapunov_check, hartman_wintner_check])
def test_shift_covariance_general(check):
    g = Grid1D.uniform(0, 1, 50)
    q = GridFn1D.from_callable(g, lambda x: 7 * np.cos(4 * x) + 2)
    base = check(q, 0.65, np.pi)
    for c in (0.1, np.e, 17.3):
        shifted = check(GridFn1D(g, q.values + c), 0.65, np.pi + c)
        assert shifted.lhs == pytest.approx(base.lhs, rel=1e-12, abs=1e-13)
        assert shifted.rhs == base.rhs
        assert shifted.satisfied == base.satisfied


def test_checker_errors():
    q = const(1.0, a=0.0, b=1.0)
    with pytest.raises(ParameterError):
        lyapunov_check(q, 0.8, 0.0, interval=(0.0, 2.0))
    with pytest.raises(ParameterError):
        hartman_wintner_check(q, 0.8, -1.0)
    with pytest.raises(ParameterError):
        lyapunov_check(q, 0.4, 0.0)


# -- cylinder -----------------------------------------------------------------


def test_cylinder_additivity_and_components():
    sq = square_mask(256, 1 / 16)
    spec = CylinderSpec((0.0, 1.0), 0.75, 0.5, sq)
    nu1, m1, lam = cylinder_nu1(spec)
    assert nu1 == m1 + lam
    # pinned by the component solvers
    assert m1 == mu1(0.75)
    assert lam == lambda1(fraclap_matrix_2d(sq, 0.5))[0]


def test_cylinder_longer_interval_lowers_nu1():
    d = disk_mask(50, 0.2)
    vals = [cylinder_nu1(CylinderSpec((0.0, L), 1.0, 0.5, d), 64) for L in (1.0, 2.0, 4.0)]
    nus = [v[0] for v in vals]
    assert nus[0] > nus[1] > nus[2]
    assert vals[0][2] == vals[1][2] == vals[2][2]


def test_cylinder_spec_validation():
    d = disk_mask(10, 0.2)
    with pytest.raises(ParameterError):
        CylinderSpec((0.0, 1.0), 0.5, 0.5, d)
    with pytest.raises(ParameterError):
        CylinderSpec((0.0, 1.0), 0.8, 1.0, d)
    with pytest.raises(ParameterError):
        CylinderSpec((1.0, 1.0), 0.8, 0.5, d)


# -- RFK sweeps ---------------------------------------------------------------


def sweep(names, cells, h, s=0.5):
    shapes = {n: builtin_mask(n, cells, h) for n in names}
    return rfk_sweep(shapes, (0.0, 1.0), 0.75, s, n_1d=64)


def test_rfk_disk_wins():
    t = sweep(["rect2", "square", "disk"], 576, 1 / 24)
    assert [r.shape_id for r in t.rows] == ["disk", "square", "rect2"]
    assert t.minimizer == "disk"
    assert len({r.mu1 for r in t.rows}) == 1
    for r in t.rows:
        assert r.nu1 == r.mu1 + r.lambda1 and r.cells == 576


def test_rfk_square_among_quadrilaterals():
    t = sweep(["rect4", "rect2", "square"], 576, 1 / 24)
    assert t.minimizer == "square"


def test_rfk_aspect_monotone():
    cells, h = 400, 1 / 20
    lams = [lambda1(fraclap_matrix_2d(rectangle_mask(cells, r, h), 0.4))[0] for r in (1, 2, 3, 4)]
    assert all(a <= b for a, b in zip(lams, lams[1:]))


def test_rfk_tie_by_id():
    sq = square_mask(100, 0.1)
    t = rfk_sweep({"b": sq, "a": sq}, (0.0, 1.0), 0.8, 0.5, n_1d=64)
    assert t.rows[0].lambda1 == t.rows[1].lambda1
    assert [r.shape_id for r in t.rows] == ["a", "b"]


def test_rfk_csv():
    t = sweep(["disk", "square"], 144, 1 / 12)
    lines = t.to_csv().splitlines()
    assert lines[0] == "shape_id,cells,lambda1,mu1,nu1"
    assert lines[1].startswith("disk,144,")
    assert float(lines[1].split(",")[4]) == t.rows[0].nu1


def test_rfk_errors():
    with pytest.raises(ParameterError):
        rfk_sweep({"disk": disk_mask(100, 0.1), "sq": square_mask(99, 0.1)}, (0, 1), 0.8, 0.5)
    with pytest.raises(ParameterError):
        rfk_sweep({"disk": disk_mask(100, 0.1)}, (0, 1), 0.8, 0.5)


def test_rfk_threads_env(monkeypatch):
    monkeypatch.setenv("FRACSPEC_THREADS", "3")
    assert max_workers() == 3
    t3 = sweep(["disk", "square", "rect2"], 144, 1 / 12)
    monkeypatch.setenv("FRACSPEC_THREADS", "junk")
    assert max_workers() == 1
    t1 = sweep(["disk", "square", "rect2"], 144, 1 / 12)
    assert t3.to_csv() == t1.to_csv()
