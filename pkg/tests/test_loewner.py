import cmath
import math

import numpy as np
import pytest

from robertson import (CaratheodorySpec, DomainError, FunctionSpec, GridSpec, PreconditionError,
                       Verdict, chain_eval, chain_positivity_report, eq43_lhs, eval_jet,
                       herglotz_disk_check, lemma_b_check)
from robertson.loewner import chain_samples_csv, eq43_report

GRID = GridSpec.default(r_count=20, n_theta=180)


def random_points(n, rmax=0.95, seed=0):
    rng = np.random.default_rng(seed)
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


@pytest.mark.parametrize("f", [FunctionSpec.robertson_extremal(1.2), FunctionSpec.half_plane(),
                               FunctionSpec.taylor([1, 0.2j, -0.1])])
def test_initial_condition(f):
    z = random_points(50)
    s = chain_eval(f, 0.4, 0.0, z)
    assert np.max(np.abs(s.f_t - eval_jet(f, z).v0)) <= 1e-14


def test_p_at_origin_and_t0_constant():
    lam = math.acos(0.6)
    f = FunctionSpec.robertson_extremal(lam)
    p0 = -1 - 2 * cmath.exp(-2j * lam)
    assert chain_eval(f, lam, 0.0, 0j).p == pytest.approx(p0, abs=1e-14)
    assert p0.real < 0
    s = chain_eval(f, lam, 0.0, random_points(20))
    assert np.allclose(s.p, p0, atol=1e-12)
    # the z = 0 limit agrees with nearby values for t > 0
    near = chain_eval(f, lam, 0.7, 1e-7).p
    assert chain_eval(f, lam, 0.7, 0j).p == pytest.approx(near, abs=1e-6)


def test_pde_residual_and_finite_differences():
    rng = np.random.default_rng(3)
    for k in range(20):
        lam = float(rng.uniform(-1.4, 1.4))
        f = FunctionSpec.robertson_extremal(lam) if k % 2 else FunctionSpec.taylor(
            [1, 0.2 + 0.1j, -0.05j])
        t = float(rng.uniform(0, 3))
        z = complex(random_points(1, seed=k)[0])
        s = chain_eval(f, lam, t, z)
        assert abs(s.df_dt - z * s.df_dz * s.p) <= 1e-12 * max(1, abs(s.df_dt))
        h = 1e-6
        lo = max(t - h, 0.0)
        dt = (chain_eval(f, lam, t + h, z).f_t - chain_eval(f, lam, lo, z).f_t) / (t + h - lo)
        dz = (chain_eval(f, lam, t, z + h).f_t - chain_eval(f, lam, t, z - h).f_t) / (2 * h)
        assert abs(dt - s.df_dt) <= 1e-6 * max(1, abs(s.df_dt))
        assert abs(dz - s.df_dz) <= 1e-6 * max(1, abs(s.df_dz))


def test_eq43_equals_mobius_of_p():
    lam = math.acos(0.6)
    f = FunctionSpec.robertson_extremal(lam)
    z = random_points(200)
    for t in (0.0, 0.3, 2.0):
        p = chain_eval(f, lam, t, z).p
        assert np.allclose(eq43_lhs(f, lam, t, z), np.abs((p - 1) / (p + 1)), rtol=1e-10)


@pytest.mark.parametrize("c", [0.3, 0.6, 0.9])
def test_eq43_iff_positive_real_part(c):
    lam = math.acos(c)
    f = FunctionSpec.robertson_extremal(lam)
    z = GRID.points()
    for t in (0.0, 0.05, 0.2, 1.0):
        re_p = chain_eval(f, lam, t, z).p.real
        lhs = eq43_lhs(f, lam, t, z)
        keep = (np.abs(re_p) > 1e-9) & (np.abs(lhs - 1) > 1e-9)
        assert np.array_equal((lhs < 1)[keep], (re_p > 0)[keep])


def test_normal_family_proxy():
    f = FunctionSpec.robertson_extremal(1.1)
    a = abs(chain_eval(f, 1.1, 10.0, 0.5).f_t) / math.exp(10)
    b = abs(chain_eval(f, 1.1, 20.0, 0.5).f_t) / math.exp(20)
    assert abs(a - b) / b < 1e-3


def test_large_t_lhs_small():
    f = FunctionSpec.robertson_extremal(0.45 * math.pi)
    assert eq43_lhs(f, 0.45 * math.pi, 20.0, 0.5) < 1e-8


@pytest.mark.parametrize("c, verdict", [(0.1, Verdict.PASS), (0.4, Verdict.PASS),
                                        (0.5, Verdict.BOUNDARY), (0.6, Verdict.FAIL)])
def test_chain_reports(c, verdict):
    lam = math.acos(c)
    f = FunctionSpec.robertson_extremal(lam)
    assert chain_positivity_report(f, lam, grid=GRID).verdict is verdict
    eq = eq43_report(f, lam, grid=GRID)
    assert eq.extras["max_lhs"] == pytest.approx(2 * c, rel=1e-6)


def test_chain_domain_errors():
    f = FunctionSpec.identity()
    with pytest.raises(DomainError):
        chain_eval(f, 0.2, -1.0, 0.1)
    with pytest.raises(DomainError):
        chain_eval(f, 0.2, 0.0, 1.0)
    # points outside the disk are fine once e^{-t} z is inside
    chain_eval(f, 0.2, 1.0, 2.0)


def test_chain_csv():
    g = GridSpec.default(r_count=2, n_theta=8)
    text = chain_samples_csv(FunctionSpec.identity(), 0.3, [0, 1], g)
    lines = text.splitlines()
    assert lines[0] == "t,re_z,im_z,re_f_t,im_f_t,re_p,im_p,eq43_lhs"
    assert len(lines) == 1 + 2 * 16


def test_herglotz_extremal_equality():
    for lam in (0.0, math.pi / 4, 0.45 * math.pi):
        for k in range(8):
            p = CaratheodorySpec.mobius(lam, cmath.exp(2j * math.pi * k / 8 + 0.1j))
            rep = herglotz_disk_check(p, lam, GRID)
            assert rep.extras["max_abs_gap"] <= 1e-9 * 2 / (1 - 0.99**2)


def test_herglotz_brute_force_disk():
    # the image of |z| = r under the extremal map is the boundary circle
    lam, r = 0.7, 0.6
    p = CaratheodorySpec.mobius(lam, 1.0)
    w = p(r * np.exp(2j * np.pi * np.arange(4096) / 4096))
    center = (1 + r * r * cmath.exp(2j * lam)) / (1 - r * r)
    assert np.allclose(np.abs(w - center), 2 * r * math.cos(lam) / (1 - r * r), rtol=1e-12)


def test_herglotz_p_one():
    # |1 - center| = 2 r^2 cos(lam)/(1 - r^2) <= radius for every lam
    for lam in (0.0, math.pi / 4, 1.2, -1.5):
        rep = herglotz_disk_check(CaratheodorySpec.one(), lam, GRID)
        assert rep.passed
        assert rep.min_value == pytest.approx(
            min(2 * x * (1 - x) * math.cos(lam) / (1 - x * x) for x in GRID.r_values), rel=1e-9)
    # a p whose values leave the half-plane Re e^{-i lam} p > 0 is rejected
    assert not herglotz_disk_check(CaratheodorySpec.mobius(0.0, 1.0), 1.2, GRID).passed


def test_herglotz_classical():
    rep = herglotz_disk_check(CaratheodorySpec.mobius(0.0, 1.0), 0.0, GRID)
    assert rep.passed and rep.extras["max_abs_gap"] < 1e-9


@pytest.mark.parametrize("n", [1, 2])
def test_lemma_b_equality(n):
    p = CaratheodorySpec.mobius(0.0, 1.0, n=n)
    assert lemma_b_check(p, n, GRID).passed
    r = np.array(GRID.r_values)
    rho = r ** (2 * n)
    lhs = np.abs(p(r) - 1 - 2 * rho / (1 - rho))
    assert np.allclose(lhs, 2 * r**n / (1 - rho), rtol=1e-9)


def test_lemma_b_p_one_and_precondition():
    rep = lemma_b_check(CaratheodorySpec.one(), 3, GRID)
    assert rep.passed
    with pytest.raises(PreconditionError):
        lemma_b_check(CaratheodorySpec.taylor([0.5, 0.1]), 2, GRID)
    assert lemma_b_check(CaratheodorySpec.taylor([0, 0.5]), 2, GRID).passed
