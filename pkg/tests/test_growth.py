import math

import numpy as np
import pytest

from robertson import (DivergenceError, DomainError, FunctionSpec, GridSpec,
                       NoAdmissibleMuError, asymptotic_check, boundedness_integral,
                       collision_search, cubic_root_x0, eval_jet, growth_bounds, robertson_report,
                       royster_mu)
from robertson.growth import (boundedness_status, envelopes_csv, growth_closed_forms,
                              tail_model)

from oracles import angular_extrema


def test_koebe_envelope():
    env = growth_bounds(0.0, 0.5)
    assert env.psi_lo == pytest.approx(0.5 / 1.5**2, rel=1e-14)
    assert env.psi_hi == pytest.approx(2.0, rel=1e-14)
    assert env.theta_hi == 0 and env.theta_lo == pytest.approx(math.pi)


@pytest.mark.parametrize("lam", [0.3, -0.7, math.pi / 4, 1.4])
@pytest.mark.parametrize("r", [0.2, 0.9, 0.99])
def test_envelope_angles_and_closed_forms(lam, r):
    env = growth_bounds(lam, r)
    for th in (env.theta_lo, env.theta_hi):
        assert math.sin(lam + th) == pytest.approx(r * math.sin(lam), abs=1e-14)
    assert math.cos(lam + env.theta_lo) < 0 < math.cos(lam + env.theta_hi)
    lo, hi = growth_closed_forms(lam, r)
    assert lo == pytest.approx(env.psi_lo, rel=1e-12)
    assert hi == pytest.approx(env.psi_hi, rel=1e-12)


def test_envelope_matches_brute_force():
    lo, hi = angular_extrema(math.pi / 4, 0.9)
    env = growth_bounds(math.pi / 4, 0.9)
    assert env.psi_lo == pytest.approx(lo, rel=1e-6)
    assert env.psi_hi == pytest.approx(hi, rel=1e-6)


def test_envelope_sandwich_other_members():
    # the identity and rotations of P_lam are lam-spirallike too
    grid = GridSpec.default(r_count=20, n_theta=360)
    lam = 0.6
    for f in (FunctionSpec.identity(), FunctionSpec.spirallike_extremal(lam).rotated(1j)):
        mod = np.abs(eval_jet(f, grid.points()).v0)
        for row, r in zip(mod, grid.r_values):
            env = growth_bounds(lam, r)
            assert row.min() >= env.psi_lo - 1e-9 and row.max() <= env.psi_hi + 1e-9


def test_envelopes_csv_header():
    text = envelopes_csv(0.2, [0.1, 0.5])
    assert text.splitlines()[0] == "r,psi_lo,psi_hi,theta_lo,theta_hi"
    assert len(text.splitlines()) == 3


def test_boundedness_integral_monotone_and_finite():
    lam = math.acos(0.5)
    vals = [boundedness_integral(lam, r) for r in (0.1, 0.3, 0.5)]
    assert vals == sorted(vals) and all(math.isfinite(v) for v in vals)
    assert boundedness_integral(0.0, 0.5) == pytest.approx(1.0, rel=1e-10)  # 1/(1-t)^2


def test_boundedness_integral_limit_and_tail_model():
    lam = math.acos(0.6)
    total = boundedness_integral(lam, 1.0)
    for m in (4, 6, 8):
        s = 10.0 ** -m
        gap = total - boundedness_integral(lam, 1 - s)
        assert gap == pytest.approx(tail_model(lam, s), rel=10 * s ** 0.5 + 1e-6)


def test_boundedness_divergence():
    with pytest.raises(DivergenceError):
        boundedness_integral(math.acos(0.8), 1.0)
    with pytest.raises(DivergenceError):
        boundedness_integral(math.pi / 4, 1.0)
    with pytest.raises(DomainError):
        boundedness_integral(0.2, 1.5)


def test_extremal_stays_below_integral_bound():
    lam = math.acos(0.6)
    bound = boundedness_integral(lam, 1.0)
    f = FunctionSpec.robertson_extremal(lam)
    for m in range(1, 9):
        assert abs(eval_jet(f, 1 - 10.0 ** -m).v0) <= 1.05 * bound


def test_boundedness_status():
    assert boundedness_status(math.acos(0.6)).bounded_by_theorem
    assert boundedness_status(math.acos(0.8)).extremal_unbounded
    st = boundedness_status(math.pi / 4)
    assert st.conjecture_only and not st.bounded_by_theorem and not st.extremal_unbounded


def test_asymptotic_check():
    assert asymptotic_check(0.0, 0.3) == 1.0
    assert abs(asymptotic_check(math.pi / 3, 1e-4) - 1) <= 5e-4
    s = 10.0 ** -np.arange(2, 7)
    err = np.array([abs(asymptotic_check(math.pi / 3, x) - 1) for x in s])
    slope = np.polyfit(np.log(s), np.log(err), 1)[0]
    assert slope == pytest.approx(1.0, abs=0.01)
    with pytest.raises(DomainError):
        asymptotic_check(0.2, 0.6)


def test_cubic_root():
    x = cubic_root_x0()
    assert abs(x - 0.2034) <= 5e-5
    assert abs(16 * x**3 + 16 * x**2 + x - 1) < 1e-10
    assert abs(x - 0.2315) > 1e-2


def test_royster_mu_default():
    lam = math.acos(0.6)
    mu = royster_mu(lam)
    assert mu == pytest.approx(np.exp(2j * lam), abs=1e-15)
    assert abs(mu + 1) == pytest.approx(1.2) and abs(mu - 1) == pytest.approx(1.6)
    assert np.angle(mu + 1) == pytest.approx(lam, abs=1e-15)


def test_royster_mu_errors_and_fallback():
    with pytest.raises(NoAdmissibleMuError) as exc:
        royster_mu(0.0)
    assert exc.value.failed
    with pytest.raises(NoAdmissibleMuError):
        royster_mu(math.acos(0.4))
    # with mu + 1 = R e^{i lam}, R in (1, 2c - sqrt(4c^2 - 3)) is admissible whenever c < 1
    for c in (0.8, 0.87, 0.9, 0.99):
        lam = math.acos(c)
        mu = royster_mu(lam)
        assert abs(mu) <= 1 and abs(mu + 1) > 1 and abs(mu - 1) > 1
        assert np.angle(mu + 1) == pytest.approx(lam, abs=1e-12)
        if c > math.sqrt(3) / 2:
            assert abs(mu + 1) < 2 * c - math.sqrt(4 * c * c - 3)


DENSE = GridSpec.default(r_max=0.9995, r_count=60, n_theta=4000)


def test_collision_royster():
    lam = math.acos(0.6)
    f = FunctionSpec.royster(royster_mu(lam))
    hit = collision_search(f, DENSE)
    assert hit is not None and abs(hit.z1 - hit.z2) >= 0.05
    w1, w2 = eval_jet(f, np.array([hit.z1, hit.z2])).v0
    assert abs(w1 - w2) <= 1e-6
    assert robertson_report(f, lam, DENSE).passed


def test_no_collision_for_univalent():
    assert collision_search(FunctionSpec.identity()) is None
    assert collision_search(FunctionSpec.robertson_extremal(math.acos(0.4)), DENSE) is None
