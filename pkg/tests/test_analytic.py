import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robertson import DomainError, FunctionSpec, Kind, alpha_primitive, eval_jet, principal_pow

BUILTINS = [
    FunctionSpec.robertson_extremal(math.pi / 3),
    FunctionSpec.robertson_extremal(-0.45 * math.pi),
    FunctionSpec.spirallike_extremal(math.pi / 4),
    FunctionSpec.royster(cmath.exp(2j * math.acos(0.6))),
    FunctionSpec.half_plane(),
    FunctionSpec.identity(),
    FunctionSpec.taylor([1, 0.3 - 0.2j, 0.05j]),
    FunctionSpec.robertson_extremal(0.3).rotated(cmath.exp(0.7j)),
]


def test_principal_pow_examples():
    assert principal_pow(-1 + 0j, 0.5) == pytest.approx(1j, abs=1e-15)
    assert principal_pow(0j, 2) == 0
    with pytest.raises(DomainError):
        principal_pow(0j, -0.5)


@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False,
                          allow_infinity=False),
       st.integers(min_value=-4, max_value=4))
def test_principal_pow_integer_exponent(w, n):
    assert principal_pow(w, n) == pytest.approx(w**n, rel=1e-12)


def test_closed_forms():
    z = 0.3 + 0.4j
    lam = math.pi / 3
    beta = -cmath.exp(2j * lam)
    jet = eval_jet(FunctionSpec.robertson_extremal(lam), z)
    assert jet.v0 == pytest.approx((1 - (1 - z) ** beta) / beta, rel=1e-14)
    assert jet.v1 == pytest.approx((1 - z) ** (beta - 1), rel=1e-14)
    p = eval_jet(FunctionSpec.spirallike_extremal(0.0), z).v0
    assert p == pytest.approx(z / (1 - z) ** 2, rel=1e-14)


@pytest.mark.parametrize("f", BUILTINS, ids=lambda f: f.kind.value)
def test_jet_normalization(f):
    jet = eval_jet(f, 0j)
    assert jet.v0 == 0
    assert jet.v1 == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize("f", BUILTINS, ids=lambda f: f.kind.value)
def test_jet_matches_finite_differences(f):
    rng = np.random.default_rng(1)
    z = 0.8 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    h = 1e-6
    jet = eval_jet(f, z)
    up, dn = eval_jet(f, z + h), eval_jet(f, z - h)
    d1 = (up.v0 - dn.v0) / (2 * h)
    d2 = (up.v1 - dn.v1) / (2 * h)
    assert np.all(np.abs(d1 - jet.v1) <= 1e-6 * np.maximum(1, np.abs(jet.v1)))
    assert np.all(np.abs(d2 - jet.v2) <= 1e-6 * np.maximum(1, np.abs(jet.v2)))


def test_eval_jet_rejects_outside_disk():
    with pytest.raises(DomainError):
        eval_jet(FunctionSpec.identity(), 1.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        FunctionSpec.robertson_extremal(math.pi / 2)
    with pytest.raises(DomainError):
        FunctionSpec.taylor([2, 1])


@pytest.mark.parametrize("f", BUILTINS, ids=lambda f: f.kind.value)
def test_round_trip(f):
    assert FunctionSpec.from_dict(f.to_dict()) == f


def test_second_coefficient():
    assert FunctionSpec.taylor([1, 0.25]).second_coefficient == pytest.approx(0.25)
    assert FunctionSpec.spirallike_extremal(0).second_coefficient == pytest.approx(2)


def test_alpha_primitive_half_plane_for_every_lambda():
    # f_lam'^alpha = (1 - z)^{-2} for every lam, so the primitive is z/(1-z)
    for lam in (0.0, math.pi / 3, -0.4):
        z = 0.5 * cmath.exp(0.8j)
        g = alpha_primitive(FunctionSpec.robertson_extremal(lam), lam, z)
        assert g == pytest.approx(z / (1 - z), rel=1e-9)


def test_alpha_primitive_lambda_zero_reproduces_f():
    for f in BUILTINS[:5]:
        z = 0.6 * cmath.exp(2.1j)
        assert alpha_primitive(f, 0.0, z) == pytest.approx(eval_jet(f, z).v0, rel=1e-9)


def test_kinds_enumerated():
    assert {k.value for k in Kind} >= {"RobertsonExtremal", "SpirallikeExtremal", "Royster",
                                       "Taylor", "Identity"}
