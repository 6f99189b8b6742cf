import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from nonlocal_casimir.errors import DomainError
from nonlocal_casimir.material import (
    Constant,
    PowerLaw,
    ResidualPlusPowerLaw,
    ResponseKind,
    dielectric_anomalous,
    dielectric_local,
    dielectric_nonlocal,
    f_longitudinal,
    f_transverse,
    gold_like,
    relaxation_frequency,
)


def _ft_reference(v):
    v = mpmath.mpf(v)
    return float(mpmath.mpf(3) / (2 * v**3) * ((1 + v * v) * mpmath.atan(v) - v))


def _fl_reference(v, ratio):
    v = mpmath.mpf(v)
    g = (v - mpmath.atan(v)) / v**3
    return float(3 * g / (1 + ratio * v * v * g))


@pytest.mark.parametrize("v", [1e-8, 1e-4, 9.99e-3, 1.001e-2, 0.3, 1.0, 10.0, 1e4])
def test_transverse_against_mpmath(v):
    with mpmath.workdps(40):
        assert f_transverse(v) == pytest.approx(_ft_reference(v), rel=1e-13)


@pytest.mark.parametrize("v", [1e-8, 1e-3, 0.02, 1.0, 50.0])
@pytest.mark.parametrize("ratio", [0.0, 0.1, 10.0])
def test_longitudinal_against_mpmath(v, ratio):
    with mpmath.workdps(40):
        assert f_longitudinal(v, ratio) == pytest.approx(_fl_reference(v, ratio), rel=1e-13)


def test_small_v_limits_and_array_input():
    v = np.array([0.0, 1e-12, 2.0])
    ft = f_transverse(v)
    assert ft[0] == 1.0 and ft[1] == pytest.approx(1.0)
    assert f_longitudinal(0.0) == pytest.approx(1.0)


@given(st.floats(1e-6, 1e6))
def test_transverse_is_decreasing_and_bounded(v):
    assert 0 < f_transverse(v * 1.01) < f_transverse(v) <= 1.0


def test_relaxation_laws():
    assert Constant(2.0)(np.array([0.0, 5.0])).tolist() == [2.0, 2.0]
    law = PowerLaw(3.5e13)
    assert law(300.0) == pytest.approx(3.5e13)
    assert law(150.0) == pytest.approx(3.5e13 / 32)
    assert ResidualPlusPowerLaw(1e9, 3.5e13)(0.0) == pytest.approx(1e9)
    with pytest.raises(DomainError):
        PowerLaw(1.0, exponent=0.5)
    with pytest.raises(DomainError):
        relaxation_frequency(gold_like(), -1.0)


def test_nonlocal_tends_to_local_drude_at_small_k():
    model = gold_like()
    zeta, T = 1e13, 300.0
    pair = dielectric_nonlocal(model, zeta, 1.0, T)
    drude = dielectric_local(model, zeta, T, ResponseKind.LOCAL_DRUDE)
    assert pair.eps_t == pytest.approx(drude, rel=1e-10)
    assert pair.eps_l == pytest.approx(drude, rel=1e-10)


def test_nonlocal_tends_to_anomalous_at_large_v():
    model = gold_like(relaxation=Constant(0.0))
    zeta, k = 1e10, 1e9  # v = v_F k / zeta ~ 1.4e5
    exact = dielectric_nonlocal(model, zeta, k, 0.0)
    limit = dielectric_anomalous(model, zeta, k)
    assert exact.eps_t == pytest.approx(limit.eps_t, rel=1e-4)
    assert exact.eps_l == pytest.approx(limit.eps_l, rel=1e-4)


def test_plasma_is_drude_without_relaxation():
    model = gold_like(relaxation=Constant(0.0))
    zeta = np.geomspace(1e11, 1e17, 7)
    np.testing.assert_allclose(dielectric_local(model, zeta, 10.0, ResponseKind.LOCAL_DRUDE),
                               dielectric_local(model, zeta, 10.0, ResponseKind.LOCAL_PLASMA))


def test_domain_errors():
    model = gold_like()
    with pytest.raises(DomainError):
        dielectric_nonlocal(model, -1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        dielectric_anomalous(model, 1.0, 0.0)
    with pytest.raises(DomainError):
        dielectric_local(model, 1.0, kind=ResponseKind.ANOMALOUS_LIMIT)
    with pytest.raises(DomainError):
        gold_like(v_F=4e8)


def test_complex_frequency_is_accepted():
    pair = dielectric_nonlocal(gold_like(), 1e13 * (1 + 0.5j), 1e7, 10.0)
    assert np.iscomplexobj(pair.eps_t)
    assert np.isfinite(pair.eps_t) and np.isfinite(pair.eps_l)
