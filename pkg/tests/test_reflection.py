import numpy as np
import pytest
from hypothesis import given, strategies as st

from nonlocal_casimir.errors import DomainError
from nonlocal_casimir.impedance import impedance_anomalous, impedance_local
from nonlocal_casimir.material import Constant, ResponseKind, dielectric_local, gold_like
from nonlocal_casimir.reflection import (
    AnomalousReflectivity,
    ConstantReflectivity,
    LocalReflectivity,
    NonlocalReflectivity,
    PerfectReflector,
    anomalous_A,
    omega_a,
    r_p_low_frequency,
    r_s_anomalous_dimensionless,
    reflection_from_impedance,
    thomas_fermi_ratio,
    wave_impedances,
)

A_SEP = 1e-6
xi_st = st.floats(1e-6, 50.0)
extra_st = st.floats(1e-6, 50.0)


def _physical(xi, y, a=A_SEP):
    """(zeta, q) for dimensionless (xi, y)."""
    kt = np.sqrt(y * y - xi * xi)
    return xi * omega_a(a), kt / (2 * a)


@given(xi_st, extra_st)
def test_reflectivities_bounded(xi, extra):
    y = xi + extra
    model = gold_like()
    for refl in (AnomalousReflectivity(model, A_SEP),
                 AnomalousReflectivity(model, A_SEP, p_mode="reduced"),
                 LocalReflectivity(model, A_SEP, ResponseKind.LOCAL_DRUDE),
                 LocalReflectivity(model, A_SEP, ResponseKind.LOCAL_PLASMA)):
        pair = refl(xi, y, T=300.0)
        assert abs(pair.r_s) <= 1.0
        assert abs(pair.r_p) <= 1.0


@given(xi_st, extra_st)
def test_local_fresnel_equals_impedance_route(xi, extra):
    y = xi + extra
    model = gold_like()
    zeta, q = _physical(xi, y)
    eps = dielectric_local(model, zeta, 300.0, ResponseKind.LOCAL_DRUDE)
    pair_z = impedance_local(eps, zeta, q)
    z_s0, z_p0 = wave_impedances(xi, y)
    fresnel = LocalReflectivity(model, A_SEP, ResponseKind.LOCAL_DRUDE)(xi, y, T=300.0)
    assert reflection_from_impedance(z_s0, pair_z.z_s, "s") == pytest.approx(fresnel.r_s, abs=1e-12)
    assert reflection_from_impedance(z_p0, pair_z.z_p, "p") == pytest.approx(fresnel.r_p, abs=1e-12)


@pytest.mark.parametrize("xi, y", [(1e-5, 0.3), (1e-3, 1.0), (0.2, 0.25), (2.0, 9.0)])
def test_anomalous_dimensionless_matches_physical_impedance(xi, y):
    model = gold_like()
    zeta, q = _physical(xi, y)
    pair_z = impedance_anomalous(model, zeta, q)
    z_s0, z_p0 = wave_impedances(xi, y)
    pair = AnomalousReflectivity(model, A_SEP)(xi, y)
    assert pair.r_s == pytest.approx(reflection_from_impedance(z_s0, pair_z.z_s, "s"), rel=1e-10)
    assert pair.r_p == pytest.approx(reflection_from_impedance(z_p0, pair_z.z_p, "p"), rel=1e-10)


@pytest.mark.parametrize("xi, y", [(1e-6, 2.0), (1e-5, 0.5), (1e-4, 1.0)])
def test_boltzmann_reflectivity_approaches_anomalous_limit(xi, y):
    model = gold_like(relaxation=Constant(0.0))
    exact = NonlocalReflectivity(model, A_SEP)(xi, y)
    limit = AnomalousReflectivity(model, A_SEP)(xi, y)
    assert exact.r_s == pytest.approx(limit.r_s, abs=1e-3)
    assert exact.r_p == pytest.approx(limit.r_p, abs=1e-5)


def test_boltzmann_static_limits():
    model = gold_like()
    y = np.array([0.5, 2.0])
    pair = NonlocalReflectivity(model, A_SEP)(np.zeros(2), y)
    uy = thomas_fermi_ratio(model, A_SEP) * y
    w = uy / np.sqrt(1 + uy * uy)
    np.testing.assert_array_equal(pair.r_s, 0.0)
    np.testing.assert_allclose(pair.r_p, (1 - w) / (1 + w), rtol=1e-14)


@given(st.floats(1e-8, 1e3))
def test_anomalous_A_cube_root_scaling(xi):
    model = gold_like()
    assert anomalous_A(model, A_SEP, 8 * xi) == pytest.approx(2 * anomalous_A(model, A_SEP, xi), rel=1e-13)


def test_reduced_s_coefficient_limits():
    x = np.array([1e-9, 1.0, 1e9])
    r = r_s_anomalous_dimensionless(x)
    assert r[0] == pytest.approx(-1.0, abs=1e-8)
    assert r[2] == pytest.approx(0.0, abs=1e-8)
    assert np.all(np.diff(r) > 0)
    with pytest.raises(DomainError):
        r_s_anomalous_dimensionless(0.0)


def test_low_frequency_p():
    model = gold_like()
    u = thomas_fermi_ratio(model, A_SEP)
    y = 2.0
    linear = r_p_low_frequency(model, A_SEP, y)
    exact = r_p_low_frequency(model, A_SEP, y, exact=True)
    assert linear == pytest.approx(1 - 2 * u * y)
    assert exact - linear == pytest.approx(2 * (u * y) ** 2, rel=1e-3)
    with pytest.raises(DomainError):
        r_p_low_frequency(model, A_SEP, 1.0 / u)


def test_drude_and_plasma_static_limits():
    model = gold_like()
    drude = LocalReflectivity(model, A_SEP, ResponseKind.LOCAL_DRUDE)(0.0, 1.0)
    plasma = LocalReflectivity(model, A_SEP, ResponseKind.LOCAL_PLASMA)(0.0, 1.0)
    assert drude.r_s == 0.0 and drude.r_p == 1.0
    assert -1.0 < plasma.r_s < -0.9


def test_simple_suppliers_and_argument_checks():
    pair = PerfectReflector()(np.zeros(3), np.ones(3))
    assert pair.r_s.tolist() == [-1.0] * 3 and pair.r_p.tolist() == [1.0] * 3
    assert ConstantReflectivity(-0.5, 0.25)(1.0, 2.0).r_p == 0.25
    with pytest.raises(DomainError):
        wave_impedances(2.0, 1.0)
    with pytest.raises(DomainError):
        reflection_from_impedance(1.0, 1.0, "x")
    with pytest.raises(DomainError):
        AnomalousReflectivity(gold_like(), A_SEP, p_mode="other")
    with pytest.raises(DomainError):
        omega_a(0.0)
