import math

import mpmath
import numpy as np
import pytest
import sympy
from scipy import integrate

from nonlocal_casimir import asymptotics as asy
from nonlocal_casimir.errors import RegimeError
from nonlocal_casimir.lifshitz import AlphaParameterization, energy_prefactor, temperature_from_tau
from nonlocal_casimir.material import ResponseKind, gold_like
from nonlocal_casimir.quadrature import zeta3
from nonlocal_casimir.validation import separation_for, temperature_for_A

MODEL = gold_like(response=ResponseKind.ANOMALOUS_LIMIT)


def _F_scipy(b):
    # cosh^2/(cosh^3 + b^3) written with e^{-x} to avoid overflow
    def f(x):
        e = math.exp(-x)
        ch = 0.5 * (1 + e * e)
        return ch * ch * e / (ch**3 + b**3 * e**3)
    return 2 / math.pi * integrate.quad(f, 0, math.inf, epsabs=1e-14, epsrel=1e-12, limit=200)[0]


def _c_reference():
    def integrand(x):
        F = _F_scipy(1.0 / x)
        r = (1 - F) / (1 + F)
        return -x * math.log1p(-r * r)
    head = integrate.quad(integrand, 0, 1, epsabs=1e-13, epsrel=1e-10, limit=200)[0]
    tail = integrate.quad(integrand, 1, math.inf, epsabs=1e-13, epsrel=1e-10, limit=200)[0]
    return head + tail


def _bose_reference(power):
    f = lambda t: mpmath.im((1 + 1j * t) ** power) / (mpmath.exp(2 * mpmath.pi * t) - 1)
    return float(mpmath.quad(f, [0, 1, mpmath.inf]))


def test_constant_c_against_independent_quadrature():
    assert asy.constant_c_small_A() == pytest.approx(_c_reference(), rel=1e-7)


def test_bose_constants_against_mpmath():
    assert asy.constant_p1() == pytest.approx(-_bose_reference(-1 / 3), rel=1e-10)
    assert asy.bose_integral_I() == pytest.approx(_bose_reference(2 / 3), rel=1e-10)


def test_published_values():
    consts = asy.asymptotic_constants()
    assert consts.c_small_A == pytest.approx(0.0938, abs=5e-4)
    assert consts.p1 == pytest.approx(0.0133, abs=5e-4)
    assert consts.bracket_small_A == pytest.approx(0.0146, abs=5e-4)
    assert consts.bracket_small_A == pytest.approx(consts.c_small_A * (0.1 + 2 * consts.bose_I), rel=1e-12)


def test_bose_integrals_against_linearized_estimates():
    # Im(1+it)^s ~ s t at small t and int t/(e^{2 pi t}-1) = 1/24; both integrands
    # bend below the linearization, so each constant sits under its estimate
    assert asy.constant_p1() < 1 / 72
    assert asy.bose_integral_I() < 1 / 36
    assert float(mpmath.quad(lambda t: t / (mpmath.exp(2 * mpmath.pi * t) - 1), [0, mpmath.inf])) \
        == pytest.approx(1 / 24, rel=1e-14)


def test_large_A_coefficient():
    assert asy.LARGE_A_COEFFICIENT == pytest.approx(8 * 4 / (3 * math.sqrt(3)))


def _closed_form_entropy(kind):
    T, k, a, alpha_s, z3, coeff, T1, A1 = sympy.symbols("T k a alpha_s z3 coeff T1 A1", positive=True)
    A = A1 * (T / T1) ** sympy.Rational(1, 3)
    pref = k * T / (8 * sympy.pi * a**2)
    if kind == "small":
        dF = pref * (-alpha_s * z3 + coeff * A**2)
    else:
        dF = pref * z3 * (sympy.Rational(1, 2) - alpha_s - coeff / A)
    S = sympy.simplify(-sympy.diff(dF, T))
    return sympy.lambdify((T, k, a, alpha_s, z3, coeff, T1, A1), S)


@pytest.mark.parametrize("alpha_s", [0.0, 0.5])
def test_small_A_entropy_is_derivative(alpha_s):
    from scipy.constants import k
    a = 2e-7
    T = temperature_for_A(MODEL, a, 0.05)
    S = _closed_form_entropy("small")(T, k, a, alpha_s, zeta3(),
                                        asy.bracket_small_A(), T, 0.05)
    assert asy.entropy_small_A(MODEL, a, T, alpha_s) == pytest.approx(S, rel=1e-9)


@pytest.mark.parametrize("alpha_s", [0.0, 0.5])
def test_large_A_entropy_is_derivative(alpha_s):
    from scipy.constants import k
    a = separation_for(MODEL, 30.0, 1e-3)
    T = temperature_from_tau(a, 1e-3)
    coeff = asy.LARGE_A_COEFFICIENT * (1 - 2 * asy.constant_p1())
    S = _closed_form_entropy("large")(T, k, a, alpha_s, zeta3(), coeff, T, 30.0)
    assert asy.entropy_large_A(MODEL, a, T, alpha_s) == pytest.approx(S, rel=1e-9)


def test_small_A_finite_difference_matches_entropy():
    a = 2e-7
    alpha = AlphaParameterization(0.0, "computed")
    T = temperature_for_A(MODEL, a, 0.05)
    h = 1e-4 * T
    fd = -(asy.delta_f_small_A(MODEL, a, T + h, alpha) - asy.delta_f_small_A(MODEL, a, T - h, alpha)) / (2 * h)
    assert asy.entropy_small_A(MODEL, a, T, 0.0) == pytest.approx(fd, rel=1e-6)


def test_small_A_entropy_vanishes_as_two_thirds_power():
    a = 2e-7
    S = np.array([asy.entropy_small_A(MODEL, a, temperature_for_A(MODEL, a, A), 0.0)
                  for A in (0.01, 0.02, 0.04)])
    T = np.array([temperature_for_A(MODEL, a, A) for A in (0.01, 0.02, 0.04)])
    assert np.all(S < 0)
    np.testing.assert_allclose(S / T ** (2 / 3), S[0] / T[0] ** (2 / 3), rtol=1e-12)


def test_regime_guards():
    a = 2e-7
    alpha = AlphaParameterization()
    with pytest.raises(RegimeError):
        asy.delta_f_small_A(MODEL, a, temperature_for_A(MODEL, a, 2.0), alpha)
    with pytest.raises(RegimeError):
        asy.delta_f_large_A(MODEL, a, temperature_for_A(MODEL, a, 0.5), alpha)
    with pytest.raises(RegimeError):
        # A > 1 but tau is not small
        asy.delta_f_large_A(MODEL, 2e-6, temperature_from_tau(2e-6, 1.0), alpha)


@pytest.mark.xfail(strict=True, reason="closed forms disagree by orders of magnitude at A = 1; "
                                       "see the decisions ledger")
def test_crossover_continuity_at_A_equal_one():
    alpha = AlphaParameterization(0.0, "computed")
    a = separation_for(MODEL, 1.0, 1e-3)
    T_below = temperature_for_A(MODEL, a, 1.0 - 1e-9)
    T_above = temperature_for_A(MODEL, a, 1.0 + 1e-9)
    small = asy.delta_f_small_A(MODEL, a, T_below, alpha) / energy_prefactor(a, T_below)
    large = asy.delta_f_large_A(MODEL, a, T_above, alpha) / energy_prefactor(a, T_above)
    assert abs(small - large) < 0.25 * max(abs(small), abs(large))
