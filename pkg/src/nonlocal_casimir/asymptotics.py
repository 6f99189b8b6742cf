"""Closed-form low-temperature expansions and their numerical constants.

For tau -> 0 the s-polarization G_s(xi) scales with the anomalous
parameter A(xi) ~ xi^(1/3).  Two limits have closed forms:

* A << 1: G_s(xi) = -C A(xi)^2, and the contour terms turn A^2 into
  C (1/10 + 2 I) A^2 with I a Bose integral;
* A >> 1: G_s(xi) = -zeta(3) + (32 / 3 sqrt 3) zeta(3) / A(xi), and the
  contour terms produce (1 - 2 p1) / A.

The Bose integrals come from Im (1 + i t)^(2/3) and Im (1 + i t)^(-1/3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.constants import k as BOLTZMANN

from . import quadrature
from .errors import RegimeError
from .lifshitz import ABEL_PLANA_MAX_TAU, crossover_A, energy_prefactor, tau
from .quadrature import DEFAULT_SPEC, integrate_finite, integrate_semi_infinite
from .reflection import r_s_anomalous_dimensionless, thomas_fermi_ratio

__all__ = [
    "AsymptoticConstants",
    "asymptotic_constants",
    "constant_c_small_A",
    "constant_p1",
    "bose_integral_I",
    "bracket_small_A",
    "delta_f_small_A",
    "delta_f_large_A",
    "entropy_small_A",
    "entropy_large_A",
    "LARGE_A_COEFFICIENT",
]

LARGE_A_COEFFICIENT = 32.0 / (3.0 * math.sqrt(3.0))
_BOSE_CUTOFF = 8.0


@dataclass(frozen=True)
class AsymptoticConstants:
    c_small_A: float
    bracket_small_A: float
    p1: float
    bose_I: float


def constant_c_small_A(spec=DEFAULT_SPEC):
    """C = -int_0^inf x ln(1 - r_s(x)^2) dx, with r_s the reduced coefficient at y = A x."""
    def integrand(x):
        r = r_s_anomalous_dimensionless(x)
        return -x * np.log1p(-r * r)
    return float(integrate_semi_infinite(integrand, 0.0, spec, scale=1.0).value)


def _bose_weighted(power, spec):
    # int_0^inf Im (1 + i t)^power / (e^{2 pi t} - 1) dt
    def integrand(t):
        return ((1 + t * t) ** (power / 2) * np.sin(power * np.arctan(t))
                / np.expm1(2 * math.pi * t))
    return float(integrate_finite(integrand, 0.0, _BOSE_CUTOFF, spec).value)


def constant_p1(spec=DEFAULT_SPEC):
    """p1 = int (1 + t^2)^(-1/6) sin(arctan(t)/3) / (e^{2 pi t} - 1) dt."""
    return -_bose_weighted(-1.0 / 3.0, spec)


def bose_integral_I(spec=DEFAULT_SPEC):
    """I = int (1 + t^2)^(1/3) sin(2 arctan(t)/3) / (e^{2 pi t} - 1) dt."""
    return _bose_weighted(2.0 / 3.0, spec)


def bracket_small_A(spec=DEFAULT_SPEC):
    """C (1/10 + 2 I): 1/10 = 3/5 - 1/2 from the int_0^1 t^(2/3) and G/2 terms."""
    return constant_c_small_A(spec) * (0.1 + 2.0 * bose_integral_I(spec))


@lru_cache(maxsize=8)
def asymptotic_constants(spec=DEFAULT_SPEC):
    """All constants at ``spec``; cached per tolerance setting."""
    c = constant_c_small_A(spec)
    bose = bose_integral_I(spec)
    return AsymptoticConstants(c, c * (0.1 + 2.0 * bose), constant_p1(spec), bose)


def _alpha_total(alpha, model, a):
    # closed forms carry their own G_p, so both derived modes mean (1 - 8u)/2
    if isinstance(alpha.alpha_p, str):
        return alpha.alpha_s + 0.5 * (1.0 - 8.0 * thomas_fermi_ratio(model, a))
    return alpha.alpha_s + float(alpha.alpha_p)


def _small_A(model, a, T):
    A = crossover_A(model, a, T)
    if not A < 1:
        raise RegimeError(f"A = {A:.3g}; the small-A expansion needs A < 1")
    return A


def _large_A(model, a, T):
    A = crossover_A(model, a, T)
    if not A > 1:
        raise RegimeError(f"A = {A:.3g}; the large-A expansion needs A > 1")
    if tau(a, T) >= ABEL_PLANA_MAX_TAU:
        raise RegimeError("the large-A expansion needs tau << 1")
    return A


def delta_f_small_A(model, a, T, alpha, spec=DEFAULT_SPEC):
    """Delta F for A << 1, J/m^2 (leading order in A and in the screening length)."""
    A = _small_A(model, a, T)
    z3 = quadrature.zeta3()
    u = thomas_fermi_ratio(model, a)
    bracket = (-_alpha_total(alpha, model, a) * z3 + 0.5 * z3 * (1 - 8 * u)
               + asymptotic_constants(spec).bracket_small_A * A * A)
    return energy_prefactor(a, T) * bracket


def delta_f_large_A(model, a, T, alpha, spec=DEFAULT_SPEC):
    """Delta F for A >> 1 and tau << 1, J/m^2."""
    A = _large_A(model, a, T)
    u = thomas_fermi_ratio(model, a)
    p1 = asymptotic_constants(spec).p1
    bracket = (-_alpha_total(alpha, model, a) + 1 - 4 * u
               - LARGE_A_COEFFICIENT * (1 - 2 * p1) / A)
    return energy_prefactor(a, T) * quadrature.zeta3() * bracket


def entropy_small_A(model, a, T, alpha_s, spec=DEFAULT_SPEC):
    """S for A << 1 with alpha_p from the screening formula, J/(K m^2).

    A^2 grows as T^(2/3), so d(T A^2)/dT = (5/3) A^2.
    """
    A = _small_A(model, a, T)
    pref = BOLTZMANN / (8 * math.pi * a * a)
    return pref * (alpha_s * quadrature.zeta3()
                   - 5.0 / 3.0 * asymptotic_constants(spec).bracket_small_A * A * A)


def entropy_large_A(model, a, T, alpha_s, spec=DEFAULT_SPEC):
    """S for A >> 1, J/(K m^2); d(T/A)/dT = (2/3)/A."""
    A = _large_A(model, a, T)
    pref = BOLTZMANN / (8 * math.pi * a * a)
    p1 = asymptotic_constants(spec).p1
    return pref * quadrature.zeta3() * (
        alpha_s - 0.5 + 2.0 / 3.0 * LARGE_A_COEFFICIENT * (1 - 2 * p1) / A)
