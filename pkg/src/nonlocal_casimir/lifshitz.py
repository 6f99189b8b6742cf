"""Casimir free energy between parallel plates and its temperature dependence.

Everything is written in the dimensionless variables of
:mod:`nonlocal_casimir.reflection`: xi = zeta/omega_a, y = 2a k_0, and
tau = 2 pi T / T_eff with k T_eff = hbar omega_a.  Per polarization,

    G_i(xi) = int_xi^inf y ln(1 - r_i(xi, y)^2 e^{-y}) dy,

and the free energy per unit area is

    F = F_0 + (k T / 8 pi a^2) sum_{n>=1} [G_s(n tau) + G_p(n tau)],

with the zero-frequency term F_0 = -alpha (k T / 8 pi a^2) zeta(3) left
as an explicit input (:class:`AlphaParameterization`).

Two independent evaluations of Delta F = F(T) - F(0) are provided: the
contour form (:func:`delta_f_abel_plana`), valid for small tau, and the
brute-force Matsubara sum minus the zero-temperature integral
(:func:`delta_f_direct`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT, hbar, k as BOLTZMANN

from . import quadrature
from .errors import DomainError, RegimeError, StepTooLarge, TruncationWarning
from .material import ResponseKind
from .quadrature import DEFAULT_SPEC, integrate_batch, integrate_semi_infinite_batch
from .reflection import (
    AnomalousReflectivity,
    LocalReflectivity,
    NonlocalReflectivity,
    anomalous_A,
    omega_a,
    thomas_fermi_ratio,
)

__all__ = [
    "AlphaParameterization",
    "FreeEnergyBreakdown",
    "DirectResult",
    "EntropyPoint",
    "ABEL_PLANA_MAX_TAU",
    "tau",
    "effective_temperature",
    "temperature_from_tau",
    "energy_prefactor",
    "crossover_A",
    "default_reflectivity",
    "g_values",
    "g_function",
    "g_p_low_temperature",
    "alpha_p_computed",
    "resolve_alpha",
    "free_energy_total",
    "delta_f_abel_plana",
    "delta_f_direct",
    "direct_breakdown",
    "entropy",
]

ABEL_PLANA_MAX_TAU = 0.3
_POLS = ("s", "p")


@dataclass(frozen=True)
class AlphaParameterization:
    """Weight of the zero-frequency term, alpha = alpha_s + alpha_p.

    ``alpha_p`` is a number or one of

    * ``"computed"``: the Thomas-Fermi formula of :func:`alpha_p_computed`;
    * ``"self_consistent"``: -G_p(0) / (2 zeta(3)) evaluated with the same
      reflectivity the engine uses, so the p-polarization constant cancels
      exactly instead of to first order in the screening length.
    """

    alpha_s: float = 0.0
    alpha_p: float | str = "computed"

    def __post_init__(self):
        if not 0.0 <= self.alpha_s <= 0.5:
            raise DomainError("alpha_s must lie in [0, 1/2]")
        if isinstance(self.alpha_p, str):
            if self.alpha_p not in ("computed", "self_consistent"):
                raise DomainError(f"unknown alpha_p mode {self.alpha_p!r}")
        elif not math.isfinite(self.alpha_p):
            raise DomainError("alpha_p must be finite")


@dataclass(frozen=True)
class FreeEnergyBreakdown:
    """Terms of the contour form of Delta F.

    ``half_G``, ``integral_01`` and ``im_term`` are dimensionless and summed
    over polarizations; ``per_polarization`` holds the same keys per
    polarization.  ``delta_F`` and ``f0`` are in J/m^2.
    """

    T: float
    a: float
    tau: float
    alpha_s: float
    alpha_p: float
    f0: float
    half_G: float
    integral_01: float
    im_term: float
    delta_F: float
    error: float
    per_polarization: dict = field(default_factory=dict)

    @property
    def bracket(self):
        """Delta F in units of k T / 8 pi a^2."""
        return self.delta_F / energy_prefactor(self.a, self.T)


@dataclass(frozen=True)
class DirectResult:
    delta_F: float
    error: float
    n_max: int
    tail: float
    matsubara_sum: float
    zero_temperature_integral: float


@dataclass(frozen=True)
class EntropyPoint:
    T: float
    S: float
    method: str
    metadata: dict = field(default_factory=dict)


def effective_temperature(a):
    """T_eff = hbar omega_a / k, K."""
    return hbar * omega_a(a) / BOLTZMANN


def tau(a, T):
    """Dimensionless temperature 2 pi T / T_eff."""
    if T < 0:
        raise DomainError("temperature must be nonnegative")
    return 2.0 * math.pi * T / effective_temperature(a)


def temperature_from_tau(a, tau_value):
    return tau_value * effective_temperature(a) / (2.0 * math.pi)


def energy_prefactor(a, T):
    """k T / (8 pi a^2), J/m^2."""
    return BOLTZMANN * T / (8.0 * math.pi * a * a)


def crossover_A(model, a, T):
    """The crossover parameter A at temperature ``T``."""
    return float(anomalous_A(model, a, tau(a, T)))


def default_reflectivity(model, a):
    """Reflectivity supplier matching ``model.response``."""
    kind = model.response
    if kind is ResponseKind.ANOMALOUS_LIMIT:
        return AnomalousReflectivity(model, a)
    if kind is ResponseKind.NONLOCAL_BOLTZMANN:
        return NonlocalReflectivity(model, a)
    return LocalReflectivity(model, a, kind)


def _kernel(refl, z, y, kt2, T, is_s, leading_order_s):
    r = refl.reflect(z, y, T, kt2, is_s)
    damping = np.exp(-y)
    gap = -np.expm1(-y)
    if leading_order_s:
        damping = np.where(is_s, 1.0, damping)
        gap = np.where(is_s, 0.0, gap)
    r2 = r * r
    # 1 - r^2 e^{-y} without cancellation when r -> 1 and y -> 0
    near_one = (1 - r) * (1 + r) + r2 * gap
    with np.errstate(divide="ignore"):
        log_gap = np.where(np.abs(r2 * damping) < 0.5, np.log1p(-r2 * damping), np.log(near_one))
    return y * log_gap


def _take(values, part):
    if part == "real":
        return np.real(values)
    if part == "imag":
        return np.imag(values)
    return values


def g_values(xi, pol, reflectivity, T=0.0, spec=DEFAULT_SPEC, leading_order_s=False,
             part="real", subtract_static=False):
    """Batch evaluation of G_i(xi) for arrays of (real or complex) xi.

    The y-integral runs along y = xi + s, s in [0, inf), so for complex xi
    it is the analytic continuation in both the lower limit and the
    frequency argument of r.  With ``subtract_static`` the function
    returns G_i(xi) - G_i(0), integrated as one difference so the small
    result keeps its relative accuracy.

    Parameters
    ----------
    xi : array_like
        Frequencies, real >= 0 or complex with Re > 0.
    pol : array_like of {0, 1} or str
        Polarization per point (0 = s, 1 = p), broadcast against ``xi``.
    reflectivity : Reflectivity
    T : float
        Temperature passed to the reflectivity (relaxation laws).
    spec : QuadratureSpec
    leading_order_s : bool
        Replace e^{-y} by 1 in the s-polarization kernel (the small-A
        reduction); diverges unless r_s decays in y.
    part : {"real", "imag", "complex"}
        Which part to integrate; tolerances apply to that part alone.
    subtract_static : bool

    Returns
    -------
    BatchResult
    """
    if isinstance(pol, str):
        pol = _POLS.index(pol)
    xi, pol = np.broadcast_arrays(np.asarray(xi), np.asarray(pol))
    shape = xi.shape
    xi = xi.ravel()
    pol = pol.ravel()
    if np.iscomplexobj(xi):
        if np.any(xi.real <= 0):
            raise DomainError("complex xi needs a positive real part")
    elif np.any(xi < 0):
        raise DomainError("xi must be nonnegative")
    m = xi.size
    is_s_all = pol == 0
    hints = np.array([reflectivity.scale_hint(abs(z)) for z in xi]) if m else np.zeros(0)
    damped = ~(is_s_all & leading_order_s)
    scale = np.where(damped, np.clip(hints, 1e-6, 1.0), np.maximum(hints, 1e-12))

    def along_ray(s, idx):
        z = xi[idx]
        y = z + s
        is_s = is_s_all[idx]
        h = _kernel(reflectivity, z, y, s * (2 * z + s), T, is_s, leading_order_s)
        if subtract_static:
            h = h - _kernel(reflectivity, 0.0 * z, y, y * y, T, is_s, leading_order_s)
        return _take(h, part)

    res = integrate_semi_infinite_batch(along_ray, np.zeros(m), spec, scale)
    values, errors, ok = res.values, res.errors, res.converged

    if subtract_static:
        # remove int_0^xi of the static integrand, along the straight segment
        def segment(w, idx):
            z = xi[idx]
            y = z * w * w
            h = _kernel(reflectivity, 0.0 * z, y, y * y, T, is_s_all[idx], leading_order_s)
            return _take(h * z * 2 * w, part)

        seg = integrate_batch(segment, np.zeros(m), np.ones(m), spec)
        values = values - seg.values
        errors = errors + seg.errors
        ok = ok & seg.converged
    return quadrature.BatchResult(values.reshape(shape), errors.reshape(shape), ok.reshape(shape))


def g_function(pol, xi, reflectivity, spec=DEFAULT_SPEC, T=0.0, leading_order_s=False):
    """G_i(xi) for one real xi >= 0; raises NonConvergence on failure."""
    if not xi >= 0:
        raise DomainError("xi must be nonnegative")
    res = g_values(np.array([float(xi)]), pol, reflectivity, T, spec, leading_order_s)
    res.raise_if_failed(f"G_{pol}({xi})")
    return float(res.values[0])


def g_p_low_temperature(model, a):
    """-zeta(3) (1 - 8u): G_p at xi -> 0 to first order in the screening length."""
    correction = 8.0 * thomas_fermi_ratio(model, a)
    if correction >= 1:
        raise DomainError("Thomas-Fermi correction is not small")
    return -quadrature.zeta3() * (1.0 - correction)


def alpha_p_computed(model, a):
    """alpha_p = (1 - 8u) / 2, so that -alpha_p zeta(3) cancels -G_p / 2."""
    return -g_p_low_temperature(model, a) / (2.0 * quadrature.zeta3())


def resolve_alpha(alpha, model, a, static_g_p=None):
    """Numeric (alpha_s, alpha_p).  ``static_g_p`` is G_p(0) for self-consistent mode."""
    if alpha.alpha_p == "computed":
        return alpha.alpha_s, alpha_p_computed(model, a)
    if alpha.alpha_p == "self_consistent":
        if static_g_p is None:
            raise DomainError("self-consistent alpha_p needs the engine's G_p(0)")
        return alpha.alpha_s, -static_g_p / (2.0 * quadrature.zeta3())
    return alpha.alpha_s, float(alpha.alpha_p)


def _check_point(a, T):
    omega_a(a)
    if not T > 0:
        raise DomainError("temperature must be positive")


def _static_g(reflectivity, T, spec, leading_order_s):
    res = g_values(np.zeros(2), np.array([0, 1]), reflectivity, T, spec, leading_order_s)
    res.raise_if_failed("G(0)")
    return res.values, res.errors


def delta_f_abel_plana(model, a, T, alpha, spec=DEFAULT_SPEC, reflectivity=None,
                       leading_order_s=False, t_max=7.0):
    """Delta F from the Abel-Plana form of the Matsubara sum.

    Per polarization the bracket is

        1/2 G(tau) - int_0^1 G(tau t) dt - 2 Im int_0^inf G(tau + i tau t) / (e^{2 pi t} - 1) dt

    and Delta F = F_0 + (k T / 8 pi a^2) * (sum over polarizations).  All
    three terms are evaluated through D(xi) = G(xi) - G(0), which carries
    the temperature dependence; the G(0) pieces combine into -G(0)/2.

    Parameters
    ----------
    model : MetalModel
    a, T : float
        Separation (m) and temperature (K).
    alpha : AlphaParameterization
    spec : QuadratureSpec
    reflectivity : Reflectivity, optional
        Defaults to :func:`default_reflectivity`.
    leading_order_s : bool
        Drop e^{-y} from the s kernel (see :func:`g_values`).
    t_max : float
        Cutoff of the Bose-weighted integral; the neglected part is below
        e^{-2 pi t_max} relative.

    Returns
    -------
    FreeEnergyBreakdown
    """
    _check_point(a, T)
    tau_value = tau(a, T)
    if tau_value >= ABEL_PLANA_MAX_TAU:
        raise RegimeError(f"tau = {tau_value:.3g} is outside the low-temperature form "
                          f"(needs tau < {ABEL_PLANA_MAX_TAU})")
    refl = reflectivity or default_reflectivity(model, a)
    inner = spec.tightened(10.0)
    pols = np.array([0, 1])

    g0, g0_err = _static_g(refl, T, inner, leading_order_s)
    alpha_s, alpha_p = resolve_alpha(alpha, model, a, g0[1])

    def d_values(z, pol, part):
        res = g_values(z, pol, refl, T, inner, leading_order_s, part, subtract_static=True)
        res.raise_if_failed("G(xi) - G(0)")
        return res.values

    d_tau = d_values(np.full(2, tau_value), pols, "real")

    # int_0^1 D(tau t) dt with t = w^3: D ~ t^(2/3) near 0 in the anomalous regime
    def segment(w, idx):
        return d_values(tau_value * w**3, pols[idx], "real") * 3 * w * w

    seg = integrate_batch(segment, np.zeros(2), np.ones(2), spec)
    seg.raise_if_failed("int_0^1 G(tau t) dt")

    def contour(t, idx):
        with np.errstate(over="ignore"):
            bose = 1.0 / np.expm1(2 * math.pi * t)
        return d_values(tau_value * (1 + 1j * t), pols[idx], "imag") * bose

    im = integrate_batch(contour, np.zeros(2), np.full(2, t_max), spec)
    im.raise_if_failed("contour integral")

    pref = energy_prefactor(a, T)
    zeta3 = quadrature.zeta3()
    alphas = (alpha_s, alpha_p)
    per_pol = {}
    total = 0.0
    for i, name in enumerate(_POLS):
        im_term = 2.0 * im.values[i]
        bracket = (-alphas[i] * zeta3 - 0.5 * g0[i]) + 0.5 * d_tau[i] - seg.values[i] - im_term
        per_pol[name] = dict(
            f0=-alphas[i] * zeta3 * pref,
            static_G=g0[i],
            half_G=0.5 * (g0[i] + d_tau[i]),
            integral_01=g0[i] + seg.values[i],
            im_term=im_term,
            delta_F=bracket * pref,
        )
        total += bracket
    error = pref * float(np.sum(0.5 * g0_err + seg.errors + 2 * im.errors))
    return FreeEnergyBreakdown(
        T=T, a=a, tau=tau_value, alpha_s=alpha_s, alpha_p=alpha_p,
        f0=-(alpha_s + alpha_p) * zeta3 * pref,
        half_G=sum(p["half_G"] for p in per_pol.values()),
        integral_01=sum(p["integral_01"] for p in per_pol.values()),
        im_term=sum(p["im_term"] for p in per_pol.values()),
        delta_F=total * pref, error=error, per_polarization=per_pol)


def _perfect_tail(x):
    """int_x^inf |G| dx for a perfect reflector (bounds any |r| <= 1)."""
    m = np.arange(1, 60)
    return float(np.sum(np.exp(-m * x) * (x / m**3 + 2.0 / m**4)))


def _default_n_max(tau_value):
    return max(1, math.ceil(30.0 / tau_value))


def _matsubara_terms(refl, tau_value, n_max, T, spec):
    n = np.arange(1, n_max + 1, dtype=float)
    xi = np.concatenate([n, n]) * tau_value
    pol = np.repeat([0, 1], n_max)
    res = g_values(xi, pol, refl, T, spec)
    res.raise_if_failed("Matsubara terms")
    terms = res.values[:n_max] + res.values[n_max:]
    return terms, float(np.sum(res.errors))


def free_energy_total(model, a, T, alpha, n_max=None, spec=DEFAULT_SPEC, reflectivity=None):
    """Full Lifshitz free energy per unit area, J/m^2.

    Terms n = 1..n_max are summed in ascending order with compensated
    summation; the remainder is bounded by the perfect-reflector tail and a
    :class:`TruncationWarning` is issued when that bound exceeds the
    quadrature tolerance.
    """
    _check_point(a, T)
    tau_value = tau(a, T)
    n_max = _default_n_max(tau_value) if n_max is None else int(n_max)
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    refl = reflectivity or default_reflectivity(model, a)
    static_p = None
    if alpha.alpha_p == "self_consistent":
        static_p = _static_g(refl, T, spec, False)[0][1]
    alpha_s, alpha_p = resolve_alpha(alpha, model, a, static_p)
    terms, _ = _matsubara_terms(refl, tau_value, n_max, T, spec)
    total = -(alpha_s + alpha_p) * quadrature.zeta3() + math.fsum(terms)
    tail = 2.0 * _perfect_tail(n_max * tau_value) / tau_value
    if tail > max(spec.abs_tol, spec.rel_tol * abs(total)):
        warnings.warn(f"Matsubara tail bound {tail:.3g} exceeds tolerance; raise n_max",
                      TruncationWarning, stacklevel=2)
    return total * energy_prefactor(a, T)


def direct_breakdown(model, a, T, alpha, spec=DEFAULT_SPEC, reflectivity=None, n_max=None):
    """Delta F = F(T) - F(0) by summing Matsubara terms, with error budget.

    F(0) is the zero-temperature integral, (1/tau) int_0^inf G dx in units
    of k T / 8 pi a^2.  The sum and the integral nearly cancel, so the
    error budget (quadrature errors, the integral's error over tau and the
    truncation tail) is reported with the value.
    """
    _check_point(a, T)
    tau_value = tau(a, T)
    n_max = _default_n_max(tau_value) if n_max is None else int(n_max)
    refl = reflectivity or default_reflectivity(model, a)
    inner = spec.tightened(10.0)

    static_p = None
    if alpha.alpha_p == "self_consistent":
        static_p = _static_g(refl, T, inner, False)[0][1]
    alpha_s, alpha_p = resolve_alpha(alpha, model, a, static_p)

    terms, terms_err = _matsubara_terms(refl, tau_value, n_max, T, inner)
    matsubara = math.fsum(terms)

    def zero_t(x, idx):
        res = g_values(x, idx, refl, T, inner)
        res.raise_if_failed("zero-temperature integrand")
        return res.values

    zt = integrate_semi_infinite_batch(zero_t, np.zeros(2), spec, 1.0)
    zt.raise_if_failed("zero-temperature integral")
    integral = float(np.sum(zt.values))
    tail = 2.0 * _perfect_tail(n_max * tau_value) / tau_value

    bracket = -(alpha_s + alpha_p) * quadrature.zeta3() + (matsubara - integral / tau_value)
    pref = energy_prefactor(a, T)
    error = pref * (terms_err + float(np.sum(zt.errors)) / tau_value + tail)
    return DirectResult(bracket * pref, error, n_max, tail * pref, matsubara, integral)


def delta_f_direct(model, a, T, alpha, spec=DEFAULT_SPEC, reflectivity=None, n_max=None):
    """Delta F (J/m^2) from the Matsubara sum minus the T = 0 integral."""
    return direct_breakdown(model, a, T, alpha, spec, reflectivity, n_max).delta_F


def _delta_f_auto(model, a, T, alpha, spec, reflectivity, leading_order_s):
    if tau(a, T) < ABEL_PLANA_MAX_TAU:
        return delta_f_abel_plana(model, a, T, alpha, spec, reflectivity, leading_order_s).delta_F
    if leading_order_s:
        raise RegimeError("the leading-order s kernel is only defined for small tau")
    return delta_f_direct(model, a, T, alpha, spec, reflectivity)


def entropy(model, a, T, alpha, method="finite_difference", spec=DEFAULT_SPEC,
            reflectivity=None, leading_order_s=False, step_rel=1e-3, t_floor=0.0,
            step_tol=1e-3):
    """Casimir entropy S = -d(Delta F)/dT per unit area, J/(K m^2).

    Parameters
    ----------
    method : {"finite_difference", "asymptotic_small_A", "asymptotic_large_A"}
        Finite differences use the contour form below tau = 0.3 and the
        direct sum above.  The asymptotic methods use the closed forms of
        :mod:`nonlocal_casimir.asymptotics`.
    step_rel, t_floor : float
        Central step h = min(max(step_rel T, t_floor), T/2).
    step_tol : float
        Relative disagreement allowed between the h and h/2 estimates
        before :class:`StepTooLarge` is raised.
    """
    if method == "asymptotic_small_A":
        from .asymptotics import entropy_small_A
        return EntropyPoint(T, entropy_small_A(model, a, T, alpha.alpha_s), method)
    if method == "asymptotic_large_A":
        from .asymptotics import entropy_large_A
        return EntropyPoint(T, entropy_large_A(model, a, T, alpha.alpha_s), method)
    if method != "finite_difference":
        raise DomainError(f"unknown entropy method {method!r}")
    _check_point(a, T)
    h = min(max(step_rel * T, t_floor), 0.5 * T)

    def slope(step):
        up = _delta_f_auto(model, a, T + step, alpha, spec, reflectivity, leading_order_s)
        down = _delta_f_auto(model, a, T - step, alpha, spec, reflectivity, leading_order_s)
        return -(up - down) / (2 * step)

    coarse = slope(h)
    fine = slope(h / 2)
    mismatch = abs(coarse - fine)
    if mismatch > step_tol * abs(fine) + 1e-300:
        raise StepTooLarge(f"entropy estimates at h = {h:.3g} K and h/2 differ by "
                           f"{mismatch / abs(fine):.2g} relative")
    return EntropyPoint(T, fine, method, dict(step=h / 2, coarse=coarse, mismatch=mismatch))
