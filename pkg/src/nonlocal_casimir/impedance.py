"""Surface impedances on the imaginary frequency axis.

Impedances are dimensionless (ratio of tangential E to H).  Three levels
of description are provided:

* ``impedance_exact`` integrates the wave-number representation for any
  pair of nonlocal permittivities;
* ``impedance_anomalous`` is its closed form for the anomalous-limit
  permittivities, built from the functions F(b) and G(b);
* ``impedance_leontovich`` is the q -> 0, b >> 1 limit of the latter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT, hbar, k as BOLTZMANN

from .errors import DomainError
from .material import dielectric_nonlocal, relaxation_frequency
from .quadrature import DEFAULT_SPEC, integrate_semi_infinite, integrate_semi_infinite_batch

__all__ = [
    "KAPPA",
    "ImpedancePair",
    "RegimeReport",
    "special_F",
    "special_G",
    "fg",
    "scaled_F",
    "anomalous_b",
    "impedance_anomalous",
    "impedance_leontovich",
    "impedance_exact",
    "impedance_local",
    "regime_report",
]

KAPPA = 4.0 / (3.0 * math.sqrt(3.0))
"""Large-b coefficient: b F(b) and b G(b) both tend to 4/(3 sqrt 3)."""


@dataclass(frozen=True)
class ImpedancePair:
    z_s: np.ndarray | float
    z_p: np.ndarray | float
    zeta: np.ndarray | float
    q: np.ndarray | float


def _check_b(b):
    if np.any(np.asarray(b) < 0):
        raise DomainError("b must be nonnegative")


def special_F(b, spec=DEFAULT_SPEC):
    """F(b) = (2/pi) int_0^inf cosh^2 x / (cosh^3 x + b^3) dx, by quadrature.

    This is the reference definition; :func:`fg` evaluates the same
    function in closed form and is what the free-energy code uses.
    """
    _check_b(b)
    b3 = float(b) ** 3
    # cosh^2/(cosh^3 + b^3) rewritten in e^{-x} so nothing overflows
    def integrand(x):
        e = np.exp(-x)
        ch = 0.5 * (1 + e * e)
        return ch * ch * e / (ch**3 + b3 * e**3)
    return 2.0 / math.pi * integrate_semi_infinite(integrand, 0.0, spec).value


def special_G(b, spec=DEFAULT_SPEC):
    """G(b): as :func:`special_F` with sinh^2 in the numerator."""
    _check_b(b)
    b3 = float(b) ** 3
    def integrand(x):
        e = np.exp(-x)
        ch = 0.5 * (1 + e * e)
        sh = 0.5 * (1 - e * e)
        return sh * sh * e / (ch**3 + b3 * e**3)
    return 2.0 / math.pi * integrate_semi_infinite(integrand, 0.0, spec).value


def _wallis(n_max):
    w = np.empty(n_max + 1)
    w[0], w[1] = math.pi / 2, 1.0
    for m in range(2, n_max + 1):
        w[m] = (m - 1) / m * w[m - 2]
    return w


_N_SERIES = 22
_W = _wallis(3 * _N_SERIES + 3)
_F_COEF = 2.0 / math.pi * _W[0:3 * _N_SERIES:3]
_G_COEF = 2.0 / math.pi * (_W[0:3 * _N_SERIES:3] - _W[2:3 * _N_SERIES + 2:3])
_ROOTS = np.exp(1j * math.pi * np.array([1.0, 3.0, -1.0]) / 3.0)  # x^3 = -1


def _horner(coefs, x):
    out = np.zeros_like(x)
    for c in coefs[::-1]:
        out = out * x + c
    return out


def _j_integral(c):
    """J(c) = int_0^{pi/2} d theta / (1 + c sin theta), c off (-inf, -1]."""
    rho = (1 - c) / (1 + c)
    near = np.abs(rho) < 0.1
    # arctan(sqrt(rho))/sqrt(rho) series around c = 1
    n = np.arange(12)
    series = 2.0 / (1 + c) * np.sum((-rho[..., None]) ** n / (2 * n + 1), axis=-1)

    c_far = np.where(near, 3.0, c)
    disc = np.sqrt(c_far * c_far - 1)
    t1, t2 = -c_far - disc, -c_far + disc
    t_big = np.where(np.abs(t1) >= np.abs(t2), t1, t2)
    t_small = 1.0 / t_big
    log_small = np.log1p(-t_small) - np.log(-t_small)
    log_big = np.where(np.abs(t_big) > 4, np.log1p(-1.0 / t_big),
                       np.log(1 - t_big) - np.log(-t_big))
    closed = 2.0 / (t_big - t_small) * (log_big - log_small)
    return np.where(near, series, closed)


def fg(b):
    """Closed-form F(b) and G(b), vectorized, real or complex ``b``.

    Complex arguments are allowed for |arg b| < pi/3 (b^3 off the negative
    real axis), which is where the analytic continuation is needed.
    """
    b = np.asarray(b)
    cplx = np.iscomplexobj(b)
    b = b.astype(complex)
    b3 = b**3
    small = np.abs(b) <= 0.5
    huge = np.abs(b) > 1e12

    b3_small = np.where(small, -b3, 0.0)
    F_series = _horner(_F_COEF, b3_small)
    G_series = _horner(_G_COEF, b3_small)

    b_mid = np.where(small | huge, 1.0, b)
    J = _j_integral(-b_mid[..., None] / _ROOTS)
    F_pf = 2.0 / (3.0 * math.pi) * J.sum(axis=-1)
    sin2 = -(J / _ROOTS).sum(axis=-1) / (3.0 * b_mid**2)
    G_pf = F_pf - 2.0 / math.pi * sin2

    b_huge = np.where(huge, b, 1.0)
    F = np.where(small, F_series, np.where(huge, KAPPA / b_huge, F_pf))
    G = np.where(small, G_series, np.where(huge, KAPPA / b_huge, G_pf))
    if not cplx:
        F, G = F.real, G.real
    return F, G


def scaled_F(b):
    """b F(b), finite for every b >= 0 including b = inf (limit 4/(3 sqrt 3))."""
    b = np.asarray(b)
    finite = np.isfinite(b)
    bf = np.where(finite, b, 1.0)
    F, _ = fg(bf)
    return np.where(finite, bf * F, KAPPA)


def anomalous_b(model, zeta, q):
    """b = (1/q) ((3 pi / 4) omega_p^2 zeta / (c^2 v_F))^(1/3)."""
    zeta = np.asarray(zeta)
    root = (0.75 * math.pi * model.omega_p**2 / (SPEED_OF_LIGHT**2 * model.v_F)) ** (1 / 3)
    zeta_root = zeta ** (1 / 3) if np.iscomplexobj(zeta) else np.cbrt(zeta)
    return root * zeta_root / np.asarray(q)


def _positive(name, x):
    x = np.asarray(x)
    if np.any((x.real if np.iscomplexobj(x) else x) <= 0):
        raise DomainError(f"{name} must be positive")


def impedance_anomalous(model, zeta, q):
    """Closed-form impedances for the anomalous-limit permittivities.

    z_s = (zeta / c q) F(b)
    z_p = (q^2 / sqrt 3) (c v_F / zeta omega_p) + (zeta / c q) G(b)

    The first term of z_p is Thomas-Fermi screening of the longitudinal
    field; it dominates once b << 1.
    """
    _positive("zeta", zeta)
    _positive("q", q)
    zeta = np.asarray(zeta)
    q = np.asarray(q)
    F, G = fg(anomalous_b(model, zeta, q))
    local = zeta / (SPEED_OF_LIGHT * q)
    thomas_fermi = q**2 / math.sqrt(3.0) * SPEED_OF_LIGHT * model.v_F / (zeta * model.omega_p)
    return ImpedancePair(local * F, thomas_fermi + local * G, zeta, q)


def impedance_leontovich(model, zeta):
    """Momentum-independent impedance of the strong anomalous skin effect."""
    _positive("zeta", zeta)
    zeta = np.asarray(zeta, dtype=float)
    inner = 4.0 / (3.0 * math.pi) * model.v_F / SPEED_OF_LIGHT * zeta**2 / model.omega_p**2
    return KAPPA * np.cbrt(inner)


def impedance_local(eps, zeta, q):
    """Exact impedances of a local medium with permittivity ``eps``.

    z_s = (zeta/c) / kappa and z_p = c kappa / (zeta eps), with
    kappa = sqrt(eps zeta^2 / c^2 + q^2).
    """
    zeta = np.asarray(zeta)
    kappa = np.sqrt(eps * zeta**2 / SPEED_OF_LIGHT**2 + np.asarray(q) ** 2)
    return ImpedancePair(zeta / SPEED_OF_LIGHT / kappa,
                         SPEED_OF_LIGHT * kappa / (zeta * eps), zeta, q)


def impedance_exact(model, zeta, q, T=0.0, spec=DEFAULT_SPEC, dielectric=None,
                    polarizations="sp"):
    """Impedances from the k_z-integral representation, continued to i zeta.

    z_s = (zeta / pi c) int dk_z / ((zeta/c)^2 eps_t + k^2)
    z_p = (zeta / pi c) int dk_z / k^2 [q^2 c^2 / (zeta^2 eps_l)
                                         + k_z^2 / ((zeta/c)^2 eps_t + k^2)]

    with k^2 = q^2 + k_z^2.  Each integrand is even in k_z and is integrated
    over [0, inf) with the tail folded in by the quadrature map.

    Parameters
    ----------
    model : MetalModel
    zeta, q : float or array
        Frequency (rad/s) and transverse wave number (1/m); broadcast
        together.  Complex values (Re > 0) continue the result analytically.
    T : float
        Temperature for the default nonlocal permittivities.
    spec : QuadratureSpec
    dielectric : callable, optional
        ``dielectric(zeta, k) -> DielectricPair``; defaults to the Boltzmann
        functions of ``model`` at temperature ``T``.
    polarizations : {"sp", "s", "p"}
        Which impedances to compute; the others are returned as NaN.
    """
    _positive("zeta", zeta)
    _positive("q", q)
    if dielectric is None:
        def dielectric(z, k):
            return dielectric_nonlocal(model, z, k, T)
    zeta, q = np.broadcast_arrays(np.asarray(zeta), np.asarray(q))
    shape = zeta.shape
    zeta = zeta.ravel()
    q = q.ravel()
    m = zeta.size
    w2 = (zeta / SPEED_OF_LIGHT) ** 2

    # characteristic k_z scales: transverse crossover and longitudinal screening
    qa = np.abs(q)
    k_t = qa.copy()
    for _ in range(4):
        eps_t = dielectric(zeta, np.maximum(k_t, qa).astype(zeta.dtype) + 0 * q).eps_t
        k_t = np.maximum(qa, np.sqrt(np.abs(w2 * eps_t)))
    eps_l_q = dielectric(zeta, q).eps_l
    k_l = np.maximum(qa, qa * np.sqrt(np.abs(eps_l_q - 1)))

    kinds = [0] * ("s" in polarizations) + [1, 2] * ("p" in polarizations)
    if not kinds:
        raise DomainError(f"unknown polarizations {polarizations!r}")
    which = np.repeat(kinds, m)
    point = np.tile(np.arange(m), len(kinds))
    scales = np.concatenate([(k_t, k_l, k_t)[kind] for kind in kinds])

    def integrand(kz, idx):
        kind, j = which[idx], point[idx]
        k2 = q[j] ** 2 + kz**2
        k = np.sqrt(k2)
        eps = dielectric(zeta[j], k)
        transverse = 1.0 / (w2[j] * eps.eps_t + k2)
        out = np.where(kind == 0, transverse,
                       np.where(kind == 1,
                                q[j] ** 2 / (w2[j] * eps.eps_l * k2),
                                kz**2 / k2 * transverse))
        return out

    res = integrate_semi_infinite_batch(integrand, np.zeros(len(kinds) * m), spec, scales)
    res.raise_if_failed("impedance k_z integral")
    pref = 2.0 * zeta / (math.pi * SPEED_OF_LIGHT)
    vals = np.full((3, m), np.nan, dtype=res.values.dtype)
    vals[kinds] = res.values.reshape(len(kinds), m)
    z_s = pref * vals[0]
    z_p = pref * (vals[1] + vals[2])
    return ImpedancePair(z_s.reshape(shape), z_p.reshape(shape),
                         zeta.reshape(shape), q.reshape(shape))


@dataclass(frozen=True)
class RegimeReport:
    """Where a (model, a, T) point sits relative to the approximations.

    ``v_min`` is v at k = q = 1/2a and zeta = 2 pi k T / hbar; ``b`` is taken
    at the same point and coincides with ``A``.
    """

    T: float
    a: float
    tau: float
    A: float
    b: float
    v_min: float
    anomalous_valid: bool
    leontovich_valid: bool


def regime_report(model, a, T, v_threshold=10.0, b_threshold=10.0):
    """Classify the anomalous / Leontovich regimes at separation ``a``, ``T``."""
    if not a > 0:
        raise DomainError("separation must be positive")
    if T < 0:
        raise DomainError("temperature must be nonnegative")
    omega_a = SPEED_OF_LIGHT / (2 * a)
    tau = 2 * math.pi * BOLTZMANN * T / (hbar * omega_a)
    A = (0.75 * math.pi * SPEED_OF_LIGHT / model.v_F
         * model.omega_p**2 / omega_a**2 * tau) ** (1 / 3)
    zeta1 = tau * omega_a
    q = 1.0 / (2 * a)
    b = float(anomalous_b(model, zeta1, q)) if zeta1 > 0 else 0.0
    denom = zeta1 + float(relaxation_frequency(model, T))
    v_min = model.v_F * q / denom if denom > 0 else math.inf
    anomalous = v_min > v_threshold
    return RegimeReport(T, a, tau, A, b, v_min, anomalous, anomalous and b > b_threshold)
