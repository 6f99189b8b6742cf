"""Metal parameters and dielectric response on the imaginary frequency axis.

All frequency arguments are imaginary-axis frequencies zeta (rad/s), where
response functions are real.  The functions also accept complex ``zeta``
so that the free-energy contour terms can continue them off the axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError

__all__ = [
    "ResponseKind",
    "Constant",
    "PowerLaw",
    "ResidualPlusPowerLaw",
    "MetalModel",
    "DielectricPair",
    "gold_like",
    "relaxation_frequency",
    "f_longitudinal",
    "f_transverse",
    "dielectric_nonlocal",
    "dielectric_anomalous",
    "dielectric_local",
]


class ResponseKind(enum.Enum):
    LOCAL_DRUDE = "local_drude"
    LOCAL_PLASMA = "local_plasma"
    NONLOCAL_BOLTZMANN = "nonlocal_boltzmann"
    ANOMALOUS_LIMIT = "anomalous_limit"


@dataclass(frozen=True)
class Constant:
    omega_tau: float

    def __call__(self, T):
        return self.omega_tau + 0.0 * np.asarray(T, dtype=float)


@dataclass(frozen=True)
class PowerLaw:
    """omega_tau(T) = omega_tau0 * (T / T_ref)**exponent.

    Exponents above one make the relaxation rate fall faster than linearly
    as T -> 0 (the default 5 mimics Bloch-Grueneisen phonon scattering).
    """

    omega_tau0: float
    T_ref: float = 300.0
    exponent: float = 5.0

    def __post_init__(self):
        if self.omega_tau0 < 0 or self.T_ref <= 0 or self.exponent < 1:
            raise DomainError("PowerLaw needs omega_tau0 >= 0, T_ref > 0, exponent >= 1")

    def __call__(self, T):
        return self.omega_tau0 * (np.asarray(T, dtype=float) / self.T_ref) ** self.exponent


@dataclass(frozen=True)
class ResidualPlusPowerLaw:
    """A power law sitting on a residual (impurity) floor ``omega_res``."""

    omega_res: float
    omega_tau0: float
    T_ref: float = 300.0
    exponent: float = 5.0

    def __post_init__(self):
        if self.omega_res < 0:
            raise DomainError("omega_res must be nonnegative")
        PowerLaw(self.omega_tau0, self.T_ref, self.exponent)

    def __call__(self, T):
        return self.omega_res + PowerLaw(self.omega_tau0, self.T_ref, self.exponent)(T)


@dataclass(frozen=True)
class MetalModel:
    """A free-electron metal.

    Parameters
    ----------
    omega_p : float
        Plasma frequency, rad/s.
    v_F : float
        Fermi velocity, m/s.
    relaxation : callable
        ``T -> omega_tau(T)``; one of the relaxation laws in this module.
    response : ResponseKind
        Which dielectric description the model selects by default.

    Notes
    -----
    The Boltzmann description is only valid for wave numbers below the
    Fermi wave number; that bound is not checked here.
    """

    omega_p: float
    v_F: float
    relaxation: object = field(default_factory=lambda: PowerLaw(3.5e13))
    response: ResponseKind = ResponseKind.NONLOCAL_BOLTZMANN

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError("omega_p must be positive")
        if not 0 < self.v_F < SPEED_OF_LIGHT:
            raise DomainError("v_F must lie in (0, c)")

    def with_(self, **changes):
        fields = dict(omega_p=self.omega_p, v_F=self.v_F,
                      relaxation=self.relaxation, response=self.response)
        fields.update(changes)
        return MetalModel(**fields)


def gold_like(**changes):
    """Demonstration defaults: omega_p = 1.37e16 rad/s, v_F = 1.4e6 m/s."""
    return MetalModel(1.37e16, 1.4e6).with_(**changes)


@dataclass(frozen=True)
class DielectricPair:
    eps_l: np.ndarray | float
    eps_t: np.ndarray | float


def relaxation_frequency(model, T):
    """Relaxation frequency omega_tau (rad/s) at temperature ``T`` (K)."""
    if np.any(np.asarray(T) < 0):
        raise DomainError("temperature must be nonnegative")
    return model.relaxation(T)


# Taylor coefficients in v**2 of f_t and of (v - arctan v) / v**3
_FT_SERIES = [1.0] + [3.0 * (-1) ** (n + 1) * (1.0 / (2 * n + 3) - 1.0 / (2 * n + 1)) / 2.0
                      for n in range(1, 8)]
_VMA_SERIES = [(-1) ** n / (2 * n + 3) for n in range(9)]
_SERIES_BELOW = 1e-2

def _poly_v2(coeffs, v2):
    out = np.zeros_like(v2)
    for c in reversed(coeffs):
        out = out * v2 + c
    return out


def _with_series(direct, coeffs, v):
    # closed form everywhere, Taylor series patched in where v is small
    v = np.asarray(v)
    small = np.abs(v) < _SERIES_BELOW
    if not small.any():
        return direct(v)
    out = np.array(direct(np.where(small, 1.0, v)))
    out[small] = _poly_v2(coeffs, v[small] ** 2)
    return out


def f_transverse(v):
    """f_t(v) = 3/(2 v^3) [(1 + v^2) arctan v - v]; tends to 1 as v -> 0."""
    return _with_series(lambda x: 1.5 * ((1 + x * x) * np.arctan(x) - x) / x**3, _FT_SERIES, v)


def _v_minus_arctan_over_v3(v):
    return _with_series(lambda x: (x - np.arctan(x)) / x**3, _VMA_SERIES, v)


def f_longitudinal(v, relax_ratio=0.0):
    """f_l(v) with ``relax_ratio = omega_tau / zeta``.

    Written as 3 g / (1 + relax_ratio v^2 g) with g = (v - arctan v)/v^3,
    which is the same expression without the 0/0 at small v.
    """
    g = _v_minus_arctan_over_v3(v)
    v = np.asarray(v)
    return 3.0 * g / (1.0 + relax_ratio * v * v * g)


def _check_positive(**kw):
    for name, val in kw.items():
        arr = np.asarray(val)
        if np.iscomplexobj(arr):
            bad = np.any(arr.real <= 0)
        else:
            bad = np.any(arr <= 0)
        if bad:
            raise DomainError(f"{name} must be positive")


def dielectric_nonlocal(model, zeta, k, T):
    """Boltzmann longitudinal and transverse permittivities at (zeta, k).

    Parameters
    ----------
    model : MetalModel
    zeta : float or array
        Imaginary-axis frequency, rad/s (complex allowed for continuation).
    k : float or array
        Wave number, 1/m.
    T : float
        Temperature, K; sets omega_tau through the model's relaxation law.
    """
    _check_positive(zeta=zeta, k=k)
    omega_tau = relaxation_frequency(model, T)
    zeta = np.asarray(zeta)
    k = np.asarray(k)
    v = model.v_F * k / (zeta + omega_tau)
    scale = model.omega_p**2 / (zeta * (zeta + omega_tau))
    eps_l = 1.0 + scale * f_longitudinal(v, omega_tau / zeta)
    eps_t = 1.0 + scale * f_transverse(v)
    return DielectricPair(eps_l, eps_t)


def dielectric_anomalous(model, zeta, k):
    """Large-v limit of the Boltzmann functions; omega_tau drops out."""
    _check_positive(zeta=zeta, k=k)
    zeta = np.asarray(zeta)
    k = np.asarray(k)
    eps_l = 1.0 + 3.0 * (model.omega_p / (model.v_F * k)) ** 2 + 0.0 * zeta
    eps_t = 1.0 + 0.75 * np.pi * model.omega_p**2 / (zeta * model.v_F * k)
    return DielectricPair(eps_l, eps_t)


def dielectric_local(model, zeta, T=0.0, kind=None):
    """Local Drude or plasma permittivity epsilon(i zeta)."""
    _check_positive(zeta=zeta)
    kind = kind or model.response
    zeta = np.asarray(zeta)
    if kind is ResponseKind.LOCAL_PLASMA:
        return 1.0 + model.omega_p**2 / zeta**2
    if kind is ResponseKind.LOCAL_DRUDE:
        return 1.0 + model.omega_p**2 / (zeta * (zeta + relaxation_frequency(model, T)))
    raise DomainError(f"dielectric_local needs a local response, got {kind}")
