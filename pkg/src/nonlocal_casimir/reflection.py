"""Reflection coefficients in the dimensionless (xi, y) variables.

With a plate separation ``a`` the natural frequency unit is
omega_a = c / 2a and wave numbers are measured in units of 1/2a:

    xi = zeta / omega_a,   y = 2 a sqrt(q^2 + zeta^2/c^2),   y >= xi.

The Lifshitz integrand needs r_s(xi, y) and r_p(xi, y) on the real axis
and, for the contour terms, at complex xi with y = xi + s, s >= 0.  The
reflectivity suppliers below all accept complex input.  They also take
an optional ``transverse2 = y^2 - xi^2`` so callers can pass it without
the cancellation of computing it from nearly equal y and xi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError
from .impedance import KAPPA, fg, impedance_exact, scaled_F
from .material import MetalModel, ResponseKind, dielectric_local
from .quadrature import QuadratureSpec

__all__ = [
    "ReflectionPair",
    "wave_impedances",
    "reflection_from_impedance",
    "r_s_anomalous_dimensionless",
    "r_p_low_frequency",
    "thomas_fermi_ratio",
    "omega_a",
    "anomalous_A",
    "Reflectivity",
    "PerfectReflector",
    "ConstantReflectivity",
    "AnomalousReflectivity",
    "NonlocalReflectivity",
    "LocalReflectivity",
]


@dataclass(frozen=True)
class ReflectionPair:
    r_s: np.ndarray | float
    r_p: np.ndarray | float
    xi: np.ndarray | float
    y: np.ndarray | float


def omega_a(a):
    """omega_a = c / 2a, rad/s."""
    if not a > 0:
        raise DomainError("separation must be positive")
    return SPEED_OF_LIGHT / (2.0 * a)


def thomas_fermi_ratio(model, a):
    """u = (1/sqrt 3)(v_F/c)(omega_a/omega_p), the screening length over 2a."""
    return model.v_F / (math.sqrt(3.0) * SPEED_OF_LIGHT) * omega_a(a) / model.omega_p


def anomalous_A(model, a, xi):
    """A(xi) = ((3 pi/4)(c/v_F)(omega_p/omega_a)^2 xi)^(1/3).

    Complex ``xi`` uses the principal cube root.  At xi = tau this is the
    crossover parameter A.
    """
    const = 0.75 * math.pi * SPEED_OF_LIGHT / model.v_F * (model.omega_p / omega_a(a)) ** 2
    xi = np.asarray(xi)
    root = xi ** (1 / 3) if np.iscomplexobj(xi) else np.cbrt(xi)
    return const ** (1 / 3) * root


def wave_impedances(xi, y, a=None):
    """Vacuum impedances z_s0 = xi / y and z_p0 = y / xi.

    ``a`` is accepted for symmetry with the physical variables; in the
    dimensionless form the separation drops out.
    """
    xi = np.asarray(xi, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y < xi) or np.any(xi < 0):
        raise DomainError("need y >= xi >= 0")
    if np.any((y == 0) & (xi == 0)):
        raise DomainError("xi and y cannot both vanish")
    with np.errstate(divide="ignore"):
        return xi / y, np.where(xi > 0, y / np.where(xi > 0, xi, 1.0), np.inf)


def reflection_from_impedance(z0, z, pol):
    """r_s = -(z0 - z)/(z0 + z) or r_p = (z0 - z)/(z0 + z).

    The leading minus of r_s is kept even though only r^2 enters the free
    energy.  ``z0`` may be infinite (grazing p-polarization), giving r_p = 1.
    """
    z0 = np.asarray(z0)
    z = np.asarray(z)
    if pol not in ("s", "p"):
        raise DomainError(f"polarization must be 's' or 'p', got {pol!r}")
    if np.any(z0 + z == 0):
        raise DomainError("z0 + z vanishes")
    with np.errstate(invalid="ignore"):
        r = np.where(np.isinf(z0), 1.0, (z0 - z) / (z0 + z))
    return -r if pol == "s" else r


def r_s_anomalous_dimensionless(x):
    """Reduced r_s = -(1 - F(1/x)) / (1 + F(1/x)) of the small-xi limit, x = y/A."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("x must be positive")
    ratio = x * scaled_F(1.0 / x)  # F(1/x), accurate for small x too
    return -(1 - ratio) / (1 + ratio)


def r_p_low_frequency(model, a, y, exact=False):
    """Thomas-Fermi corrected r_p at xi -> 0.

    The linear form is 1 - 2u y and needs 2u y < 1; ``exact=True`` gives
    (1 - u y)/(1 + u y) for any y, u = :func:`thomas_fermi_ratio`.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("y must be positive")
    uy = thomas_fermi_ratio(model, a) * y
    if exact:
        return (1 - uy) / (1 + uy)
    if np.any(2 * uy >= 1):
        raise DomainError("Thomas-Fermi correction exceeds 1; linearization invalid")
    return 1 - 2 * uy


def _transverse2(xi, y, transverse2):
    if transverse2 is not None:
        return transverse2
    return (y - xi) * (y + xi)


def _ratio_to_r(w):
    # w = z / z0; r = (1 - w)/(1 + w) up to the s-polarization sign
    return (1 - w) / (1 + w)


class Reflectivity:
    """Base class for reflectivity suppliers.

    Subclasses implement ``__call__(xi, y, T=0.0, transverse2=None)``
    returning a :class:`ReflectionPair`, and may refine ``scale_hint``,
    the y-length over which r varies (used only as a quadrature hint).
    """

    def __call__(self, xi, y, T=0.0, transverse2=None):
        raise NotImplementedError

    def scale_hint(self, xi):
        return 1.0

    def reflect(self, xi, y, T, transverse2, is_s):
        """r_s where ``is_s`` is true, r_p elsewhere."""
        pair = self(xi, y, T, transverse2)
        return np.where(is_s, pair.r_s, pair.r_p)


class PerfectReflector(Reflectivity):
    """r_s = -1, r_p = 1 at every (xi, y)."""

    def __call__(self, xi, y, T=0.0, transverse2=None):
        one = np.ones(np.broadcast(np.asarray(xi), np.asarray(y)).shape)
        return ReflectionPair(-one, one, xi, y)


@dataclass(frozen=True)
class ConstantReflectivity(Reflectivity):
    """Fixed r_s, r_p; useful as a test oracle."""

    r_s: float
    r_p: float

    def __call__(self, xi, y, T=0.0, transverse2=None):
        shape = np.broadcast(np.asarray(xi), np.asarray(y)).shape
        return ReflectionPair(np.full(shape, self.r_s), np.full(shape, self.r_p), xi, y)


@dataclass(frozen=True)
class AnomalousReflectivity(Reflectivity):
    """Reflectivity from the anomalous-skin-effect impedances.

    In dimensionless form, with b = A(xi)/sqrt(y^2 - xi^2) and
    u = :func:`thomas_fermi_ratio`,

        z_s/z_s0 = y F(b) / sqrt(y^2 - xi^2)
        z_p/z_p0 = u (y^2 - xi^2)/y + xi^2 G(b) / (y sqrt(y^2 - xi^2))

    Parameters
    ----------
    model : MetalModel
    a : float
        Separation, m.
    p_mode : {"full", "reduced", "perfect"}
        "reduced" keeps only the screening term of z_p, r_p = (1-uy)/(1+uy);
        "perfect" sets r_p = 1.
    """

    model: MetalModel
    a: float
    p_mode: str = "full"

    def __post_init__(self):
        if self.p_mode not in ("full", "reduced", "perfect"):
            raise DomainError(f"unknown p_mode {self.p_mode!r}")
        omega_a(self.a)

    @property
    def u(self):
        return thomas_fermi_ratio(self.model, self.a)

    def scale_hint(self, xi):
        return max(abs(xi), float(abs(anomalous_A(self.model, self.a, abs(xi)))), 1e-300)

    def __call__(self, xi, y, T=0.0, transverse2=None):
        xi = np.asarray(xi)
        y = np.asarray(y)
        kt2 = _transverse2(xi, y, transverse2)
        kt = np.sqrt(kt2)
        A = anomalous_A(self.model, self.a, xi)
        with np.errstate(divide="ignore", invalid="ignore"):
            b = np.where(A == 0, 0.0, A / kt)
        big = np.abs(b) > 1
        b_big = np.where(big, b, 2.0)
        b_small = np.where(big, 0.5, b)
        F_small, G_small = fg(b_small)
        # large b: y F / kt = y (b F) / A keeps everything finite as kt -> 0
        with np.errstate(divide="ignore", invalid="ignore"):
            A_safe = np.where(big, A, 1.0)
            w_s = np.where(big, y * scaled_F(b_big) / A_safe, y * F_small / np.where(big, 1.0, kt))
        r_s = -_ratio_to_r(w_s)

        if self.p_mode == "perfect":
            r_p = np.ones(np.broadcast(xi, y).shape)
        elif self.p_mode == "reduced":
            r_p = _ratio_to_r(self.u * y)
        else:
            F_big, G_big = fg(b_big)
            # xi^2 G / (y kt): for big b write G/kt = (b G)/A
            with np.errstate(divide="ignore", invalid="ignore"):
                g_over_kt = np.where(big, b_big * G_big / A_safe,
                                     G_small / np.where(big, 1.0, kt))
            w_p = self.u * kt2 / y + xi**2 * g_over_kt / y
            r_p = _ratio_to_r(w_p)
        return ReflectionPair(r_s, r_p, xi, y)


@dataclass(frozen=True)
class LocalReflectivity(Reflectivity):
    """Fresnel coefficients of a local Drude or plasma metal.

    r_s = (y - y_m)/(y + y_m), r_p = (eps y - y_m)/(eps y + y_m) with
    y_m = sqrt(y^2 + (eps - 1) xi^2).  At xi = 0 the s-coefficient of the
    Drude model vanishes while the plasma model keeps it finite.
    """

    model: MetalModel
    a: float
    kind: ResponseKind = ResponseKind.LOCAL_DRUDE

    def __call__(self, xi, y, T=0.0, transverse2=None):
        xi = np.asarray(xi)
        y = np.asarray(y)
        zeta = xi * omega_a(self.a)
        zeta_safe = np.where(zeta == 0, 1.0, zeta)
        eps = dielectric_local(self.model, zeta_safe, T, self.kind)
        # (eps - 1) xi^2 has a finite xi -> 0 limit for the plasma model
        chi_xi2 = (eps - 1) * xi**2
        if self.kind is ResponseKind.LOCAL_PLASMA:
            chi_xi2 = np.where(zeta == 0, (self.model.omega_p / omega_a(self.a)) ** 2, chi_xi2)
        else:
            chi_xi2 = np.where(zeta == 0, 0.0, chi_xi2)
        y_m = np.sqrt(y * y + chi_xi2)
        r_s = (y - y_m) / (y + y_m)
        with np.errstate(invalid="ignore"):
            r_p = np.where(zeta == 0, 1.0, (eps * y - y_m) / (eps * y + y_m))
        return ReflectionPair(r_s, r_p, xi, y)


@dataclass(frozen=True)
class NonlocalReflectivity(Reflectivity):
    """Reflectivity from the exact Boltzmann impedances.

    Each call integrates over k_z for every (xi, y) point, so this supplier
    is orders of magnitude slower than :class:`AnomalousReflectivity`.  At
    xi = 0 the static limits are used: r_s = 0 and Thomas-Fermi screening
    z_p/z_p0 = u y / sqrt(1 + (u y)^2).
    """

    model: MetalModel
    a: float
    spec: QuadratureSpec = QuadratureSpec(rel_tol=1e-8, abs_tol=0.0)

    def scale_hint(self, xi):
        return max(abs(xi), float(abs(anomalous_A(self.model, self.a, abs(xi)))), 1e-300)

    def __call__(self, xi, y, T=0.0, transverse2=None):
        r_s, r_p = self._coefficients(xi, y, T, transverse2, None)
        return ReflectionPair(r_s, r_p, xi, y)

    def reflect(self, xi, y, T, transverse2, is_s):
        r_s, r_p = self._coefficients(xi, y, T, transverse2, is_s)
        return np.where(is_s, r_s, r_p)

    def _coefficients(self, xi, y, T, transverse2, is_s):
        # is_s=None: both polarizations everywhere; else only the one needed
        xi, y = np.broadcast_arrays(np.asarray(xi), np.asarray(y))
        kt2 = np.broadcast_to(_transverse2(xi, y, transverse2), xi.shape)
        dtype = np.result_type(xi, y, kt2, float)
        r_s = np.zeros(xi.shape, dtype)
        uy = thomas_fermi_ratio(self.model, self.a) * y
        r_p = np.array(_ratio_to_r(uy / np.sqrt(1 + uy * uy)), dtype=dtype)
        dynamic = xi != 0
        wanted = {"s": dynamic, "p": dynamic}
        if is_s is not None:
            is_s = np.broadcast_to(is_s, xi.shape)
            wanted = {"s": dynamic & is_s, "p": dynamic & ~is_s}
        for pol, mask in wanted.items():
            if not np.any(mask):
                continue
            xd, yd = xi[mask], y[mask]
            zeta = xd * omega_a(self.a)
            q = np.sqrt(kt2[mask]) / (2 * self.a)
            pair = impedance_exact(self.model, zeta, q, T, self.spec, polarizations=pol)
            if pol == "s":
                r_s[mask] = -_ratio_to_r(pair.z_s * yd / xd)
            else:
                r_p[mask] = _ratio_to_r(pair.z_p * xd / yd)
        return r_s, r_p
