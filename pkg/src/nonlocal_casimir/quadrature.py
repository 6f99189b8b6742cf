"""Adaptive Gauss-Kronrod quadrature, vectorized over batches of integrals.

Every integral in the package is smooth (or has an integrable power-law
endpoint) and decays at least algebraically, so a 15-point Gauss-Kronrod
rule with global bisection is enough.  The twist is batching: the free
energy needs thousands of structurally identical integrals (one per
Matsubara frequency, per contour point, per wave vector), so the
integrator refines all of them at once and calls the integrand with one
flat array of abscissae per sweep.

Integrands are called as ``f(x, idx)`` where ``idx[i]`` is the problem
index that abscissa ``x[i]`` belongs to.  Complex integrands are
integrated component-wise (the real and imaginary parts share nodes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from .errors import DomainError, NonConvergence

__all__ = [
    "QuadratureSpec",
    "IntegralResult",
    "BatchResult",
    "DEFAULT_SPEC",
    "integrate_batch",
    "integrate_semi_infinite_batch",
    "integrate_finite",
    "integrate_semi_infinite",
    "zeta3",
]

# QUADPACK qk15 abscissae/weights; Gauss-7 nodes are the odd-indexed ones.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:15:2] = _WG[2::-1]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive integration.

    ``max_subdivisions`` bounds the number of subintervals per integral.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 400

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if not self.abs_tol >= 0:
            raise DomainError("abs_tol must be nonnegative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")

    def tightened(self, factor=10.0):
        return QuadratureSpec(self.rel_tol / factor, self.abs_tol / factor,
                              self.max_subdivisions)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    value: complex | float
    error_estimate: float
    converged: bool


@dataclass(frozen=True)
class BatchResult:
    values: np.ndarray
    errors: np.ndarray
    converged: np.ndarray

    def raise_if_failed(self, what="integral"):
        if not np.all(self.converged):
            bad = np.flatnonzero(~self.converged)
            raise NonConvergence(
                f"{what}: {bad.size} of {self.values.size} integrals did not "
                f"converge (first index {bad[0]}, error {self.errors[bad[0]]:.3g})")
        return self


def _gk15(f, lo, hi, idx):
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel(), np.repeat(idx, 15)))
    fx = fx.reshape(x.shape)
    kronrod = fx @ KRONROD_WEIGHTS
    gauss = fx @ GAUSS_WEIGHTS
    mean = kronrod / 2.0
    resasc = np.abs(fx - mean[:, None]) @ KRONROD_WEIGHTS
    resabs = np.abs(fx) @ KRONROD_WEIGHTS
    # QUADPACK error heuristic, applied to the complex modulus
    diff = np.abs(kronrod - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(resasc > 0,
                          resasc * np.minimum(1.0, (200.0 * diff / resasc) ** 1.5),
                          diff)
    err = np.maximum(scaled, 50.0 * _EPS * resabs)
    return kronrod * half, np.abs(half) * err


def _sum_by(pid, values, m):
    if np.iscomplexobj(values):
        return (np.bincount(pid, values.real, m)
                + 1j * np.bincount(pid, values.imag, m))
    return np.bincount(pid, values, m)


def integrate_batch(f, a, b, spec=DEFAULT_SPEC):
    """Integrate a batch of problems ``f(., j)`` over ``[a[j], b[j]]``.

    Parameters
    ----------
    f : callable
        ``f(x, idx)`` evaluated on flat arrays; must return an array of the
        same shape (real or complex).
    a, b : array_like
        Finite interval endpoints, one pair per problem.
    spec : QuadratureSpec

    Returns
    -------
    BatchResult
        Values, error estimates and a per-problem convergence mask.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    a, b = np.broadcast_arrays(a, b)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise DomainError("interval endpoints must be finite")
    m = a.size
    lo, hi = a.ravel().copy(), b.ravel().copy()
    pid = np.arange(m)
    val, err = _gk15(f, lo, hi, pid)
    count = np.ones(m, dtype=int)

    while True:
        total = _sum_by(pid, val, m)
        total_err = np.bincount(pid, err, m)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
        pending = total_err > tol
        if not pending.any():
            break
        worst = np.zeros(m)
        np.maximum.at(worst, pid, err)
        split = pending[pid] & (err >= worst[pid] / 8.0) & (count[pid] < spec.max_subdivisions)
        if not split.any():
            break
        s_lo, s_hi, s_pid = lo[split], hi[split], pid[split]
        mid = 0.5 * (s_lo + s_hi)
        new_lo = np.concatenate([s_lo, mid])
        new_hi = np.concatenate([mid, s_hi])
        new_pid = np.concatenate([s_pid, s_pid])
        new_val, new_err = _gk15(f, new_lo, new_hi, new_pid)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        pid = np.concatenate([pid[keep], new_pid])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])
        count += np.bincount(s_pid, minlength=m)

    total = _sum_by(pid, val, m)
    total_err = np.bincount(pid, err, m)
    tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(total))
    return BatchResult(total.reshape(a.shape), total_err.reshape(a.shape),
                       (total_err <= tol).reshape(a.shape))


def integrate_semi_infinite_batch(f, a, spec=DEFAULT_SPEC, scale=1.0):
    """Integrate ``f(., j)`` over ``[a[j], inf)`` for a batch of problems.

    The tail is folded onto ``u in [0, 1)`` with ``x = a + L u / (1 - u)``,
    ``L = scale[j]``, so the truncation error is part of the Kronrod
    estimate.  ``scale`` should be the length over which the integrand
    varies; it only affects efficiency.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if not np.all(np.isfinite(a)):
        raise DomainError("lower limit must be finite")
    scale = np.broadcast_to(np.asarray(scale, dtype=float), a.shape).ravel()
    a_flat = a.ravel()

    def mapped(u, idx):
        one_minus = 1.0 - u
        length = scale[idx]
        x = a_flat[idx] + length * u / one_minus
        return f(x, idx) * (length / one_minus**2)

    res = integrate_batch(mapped, np.zeros(a.size), np.ones(a.size), spec)
    return BatchResult(res.values.reshape(a.shape), res.errors.reshape(a.shape),
                       res.converged.reshape(a.shape))


def _scalar(f):
    return lambda x, idx: f(x)


def integrate_finite(f, a, b, spec=DEFAULT_SPEC, power=1):
    """Integrate a vectorized ``f`` over ``[a, b]``.

    ``power > 1`` substitutes ``x = a + (b - a) w**power`` to remove an
    integrable ``(x - a)**p`` endpoint singularity; ``power = 3`` makes
    ``x**(-1/3)`` and ``x**(2/3)`` polynomial in ``w``.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("use integrate_semi_infinite for infinite limits")
    if a > b:
        raise DomainError(f"lower limit {a} exceeds upper limit {b}")
    if a == b:
        return IntegralResult(0.0, 0.0, True)
    if power == 1:
        g = _scalar(f)
        lo, hi = a, b
    else:
        width = b - a

        def g(w, idx):
            return f(a + width * w**power) * (width * power * w**(power - 1))
        lo, hi = 0.0, 1.0
    res = integrate_batch(g, [lo], [hi], spec)
    result = IntegralResult(res.values[0], float(res.errors[0]), bool(res.converged[0]))
    if not result.converged:
        raise NonConvergence(f"integral over [{a}, {b}] did not converge "
                             f"(error {result.error_estimate:.3g})")
    return result


def integrate_semi_infinite(f, a, spec=DEFAULT_SPEC, scale=1.0):
    """Integrate a vectorized ``f`` over ``[a, inf)``."""
    if not math.isfinite(a):
        raise DomainError("lower limit must be finite")
    res = integrate_semi_infinite_batch(_scalar(f), [a], spec, scale)
    result = IntegralResult(res.values[0], float(res.errors[0]), bool(res.converged[0]))
    if not result.converged:
        raise NonConvergence(f"integral over [{a}, inf) did not converge "
                             f"(error {result.error_estimate:.3g})")
    return result


@lru_cache(maxsize=None)
def zeta3():
    """Apery's constant zeta(3)."""
    return float(special.zeta(3.0))
