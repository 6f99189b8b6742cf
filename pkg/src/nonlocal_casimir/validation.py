"""The acceptance suite: eleven numerical checks shared by the CLI and tests.

Each ``criterion_*`` function returns a :class:`CriterionResult` holding
one :class:`Check` per measured quantity plus a runtime check against the
criterion's time budget.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT, k as BOLTZMANN

from . import asymptotics, impedance, quadrature
from .lifshitz import (
    AlphaParameterization,
    delta_f_abel_plana,
    direct_breakdown,
    energy_prefactor,
    entropy,
    g_function,
    temperature_from_tau,
)
from .material import (
    DielectricPair,
    PowerLaw,
    ResidualPlusPowerLaw,
    ResponseKind,
    dielectric_anomalous,
    dielectric_local,
    gold_like,
)
from .quadrature import DEFAULT_SPEC
from .reflection import AnomalousReflectivity, NonlocalReflectivity, PerfectReflector

__all__ = ["Check", "CriterionResult", "CRITERIA", "run_all", "separation_for", "temperature_for_A"]


@dataclass(frozen=True)
class Check:
    label: str
    measured: float
    target: float
    tolerance: float
    passed: bool


@dataclass
class CriterionResult:
    number: int
    name: str
    checks: list = field(default_factory=list)
    runtime_s: float = 0.0
    budget_s: float = math.inf
    error: str | None = None

    @property
    def passed(self):
        return (self.error is None and self.runtime_s <= self.budget_s
                and all(c.passed for c in self.checks))

    def as_dict(self):
        out = asdict(self)
        out["passed"] = self.passed
        return out

    def summary_line(self):
        status = "PASS" if self.passed else "FAIL"
        worst = max(self.checks, key=lambda c: (not c.passed, _budget_used(c)), default=None)
        what = ""
        if worst is not None:
            what = (f" | {worst.label}: measured={worst.measured:.6g} "
                    f"target={worst.target:.6g} tol={worst.tolerance:.3g}")
        if self.error:
            what = f" | error: {self.error}"
        return (f"[{status}] criterion {self.number:2d} {self.name} "
                f"({self.runtime_s:.2f}s / {self.budget_s:g}s){what}")


def _budget_used(check):
    if check.tolerance == 0:
        return math.inf if check.measured != check.target else 0.0
    return abs(check.measured - check.target) / check.tolerance


def _absolute(label, measured, target, tolerance):
    return Check(label, float(measured), float(target), float(tolerance),
                 bool(abs(measured - target) <= tolerance))


def _relative(label, measured, target, tolerance):
    """Relative comparison, reported as measured/target - 1 against 0."""
    deviation = measured / target - 1.0
    return Check(label, float(deviation), 0.0, float(tolerance), bool(abs(deviation) <= tolerance))


def _upper(label, measured, bound):
    return Check(label, float(measured), float(bound), 0.0, bool(measured < bound))


def separation_for(model, A, tau_value):
    """Separation (m) at which the crossover parameter equals A at ``tau_value``.

    A^3 = 3 pi omega_p^2 a^2 tau / (c v_F).
    """
    return math.sqrt(A**3 * SPEED_OF_LIGHT * model.v_F
                     / (3 * math.pi * model.omega_p**2 * tau_value))


def temperature_for_A(model, a, A):
    tau_value = A**3 * SPEED_OF_LIGHT * model.v_F / (3 * math.pi * model.omega_p**2 * a * a)
    return temperature_from_tau(a, tau_value)


def _timed(number, name, budget, body):
    result = CriterionResult(number, name, budget_s=budget)
    start = time.perf_counter()
    try:
        result.checks.extend(body())
    except Exception as exc:  # reported, not raised: one failure must not hide the rest
        result.error = f"{type(exc).__name__}: {exc}"
    result.runtime_s = time.perf_counter() - start
    return result


def criterion_special_functions(spec=DEFAULT_SPEC):
    def body():
        kappa = impedance.KAPPA
        return [
            _absolute("F(0)", impedance.special_F(0.0, spec), 1.0, 1e-9),
            _absolute("G(0)", impedance.special_G(0.0, spec), 0.5, 1e-9),
            _absolute("100 F(100)", 100 * impedance.special_F(100.0, spec), kappa, 1e-3),
            _absolute("100 G(100)", 100 * impedance.special_G(100.0, spec), kappa, 1e-3),
        ]
    return _timed(1, "special-function asymptotics", 1.0, body)


def criterion_constant_c(spec=DEFAULT_SPEC):
    return _timed(2, "constant C", 1.0,
                  lambda: [_absolute("C", asymptotics.constant_c_small_A(spec), 0.0938, 5e-4)])


def criterion_constant_p1(spec=DEFAULT_SPEC):
    return _timed(3, "constant p1", 1.0,
                  lambda: [_absolute("p1", asymptotics.constant_p1(spec), 0.0133, 5e-4)])


def criterion_bracket(spec=DEFAULT_SPEC):
    def body():
        bracket = asymptotics.bracket_small_A(spec)
        fine = spec.tightened(100.0)
        c_value = asymptotics.constant_c_small_A(fine)
        bose = asymptotics.bose_integral_I(fine)
        return [
            _absolute("bracket", bracket, 0.0146, 5e-4),
            _relative("bracket vs C (1/10 + 2I)", bracket, c_value * (0.1 + 2 * bose), 1e-6),
        ]
    return _timed(4, "small-A bracket coefficient", 1.0, body)


SMALL_A_SEPARATION = 200e-9
LARGE_A_TAU = 1e-3


def criterion_closed_form_agreement(spec=DEFAULT_SPEC):
    """Engine vs closed forms.

    Both sides use alpha_s = 0 and a self-consistent alpha_p, so the
    compared quantity is the temperature-dependent s-polarization part.
    The small-A engine runs with the leading-order s kernel (e^{-y} -> 1),
    the large-A engine keeps the exponential.
    """
    model = gold_like(response=ResponseKind.ANOMALOUS_LIMIT)
    alpha = AlphaParameterization(0.0, "self_consistent")

    def body():
        checks = []
        a = SMALL_A_SEPARATION
        refl = AnomalousReflectivity(model, a)
        for A in (0.02, 0.05, 0.1):
            T = temperature_for_A(model, a, A)
            engine = delta_f_abel_plana(model, a, T, alpha, spec, refl, leading_order_s=True)
            closed = asymptotics.delta_f_small_A(model, a, T, alpha, spec)
            checks.append(_relative(f"small A={A}", engine.delta_F, closed, 0.02))
        for A in (10.0, 30.0):
            a = separation_for(model, A, LARGE_A_TAU)
            T = temperature_from_tau(a, LARGE_A_TAU)
            engine = delta_f_abel_plana(model, a, T, alpha, spec, AnomalousReflectivity(model, a))
            closed = asymptotics.delta_f_large_A(model, a, T, alpha, spec)
            checks.append(_relative(f"large A={A:g}", engine.delta_F, closed, 0.05))
        return checks
    return _timed(5, "closed-form / engine agreement", 60.0, body)


def criterion_dual_path(spec=DEFAULT_SPEC):
    model = gold_like()
    a = 1e-6
    alpha = AlphaParameterization(0.5, 0.5)
    refl = PerfectReflector()

    def body():
        checks = []
        for tau_value in (1e-3, 1e-2, 1e-1):
            T = temperature_from_tau(a, tau_value)
            contour = delta_f_abel_plana(model, a, T, alpha, spec, refl)
            direct = direct_breakdown(model, a, T, alpha, spec, refl)
            budget = contour.error + direct.error
            checks.append(_absolute(f"tau={tau_value:g} |direct - contour| (J/m^2)",
                                    direct.delta_F - contour.delta_F, 0.0, budget))
        return checks
    return _timed(6, "dual-path identity", 60.0, body)


def _impedance_grid():
    model = gold_like()
    root = (0.75 * math.pi * model.omega_p**2 / (SPEED_OF_LIGHT**2 * model.v_F)) ** (1 / 3)
    q = np.logspace(5, 7, 5)
    # corners of the (zeta, q) grid sit at b = 0.01 and b = 100
    zeta = np.geomspace((0.01 * q[-1] / root) ** 3, (100 * q[0] / root) ** 3, 5)
    return model, *np.meshgrid(zeta, q, indexing="ij")


def criterion_impedance_consistency(spec=DEFAULT_SPEC):
    def body():
        model, zeta, q = _impedance_grid()
        b = impedance.anomalous_b(model, zeta, q)
        exact = impedance.impedance_exact(
            model, zeta, q, spec=spec,
            dielectric=lambda z, k: dielectric_anomalous(model, z, k))
        closed = impedance.impedance_anomalous(model, zeta, q)
        dev_s = np.max(np.abs(exact.z_s / closed.z_s - 1))
        dev_p = np.max(np.abs(exact.z_p / closed.z_p - 1))

        drude = model.with_(relaxation=PowerLaw(3.5e13))
        zeta_l, q_l = np.meshgrid(np.geomspace(1e11, 1e15, 5), np.logspace(5, 7, 5), indexing="ij")
        T = 300.0

        def local(z, k):
            eps = dielectric_local(drude, z, T, ResponseKind.LOCAL_DRUDE) + 0 * k
            return DielectricPair(eps, eps)
        exact_l = impedance.impedance_exact(drude, zeta_l, q_l, T, spec, dielectric=local)
        eps = dielectric_local(drude, zeta_l, T, ResponseKind.LOCAL_DRUDE)
        closed_l = impedance.impedance_local(eps, zeta_l, q_l)
        dev_ls = np.max(np.abs(exact_l.z_s / closed_l.z_s - 1))
        dev_lp = np.max(np.abs(exact_l.z_p / closed_l.z_p - 1))
        return [
            _absolute("b range min", b.min(), 0.01, 1e-9),
            _absolute("b range max", b.max(), 100.0, 1e-6),
            _absolute("anomalous z_s max rel dev", dev_s, 0.0, 1e-6),
            _absolute("anomalous z_p max rel dev", dev_p, 0.0, 1e-6),
            _absolute("local Drude z_s max rel dev", dev_ls, 0.0, 1e-8),
            _absolute("local Drude z_p max rel dev", dev_lp, 0.0, 1e-8),
        ]
    return _timed(7, "impedance consistency", 10.0, body)


ENTROPY_A_GRID = (0.08, 0.04, 0.02, 0.01)


def criterion_entropy(spec=DEFAULT_SPEC):
    """Negative entropy with T^(2/3) approach for alpha_s = 0; finite limit for 1/2."""
    model = gold_like(response=ResponseKind.ANOMALOUS_LIMIT)
    a = SMALL_A_SEPARATION
    refl = AnomalousReflectivity(model, a)

    def body():
        checks = []
        alpha = AlphaParameterization(0.0, "self_consistent")
        scaled = []
        for A in ENTROPY_A_GRID:
            T = temperature_for_A(model, a, A)
            point = entropy(model, a, T, alpha, spec=spec, reflectivity=refl)
            checks.append(_upper(f"S(A={A}) [J/K m^2] < 0", point.S, 0.0))
            scaled.append(abs(point.S) * T ** (-2.0 / 3.0))
        # relative change of |S| T^(-2/3) between neighbouring temperatures
        changes = [abs(scaled[i + 1] / scaled[i] - 1) for i in range(len(scaled) - 1)]
        for i in range(len(changes) - 1):
            checks.append(_upper(f"|S|T^(-2/3) change shrinks ({i + 1}->{i + 2})",
                                 changes[i + 1], changes[i]))
        checks.append(_upper("|S|T^(-2/3) lowest-T relative change", changes[-1], 0.01))

        half = AlphaParameterization(0.5, "self_consistent")
        T = temperature_for_A(model, a, ENTROPY_A_GRID[-1])
        point = entropy(model, a, T, half, spec=spec, reflectivity=refl)
        limit = BOLTZMANN / (8 * math.pi * a * a) * quadrature.zeta3() / 2
        checks.append(_relative("alpha_s=1/2: S / (k zeta(3) / 16 pi a^2)", point.S, limit, 0.02))
        return checks
    return _timed(8, "entropy sign and limits", 120.0, body)


TF_VF_GRID = tuple(f * 1.4e6 for f in (0.5, 0.75, 1.0, 1.5, 2.0))
TF_SEPARATION = 1e-6


def _constant_part_engine(model, a, spec):
    alpha = AlphaParameterization(0.5, "computed")
    T = temperature_for_A(model, a, 0.02)
    br = delta_f_abel_plana(model, a, T, alpha, spec, AnomalousReflectivity(model, a))
    s = br.per_polarization["s"]
    thermal_s = s["half_G"] - s["integral_01"] - s["im_term"] + 0.5 * s["static_G"]
    return br.bracket - thermal_s


def _constant_part_closed(model, a, spec):
    alpha = AlphaParameterization(0.5, "computed")
    T = temperature_for_A(model, a, 0.02)
    A = 0.02
    value = asymptotics.delta_f_small_A(model, a, T, alpha, spec) / energy_prefactor(a, T)
    return value - asymptotics.asymptotic_constants(spec).bracket_small_A * A * A


def criterion_thomas_fermi(spec=DEFAULT_SPEC):
    """A-independent part of Delta F across Fermi velocities, alpha_s = 1/2, computed alpha_p."""
    def body():
        engine, closed = [], []
        for v_F in TF_VF_GRID:
            model = gold_like(v_F=v_F, response=ResponseKind.ANOMALOUS_LIMIT)
            engine.append(_constant_part_engine(model, TF_SEPARATION, spec))
            closed.append(_constant_part_closed(model, TF_SEPARATION, spec))
        spread = lambda xs: (max(xs) - min(xs)) / abs(np.mean(xs))
        return [
            _absolute("closed-form relative spread", spread(closed), 0.0, 1e-6),
            _absolute("engine relative spread", spread(engine), 0.0, 1e-6),
        ]
    return _timed(9, "Thomas-Fermi cancellation", 30.0, body)


RELAXATION_SEPARATION = 200e-9
RELAXATION_TEMPERATURE = 0.01


def criterion_relaxation(spec=DEFAULT_SPEC):
    """Boltzmann engine with omega_tau(0) = 0 vs a 1e9 rad/s residual floor."""
    def body():
        a, T = RELAXATION_SEPARATION, RELAXATION_TEMPERATURE
        alpha = AlphaParameterization(0.0, "self_consistent")
        values = []
        for law in (PowerLaw(3.5e13), ResidualPlusPowerLaw(1e9, 3.5e13)):
            model = gold_like(relaxation=law)
            values.append(delta_f_abel_plana(model, a, T, alpha, spec,
                                             NonlocalReflectivity(model, a)).delta_F)
        report = impedance.regime_report(gold_like(), a, T)
        return [
            _upper("anomalous regime: 1 / v_min", 1.0 / report.v_min, 0.1),
            _relative("Delta F residual / clean", values[1], values[0], 1e-3),
        ]
    return _timed(10, "relaxation irrelevance", 60.0, body)


def criterion_perfect_reflector(spec=DEFAULT_SPEC):
    def body():
        value = g_function("s", 0.0, PerfectReflector(), spec)
        # module lookup on purpose: a perturbed zeta3 must show up here
        return [_absolute("G(0) + zeta(3)", value + quadrature.zeta3(), 0.0, 1e-8)]
    return _timed(11, "perfect-reflector G", 1.0, body)


CRITERIA = (
    criterion_special_functions,
    criterion_constant_c,
    criterion_constant_p1,
    criterion_bracket,
    criterion_closed_form_agreement,
    criterion_dual_path,
    criterion_impedance_consistency,
    criterion_entropy,
    criterion_thomas_fermi,
    criterion_relaxation,
    criterion_perfect_reflector,
)


def run_all(spec=DEFAULT_SPEC, only=None):
    """Run every criterion (or the numbers in ``only``) and return the results."""
    results = []
    for number, criterion in enumerate(CRITERIA, start=1):
        if only is None or number in only:
            results.append(criterion(spec))
    return results
