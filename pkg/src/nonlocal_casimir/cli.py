"""Command-line front end.

    nonlocal-casimir run <config.json> [--out DIR]
    nonlocal-casimir validate [--json]
    nonlocal-casimir constants [--json]

Exit status: 0 on success, 1 when a validation criterion fails, 2 on a
configuration error.

Configuration (JSON, SI units)::

    {
      "metal": {"omega_p": 1.37e16, "v_F": 1.4e6,
                "relaxation": {"law": "power_law", "omega_tau0": 3.5e13,
                               "T_ref": 300, "exponent": 5},
                "response": "anomalous_limit"},
      "separation_m": 2e-7,
      "temperature_K": {"start": 1e-3, "stop": 10, "num": 9, "scale": "log"},
      "alpha_s": 0.0,
      "alpha_p": "computed",
      "engine": "asymptotic_auto",
      "finite_difference_entropy": true,
      "auto_thresholds": {"small_A": 0.3, "large_A": 100.0},
      "tolerances": {"rel_tol": 1e-9, "abs_tol": 1e-12, "max_subdivisions": 400},
      "output": {"path": "results.csv", "format": "csv"}
    }

``separation_m`` and ``temperature_K`` take a number, a list, or a grid
``{"start", "stop", "num", "scale": "linear" | "log"}``.  ``auto_thresholds`` sets where ``asymptotic_auto`` switches to the
small-A closed form (A below ``small_A``) and to the large-A closed form
(A above ``large_A`` with tau < 0.3); in between it uses the contour form,
or the Matsubara sum once tau >= 0.3.  The large-A form is only accurate to
a few percent for A of order 100, hence the default.  Relaxation laws:
``constant`` (omega_tau), ``power_law`` (omega_tau0, T_ref, exponent) and
``residual_power_law`` (omega_res plus the power-law keys).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import asymptotics, validation
from .errors import ConfigError, RegimeError
from .impedance import regime_report
from .lifshitz import (
    ABEL_PLANA_MAX_TAU,
    AlphaParameterization,
    delta_f_abel_plana,
    delta_f_direct,
    entropy,
    tau,
)
from .material import Constant, MetalModel, PowerLaw, ResidualPlusPowerLaw, ResponseKind
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .reflection import AnomalousReflectivity, LocalReflectivity, NonlocalReflectivity

__all__ = ["Scenario", "COLUMNS", "load_scenario", "run_scenario", "main"]

COLUMNS = (
    "T_K", "a_m", "tau", "A", "b", "v_min", "anomalous_valid", "leontovich_valid",
    "engine", "delta_F_J_m2", "S_method", "S_J_K_m2", "S_fd_J_K_m2",
    "f0_J_m2", "delta_F_s_J_m2", "delta_F_p_J_m2", "status",
)

ENGINES = ("matsubara", "abel_plana", "asymptotic_auto")
SMALL_A_LIMIT = 0.3
LARGE_A_LIMIT = 100.0
_TOP_KEYS = {"metal", "separation_m", "temperature_K", "alpha_s", "alpha_p", "engine",
             "finite_difference_entropy", "auto_thresholds", "tolerances", "output"}


@dataclass(frozen=True)
class Scenario:
    metal: MetalModel
    separations: tuple
    temperatures: tuple
    alpha: AlphaParameterization
    engine: str
    finite_difference_entropy: bool
    spec: QuadratureSpec
    output_path: str
    small_A_limit: float = SMALL_A_LIMIT
    large_A_limit: float = LARGE_A_LIMIT


def _number(raw, key, positive=True):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)) or not math.isfinite(raw):
        raise ConfigError(key, f"expected a finite number, got {raw!r}")
    if positive and raw <= 0:
        raise ConfigError(key, "must be positive")
    return float(raw)


def _grid(raw, key):
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        values = [_number(raw, key)]
    elif isinstance(raw, list):
        values = [_number(v, f"{key}[{i}]") for i, v in enumerate(raw)]
    elif isinstance(raw, dict):
        extra = set(raw) - {"start", "stop", "num", "scale"}
        if extra:
            raise ConfigError(f"{key}.{sorted(extra)[0]}", "unknown key")
        for part in ("start", "stop", "num"):
            if part not in raw:
                raise ConfigError(f"{key}.{part}", "missing")
        start = _number(raw["start"], f"{key}.start")
        stop = _number(raw["stop"], f"{key}.stop")
        num = raw["num"]
        if isinstance(num, bool) or not isinstance(num, int) or num < 1:
            raise ConfigError(f"{key}.num", "must be a positive integer")
        scale = raw.get("scale", "linear")
        if scale == "log":
            values = list(np.geomspace(start, stop, num))
        elif scale == "linear":
            values = list(np.linspace(start, stop, num))
        else:
            raise ConfigError(f"{key}.scale", f"expected 'linear' or 'log', got {scale!r}")
        values = [float(v) for v in values]
    else:
        raise ConfigError(key, "expected a number, a list or a grid object")
    if not values:
        raise ConfigError(key, "grid is empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError(key, "grid must be strictly increasing")
    return tuple(values)


def _relaxation(raw):
    key = "metal.relaxation"
    if not isinstance(raw, dict) or "law" not in raw:
        raise ConfigError(f"{key}.law", "missing relaxation law")
    law = raw["law"]
    params = {k: v for k, v in raw.items() if k != "law"}
    allowed = {
        "constant": ({"omega_tau"}, Constant),
        "power_law": ({"omega_tau0", "T_ref", "exponent"}, PowerLaw),
        "residual_power_law": ({"omega_res", "omega_tau0", "T_ref", "exponent"},
                               ResidualPlusPowerLaw),
    }
    if law not in allowed:
        raise ConfigError(f"{key}.law", f"unknown law {law!r}")
    names, cls = allowed[law]
    for name in params:
        if name not in names:
            raise ConfigError(f"{key}.{name}", "unknown key")
    values = {name: _number(v, f"{key}.{name}", positive=False) for name, v in params.items()}
    try:
        return cls(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, str(exc)) from None


def _metal(raw):
    if not isinstance(raw, dict):
        raise ConfigError("metal", "expected an object")
    extra = set(raw) - {"omega_p", "v_F", "relaxation", "response"}
    if extra:
        raise ConfigError(f"metal.{sorted(extra)[0]}", "unknown key")
    fields = {}
    for name in ("omega_p", "v_F"):
        if name not in raw:
            raise ConfigError(f"metal.{name}", "missing")
        fields[name] = _number(raw[name], f"metal.{name}")
    if "relaxation" in raw:
        fields["relaxation"] = _relaxation(raw["relaxation"])
    response = raw.get("response", "anomalous_limit")
    try:
        fields["response"] = ResponseKind(response)
    except ValueError:
        raise ConfigError("metal.response", f"unknown response {response!r}") from None
    try:
        return MetalModel(**fields)
    except ValueError as exc:
        raise ConfigError("metal", str(exc)) from None


def _thresholds(raw):
    if raw is None:
        return SMALL_A_LIMIT, LARGE_A_LIMIT
    if not isinstance(raw, dict):
        raise ConfigError("auto_thresholds", "expected an object")
    extra = set(raw) - {"small_A", "large_A"}
    if extra:
        raise ConfigError(f"auto_thresholds.{sorted(extra)[0]}", "unknown key")
    small = _number(raw.get("small_A", SMALL_A_LIMIT), "auto_thresholds.small_A")
    large = _number(raw.get("large_A", LARGE_A_LIMIT), "auto_thresholds.large_A")
    if small > 1:
        raise ConfigError("auto_thresholds.small_A", "the small-A form needs A < 1")
    if large < 1:
        raise ConfigError("auto_thresholds.large_A", "the large-A form needs A > 1")
    return small, large


def _spec(raw):
    if raw is None:
        return DEFAULT_SPEC
    if not isinstance(raw, dict):
        raise ConfigError("tolerances", "expected an object")
    extra = set(raw) - {"rel_tol", "abs_tol", "max_subdivisions"}
    if extra:
        raise ConfigError(f"tolerances.{sorted(extra)[0]}", "unknown key")
    try:
        return QuadratureSpec(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError("tolerances", str(exc)) from None


def load_scenario(path):
    """Parse and validate a JSON scenario; raises ConfigError naming the bad key."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be an object")
    extra = set(raw) - _TOP_KEYS
    if extra:
        raise ConfigError(sorted(extra)[0], "unknown key")
    for key in ("metal", "separation_m", "temperature_K"):
        if key not in raw:
            raise ConfigError(key, "missing")

    alpha_s = _number(raw.get("alpha_s", 0.0), "alpha_s", positive=False)
    if not 0 <= alpha_s <= 0.5:
        raise ConfigError("alpha_s", "must lie in [0, 0.5]")
    alpha_p = raw.get("alpha_p", "computed")
    if isinstance(alpha_p, str):
        if alpha_p not in ("computed", "self_consistent"):
            raise ConfigError("alpha_p", "expected 'computed', 'self_consistent' or a number")
    else:
        alpha_p = _number(alpha_p, "alpha_p", positive=False)

    engine = raw.get("engine", "asymptotic_auto")
    if engine not in ENGINES:
        raise ConfigError("engine", f"expected one of {', '.join(ENGINES)}")
    fd = raw.get("finite_difference_entropy", True)
    if not isinstance(fd, bool):
        raise ConfigError("finite_difference_entropy", "expected true or false")

    output = raw.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output", "expected an object")
    extra = set(output) - {"path", "format"}
    if extra:
        raise ConfigError(f"output.{sorted(extra)[0]}", "unknown key")
    if output.get("format", "csv") != "csv":
        raise ConfigError("output.format", "only 'csv' is supported")
    out_path = output.get("path", "results.csv")
    if not isinstance(out_path, str) or not out_path:
        raise ConfigError("output.path", "expected a file name")

    small_A, large_A = _thresholds(raw.get("auto_thresholds"))
    return Scenario(
        metal=_metal(raw["metal"]),
        separations=_grid(raw["separation_m"], "separation_m"),
        temperatures=_grid(raw["temperature_K"], "temperature_K"),
        alpha=AlphaParameterization(alpha_s, alpha_p),
        engine=engine,
        finite_difference_entropy=fd,
        spec=_spec(raw.get("tolerances")),
        output_path=out_path,
        small_A_limit=small_A,
        large_A_limit=large_A,
    )


def _reflectivity(model, a):
    kind = model.response
    if kind is ResponseKind.ANOMALOUS_LIMIT:
        return AnomalousReflectivity(model, a)
    if kind is ResponseKind.NONLOCAL_BOLTZMANN:
        return NonlocalReflectivity(model, a)
    return LocalReflectivity(model, a, kind)


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _grid_point(sc, a, T):
    model = sc.metal
    refl = _reflectivity(model, a)
    report = regime_report(model, a, T)
    row = dict(T_K=T, a_m=a, tau=report.tau, A=report.A, b=report.b, v_min=report.v_min,
               anomalous_valid=report.anomalous_valid,
               leontovich_valid=report.leontovich_valid)
    status = []
    small_tau = tau(a, T) < ABEL_PLANA_MAX_TAU

    engine = sc.engine
    s_method = "finite_difference"
    if engine == "asymptotic_auto":
        if report.A < sc.small_A_limit:
            engine, s_method = "asymptotic_small_A", "asymptotic_small_A"
        elif report.A > sc.large_A_limit and small_tau:
            engine, s_method = "asymptotic_large_A", "asymptotic_large_A"
        else:
            engine = "abel_plana" if small_tau else "matsubara"
    row["engine"] = engine

    try:
        if engine == "asymptotic_small_A":
            row["delta_F_J_m2"] = asymptotics.delta_f_small_A(model, a, T, sc.alpha, sc.spec)
        elif engine == "asymptotic_large_A":
            row["delta_F_J_m2"] = asymptotics.delta_f_large_A(model, a, T, sc.alpha, sc.spec)
        elif engine == "abel_plana":
            br = delta_f_abel_plana(model, a, T, sc.alpha, sc.spec, refl)
            row.update(delta_F_J_m2=br.delta_F, f0_J_m2=br.f0,
                       delta_F_s_J_m2=br.per_polarization["s"]["delta_F"],
                       delta_F_p_J_m2=br.per_polarization["p"]["delta_F"])
        else:
            row["delta_F_J_m2"] = delta_f_direct(model, a, T, sc.alpha, sc.spec, refl)
    except RegimeError as exc:
        status.append(f"regime_error: {exc}")
    except ArithmeticError as exc:
        status.append(f"error: {exc}")

    row["S_method"] = s_method
    fd_point = None
    if sc.finite_difference_entropy or s_method == "finite_difference":
        try:
            fd_point = entropy(model, a, T, sc.alpha, "finite_difference", sc.spec, refl)
            row["S_fd_J_K_m2"] = fd_point.S
        except (RegimeError, ArithmeticError, RuntimeError) as exc:
            status.append(f"entropy_error: {exc}")
    if s_method == "finite_difference":
        row["S_J_K_m2"] = fd_point.S if fd_point else None
    else:
        try:
            row["S_J_K_m2"] = entropy(model, a, T, sc.alpha, s_method, sc.spec).S
        except RegimeError as exc:
            status.append(f"regime_error: {exc}")
    row["status"] = "; ".join(status) or "ok"
    return row


def run_scenario(scenario, out_dir=None):
    """Evaluate every (T, a) grid point and write the CSV; returns the output path."""
    out = Path(out_dir or ".") / scenario.output_path
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = [_grid_point(scenario, a, T)
            for a in scenario.separations for T in scenario.temperatures]
    with out.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in COLUMNS])
    return out


def _cmd_run(args):
    try:
        scenario = load_scenario(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    path = run_scenario(scenario, args.out)
    print(f"wrote {path}")
    return 0


def _cmd_validate(args):
    results = validation.run_all()
    if args.json:
        print(json.dumps([r.as_dict() for r in results], indent=2))
    else:
        for r in results:
            print(r.summary_line())
    return 0 if all(r.passed for r in results) else 1


_PROVENANCE = {
    "c_small_A": "-int_0^inf x ln(1 - r_s(x)^2) dx, reduced anomalous r_s",
    "bracket_small_A": "C (1/10 + 2 I)",
    "p1": "int_0^inf (1+t^2)^(-1/6) sin(arctan(t)/3) / (e^(2 pi t) - 1) dt",
    "bose_I": "int_0^inf (1+t^2)^(1/3) sin(2 arctan(t)/3) / (e^(2 pi t) - 1) dt",
}


def _cmd_constants(args):
    consts = asdict(asymptotics.asymptotic_constants(DEFAULT_SPEC))
    if args.json:
        print(json.dumps({name: {"value": value, "definition": _PROVENANCE[name],
                                 "rel_tol": DEFAULT_SPEC.rel_tol}
                          for name, value in consts.items()}, indent=2))
    else:
        for name, value in consts.items():
            print(f"{name:16s} {value:.10f}   {_PROVENANCE[name]}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nonlocal-casimir",
        description="Casimir free energy and entropy of nonlocal metal plates.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a scenario sweep and write a CSV table")
    run.add_argument("config", help="scenario JSON file")
    run.add_argument("--out", help="output directory (default: current directory)")
    run.set_defaults(func=_cmd_run)
    val = sub.add_parser("validate", help="run the acceptance checks")
    val.add_argument("--json", action="store_true", help="machine-readable report")
    val.set_defaults(func=_cmd_validate)
    const = sub.add_parser("constants", help="print the asymptotic constants")
    const.add_argument("--json", action="store_true")
    const.set_defaults(func=_cmd_constants)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
