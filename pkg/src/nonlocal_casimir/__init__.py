"""Casimir free energy and entropy between nonlocal metal plates.

The temperature correction to the Lifshitz free energy is evaluated with
anomalous-skin-effect and Boltzmann-nonlocal reflectivities, together with
closed-form low-temperature expansions in the crossover parameter A.
"""

from .errors import (
    ConfigError,
    DomainError,
    NonConvergence,
    RegimeError,
    RegimeWarning,
    StepTooLarge,
    TruncationWarning,
)
from .lifshitz import (
    AlphaParameterization,
    crossover_A,
    delta_f_abel_plana,
    delta_f_direct,
    entropy,
    free_energy_total,
    tau,
)
from .material import MetalModel, ResponseKind, gold_like
from .quadrature import QuadratureSpec
from .reflection import (
    AnomalousReflectivity,
    LocalReflectivity,
    NonlocalReflectivity,
    PerfectReflector,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaParameterization",
    "AnomalousReflectivity",
    "ConfigError",
    "DomainError",
    "LocalReflectivity",
    "MetalModel",
    "NonConvergence",
    "NonlocalReflectivity",
    "PerfectReflector",
    "QuadratureSpec",
    "RegimeError",
    "RegimeWarning",
    "ResponseKind",
    "StepTooLarge",
    "TruncationWarning",
    "crossover_A",
    "delta_f_abel_plana",
    "delta_f_direct",
    "entropy",
    "free_energy_total",
    "gold_like",
    "tau",
]
