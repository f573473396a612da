"""Orthogonal polynomials for a deformed q-Laguerre weight.

Arbitrary-precision construction of the monic orthogonal polynomials for

    w(x) = x**alpha / ((-(1-q) x; q)_inf * (-(1-q) t / x; q)_inf),   x > 0,

their recurrence coefficients, the ladder-operator auxiliaries, and numerical
checks of the difference equations those quantities satisfy.
"""

from qlaguerre.qarith import PrecisionContext, qnumber, qpochhammer_inf
from qlaguerre.weight import WeightParams, divided_kernel, potential_u, weight_eval
from qlaguerre.quadrature import QuadratureSpec, integrate_weighted, moment
from qlaguerre.orthopoly import RecurrenceTable, build_recurrence, polynomial_eval
from qlaguerre.ladder import AuxiliaryTable, compute_auxiliaries
from qlaguerre.painleve import PainleveState, propagate, to_painleve

__version__ = "0.1.0"

__all__ = [
    "AuxiliaryTable",
    "PainleveState",
    "PrecisionContext",
    "QuadratureSpec",
    "RecurrenceTable",
    "WeightParams",
    "build_recurrence",
    "compute_auxiliaries",
    "divided_kernel",
    "integrate_weighted",
    "moment",
    "polynomial_eval",
    "potential_u",
    "propagate",
    "qnumber",
    "qpochhammer_inf",
    "to_painleve",
    "weight_eval",
]
