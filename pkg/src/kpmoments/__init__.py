"""Exact hydrogenic radial moments via the Kramers-Pasternack recurrences.

Natural atomic units throughout (hbar = mu = e^2 = a0 = 1); every value is
an exact :class:`fractions.Fraction`.
"""

from .errors import (
    DivergentIntegral,
    KPError,
    MomentDoesNotExist,
    QuantumNumberError,
    RangeError,
)
from .ladder import RadialState, build_state, norm_gap_product, normalization_constant_sq, top_state
from .moments import (
    MomentValue,
    inverse_second,
    kp_residual,
    moment,
    pasternack_inversion,
    ratio_step_check,
)
from .operalg import RadialOp, build_hamiltonian, build_hypervirial_O, build_lower, build_raise
from .oracle import oracle_moment, oracle_wavefunction, verify_all
from .radialfunc import PolyExp, PolyExpTerm, energy, inner_product

__version__ = "0.1.0"

__all__ = [
    "DivergentIntegral",
    "KPError",
    "MomentDoesNotExist",
    "QuantumNumberError",
    "RangeError",
    "RadialState",
    "build_state",
    "norm_gap_product",
    "normalization_constant_sq",
    "top_state",
    "MomentValue",
    "inverse_second",
    "kp_residual",
    "moment",
    "pasternack_inversion",
    "ratio_step_check",
    "RadialOp",
    "build_hamiltonian",
    "build_hypervirial_O",
    "build_lower",
    "build_raise",
    "oracle_moment",
    "oracle_wavefunction",
    "verify_all",
    "PolyExp",
    "PolyExpTerm",
    "energy",
    "inner_product",
]
