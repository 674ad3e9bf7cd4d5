"""Exact computations for the rotor model with spectral parameters."""

from .exact_arith import ONE, Q, ZERO, EisensteinRational, format_eis, parse_eis
from .linkpatterns import LinkPattern, PairState, StateVector, check_algebra, pair_basis
from .rmatrix import SamplePoint
from .transfer import TransferMatrix, build_transfer_cbc, build_transfer_pbc_even
from .groundstate import GroundState, ground_state, solve_ground_state

__version__ = "0.1.0"

__all__ = [
    "EisensteinRational",
    "Q",
    "ONE",
    "ZERO",
    "format_eis",
    "parse_eis",
    "LinkPattern",
    "PairState",
    "StateVector",
    "check_algebra",
    "pair_basis",
    "SamplePoint",
    "TransferMatrix",
    "build_transfer_pbc_even",
    "build_transfer_cbc",
    "GroundState",
    "ground_state",
    "solve_ground_state",
]
