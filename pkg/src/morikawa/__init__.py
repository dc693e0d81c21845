"""Smallest squares inscribed between a line and two tangent circles."""

from .errors import (
    ConvergenceError,
    DegenerateInput,
    DegreeDrop,
    DomainError,
    EmptyHistogram,
    MorikawaError,
    NotInscribed,
)
from .geometry import (
    CircleContact,
    ContactProfile,
    LineContact,
    Scene,
    SquarePose,
    bound_M,
    brute_force_mu,
    classify,
    inscribed_square,
    pivot_balance,
    pivot_y,
    side_length,
    side_lengths,
)
from .minimize import MuResult, lambda_fn, minimize_mu, mu, x_m, xi, z, z_prime
from .algebra import Poly, UniPoly, build_h, build_p, evaluate, resultant, resultant_chain_check, specialize
from .galois import CycleTypeHistogram, EvidenceReport, cycle_type_mod, s10_evidence, sample_cycle_types

__version__ = "0.1.0"
