"""Certified pseudo-hyperbolic and Gleason distances on the closed ball of l-infinity."""

from .disc import (
    CertifiedValue,
    ComplexEnclosure,
    gleason_norm_from_rho,
    mobius,
    mobius_bound,
    rho_disc,
    rho_from_gleason_norm,
)
from .errors import GleasonError
from .metric import classify, gleason_norm_seq, rho_origin, rho_seq, same_part, shift_radius
from .seqspace import BallSeq, Constant, IndexSet, MobiusImage, Periodic, RadialPower, partition, restrict, sup_norm

__all__ = [
    "BallSeq",
    "CertifiedValue",
    "ComplexEnclosure",
    "Constant",
    "GleasonError",
    "IndexSet",
    "MobiusImage",
    "Periodic",
    "RadialPower",
    "classify",
    "gleason_norm_from_rho",
    "gleason_norm_seq",
    "mobius",
    "mobius_bound",
    "partition",
    "restrict",
    "rho_disc",
    "rho_from_gleason_norm",
    "rho_origin",
    "rho_seq",
    "same_part",
    "shift_radius",
    "sup_norm",
]
