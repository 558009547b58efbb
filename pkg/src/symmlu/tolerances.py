"""Centralized numerical tolerances.

Every comparing operation takes a Tolerances record (or a single float where
the public signature calls for one) so that thresholds are set in one place.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Tolerances", "DEFAULT_TOLERANCES"]


@dataclass(frozen=True)
class Tolerances:
    """Bundle of comparison thresholds.

    hermiticity   max |M - M^dagger| entry allowed in density-matrix checks
    norm          allowed deviation of state norms / trace from 1
    equality      generic state / matrix equality threshold
    cluster       chordal distance below which Majorana points merge
    match         chordal tolerance for point-configuration matching
    root_residual relative polynomial residual allowed at returned roots
    coeff_zero    relative magnitude below which a polynomial coefficient
                  counts as zero (degree trimming)
    """

    hermiticity: float = 1e-10
    norm: float = 1e-12
    equality: float = 1e-8
    cluster: float = 1e-6
    match: float = 1e-6
    root_residual: float = 1e-9
    coeff_zero: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()
