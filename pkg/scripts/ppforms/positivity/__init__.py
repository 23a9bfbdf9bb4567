"""Positivity testers for (p,p)-forms.

This package contains the bounded searches that look for negative pairings
and the reductions used to check the square-positivity results for
(2,2)-forms on C^4.

Modules:
    verdict: Search outcomes and their merge
    frames: Frame sampling on any C^n
    dinew: The 6x6 quadric criterion for (2,2)-forms on C^4
    plucker: Plücker coordinates and the p=3 quadric
    reduction: Basis reduction of (2,2)-forms
    reduced44: Central 4x4 block conditions and sum inequalities
    generators: Trusted positive (2,2)-forms (import directly)
    theorems: Square-positivity checks (import directly)
"""

from .dinew import dinew_test, factor_bivector, minors_map, quadric_sample
from .frames import FramePairing, sample_frames_test
from .plucker import plucker_embed, plucker_quadric_residual, plucker_quadric_sample
from .reduced44 import Reduced44, inequality_aa2, reduced44_check, to_reduced44
from .reduction import Reduction, reduce_basis_22, square_split
from .verdict import PositivityVerdict, merge_verdicts

__all__ = [
    "FramePairing",
    "PositivityVerdict",
    "Reduced44",
    "Reduction",
    "dinew_test",
    "factor_bivector",
    "inequality_aa2",
    "merge_verdicts",
    "minors_map",
    "plucker_embed",
    "plucker_quadric_residual",
    "plucker_quadric_sample",
    "quadric_sample",
    "reduce_basis_22",
    "reduced44_check",
    "sample_frames_test",
    "square_split",
    "to_reduced44",
]
