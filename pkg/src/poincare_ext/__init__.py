"""Verification-grade numerical toolkit for the centrally extended
Poincare group in 1+1 dimensions: group law and adjoint calculus,
Lie-algebra cohomology, coadjoint-orbit classification, unitary
irreducible representations, polynomial quantization, and the quantum
dynamics of the uniformly accelerated relativistic particle.
"""

from .group import (
    AlgebraElement,
    CoadjointPoint,
    GroupElement,
    ModelParams,
    bracket,
    casimir_pairing,
    coadjoint_action,
    compose,
    exp_map,
    identity,
    inverse,
    log_map,
)

__version__ = "1.0.0"

__all__ = [
    "AlgebraElement",
    "CoadjointPoint",
    "GroupElement",
    "ModelParams",
    "bracket",
    "casimir_pairing",
    "coadjoint_action",
    "compose",
    "exp_map",
    "identity",
    "inverse",
    "log_map",
    "__version__",
]
