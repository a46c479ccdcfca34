"""Exact homological algebra engine.

The job runner lives in ``src.core.pipeline`` and is imported from there; this
package only re-exports the mathematical layers.
"""

from .algebras import Bimodule, StructAlgebra, unitalize
from .complexes import ChainComplex, ChainMap, DoubleComplex, HomologyClassSpace, totalize
from .errors import EngineError, InvariantViolation, UnknownCommand, ValidationFailure
from .exactla import ExactMatrix, Subspace, kernel, rank, snf
from .fincat import DiagramFunctor, FinCategory, colim0_coeq, derived_colim
from .freegraded import GradedFreeAlgebra, GradedPresentation, hopf_hc_odd, necklace_count
from .grouphom import FinGroup, GModule, cyclic_group_oracle, group_homology
from .hochcyclic import cyclic_homology, hochschild, lambda_homology, magnus_check, sbi_sequence
from .steinberg import FiniteRing, gamma_generators_trivial, steinberg_relations_check

__all__ = [
    "Bimodule",
    "StructAlgebra",
    "unitalize",
    "ChainComplex",
    "ChainMap",
    "DoubleComplex",
    "HomologyClassSpace",
    "totalize",
    "EngineError",
    "InvariantViolation",
    "UnknownCommand",
    "ValidationFailure",
    "ExactMatrix",
    "Subspace",
    "kernel",
    "rank",
    "snf",
    "DiagramFunctor",
    "FinCategory",
    "colim0_coeq",
    "derived_colim",
    "GradedFreeAlgebra",
    "GradedPresentation",
    "hopf_hc_odd",
    "necklace_count",
    "FinGroup",
    "GModule",
    "cyclic_group_oracle",
    "group_homology",
    "cyclic_homology",
    "hochschild",
    "lambda_homology",
    "magnus_check",
    "sbi_sequence",
    "FiniteRing",
    "gamma_generators_trivial",
    "steinberg_relations_check",
]
