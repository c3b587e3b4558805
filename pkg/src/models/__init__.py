"""
Finite-dimensional structures: algebras, coalgebras, corings, entwinings and linear categories.
"""

from src.models.algebra import (
    AlgebraHom,
    Bimodule,
    LeftModule,
    RetractionAlpha,
    RightModule,
    SepIdempotent,
    StructureAlgebra,
)
from src.models.category import CatModule, ExtAlpha, LinearCategory, LinearFunctor, ResGamma
from src.models.coalgebra import Coring, GrouplikeElement, RightComodule, StructureCoalgebra
from src.models.entwining import EntwinedModule, EntwiningStructure, LambdaS, OmegaT, ThetaMap, ZetaMap

__all__ = [
    "StructureAlgebra",
    "AlgebraHom",
    "RightModule",
    "LeftModule",
    "Bimodule",
    "SepIdempotent",
    "RetractionAlpha",
    "StructureCoalgebra",
    "RightComodule",
    "Coring",
    "GrouplikeElement",
    "EntwiningStructure",
    "EntwinedModule",
    "ThetaMap",
    "ZetaMap",
    "OmegaT",
    "LambdaS",
    "LinearCategory",
    "LinearFunctor",
    "CatModule",
    "ExtAlpha",
    "ResGamma",
]
