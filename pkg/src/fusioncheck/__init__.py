"""Exact verification of fusion-ring and modular-data invariants."""

from .catalog import CatalogEntry, generate
from .cyclotomic import CycloNum, RationalPoly, zeta
from .fusion_ring import DimensionFunction, FPData, FusionRing, fp_dims
from .modular import ModularData
from .tordet import BlockAutomorphism, TorsionDetValue

__all__ = [
    "BlockAutomorphism",
    "CatalogEntry",
    "CycloNum",
    "DimensionFunction",
    "FPData",
    "FusionRing",
    "ModularData",
    "RationalPoly",
    "TorsionDetValue",
    "fp_dims",
    "generate",
    "zeta",
]
