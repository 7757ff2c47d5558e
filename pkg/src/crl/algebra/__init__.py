"""Exact integer-polynomial algebra: gcd, resultants, elimination."""

from crl.algebra.bivariate import BivarIntPoly, Decision2D, common_root_exists_2d, eliminate_y
from crl.algebra.gcd import gcd_int, gcd_subresultant
from crl.algebra.intpoly import IntPoly
from crl.algebra.resultant import (
    ResultantVerdict,
    StageCounts,
    common_root_exists,
    modular_resultant_filter,
    resultant,
    resultant_bareiss,
    to_int_poly,
)

__all__ = [
    "BivarIntPoly",
    "Decision2D",
    "IntPoly",
    "ResultantVerdict",
    "StageCounts",
    "common_root_exists",
    "common_root_exists_2d",
    "eliminate_y",
    "gcd_int",
    "gcd_subresultant",
    "modular_resultant_filter",
    "resultant",
    "resultant_bareiss",
    "to_int_poly",
]
