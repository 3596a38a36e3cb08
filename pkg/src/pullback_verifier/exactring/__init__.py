from fractions import Fraction as Rat

from .symbols import (SYMBOLS, Poly, RatFunc, NonConvergent, mono,
                      ratfunc_eq, geometric_sum, symmetric_quotient)
from .numbers import (QuadElem, LocalRing, InertElem, SplitElem, RamElem,
                      local_val, qval, quad_alpha, splitting_type, legendre,
                      unit_part_residue, NotUnit, INF)
from .cyclo import CycInt, cyclotomic_poly, additive_character

__all__ = [
    "Rat", "SYMBOLS", "Poly", "RatFunc", "NonConvergent", "mono",
    "ratfunc_eq", "geometric_sum", "symmetric_quotient",
    "QuadElem", "LocalRing", "InertElem", "SplitElem", "RamElem",
    "local_val", "qval", "quad_alpha", "splitting_type", "legendre",
    "unit_part_residue", "NotUnit", "INF",
    "CycInt", "cyclotomic_poly", "additive_character",
]
