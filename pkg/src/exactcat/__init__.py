"""Exact structures on categories of projective modules over bound quiver algebras."""
from .exactlin import QQ, FieldSpec, Matrix
from .pathalg import AlgebraBasis, ParseError, groebner_basis, parse_presentation
from .exstruct import ExactStructureSpec, translation_quiver
from .reconstruct import reconstruct_algebra
from .k0 import k0_group

__all__ = [
    "QQ", "FieldSpec", "Matrix", "AlgebraBasis", "ParseError", "groebner_basis",
    "parse_presentation", "ExactStructureSpec", "translation_quiver",
    "reconstruct_algebra", "k0_group",
]
__version__ = "0.1.0"
