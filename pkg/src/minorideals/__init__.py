"""Exact polynomial arithmetic, Groebner bases and ideals of minors of matrices with identified entries."""

from .groebner import GroebnerBasis, Ideal, buchberger, height, ideal_intersection, krull_dimension, normal_form
from .polymatrix import PolyMatrix, determinant, generic_matrix, minors, paper_matrices
from .polyring import GF32003, GREVLEX, LEX, QQ, BlockOrder, Field, Polynomial, Ring
from .specialize import IdentificationSequence, LabeledMatrix, check_theorem, is_bad

__all__ = [
    "GroebnerBasis", "Ideal", "buchberger", "height", "ideal_intersection", "krull_dimension", "normal_form",
    "PolyMatrix", "determinant", "generic_matrix", "minors", "paper_matrices",
    "GF32003", "GREVLEX", "LEX", "QQ", "BlockOrder", "Field", "Polynomial", "Ring",
    "IdentificationSequence", "LabeledMatrix", "check_theorem", "is_bad",
]
