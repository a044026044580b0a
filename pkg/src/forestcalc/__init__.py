"""Exact computations with indexed forests, forest polynomials and Omega-parking."""

__version__ = "0.1.0"

from .combinatorics import (BarredLetter, NVector, ParseError, Permutation, abb_sets,
                            lehmer_code, parse_word, reduced_words, to_barred)
from .polynomial import Polynomial
from .forest import IndexedForest, LabeledForest, decreasing_labelings, lbs_labelings
from .bases import (expand_in_basis, forest_polynomial, fundamental_qsym, schubert,
                    slide_polynomial, dual_forest_polynomial)
from .correspondence import omega_parking, is_parking, wf_correspondence, gamma_inverse
from .quotient import reduce_mod_qsym, divided_symmetrization
from .applications import a_w, multivariate_mixed_eulerian, schubert_forest_expansion

__all__ = [
    "BarredLetter", "NVector", "ParseError", "Permutation", "abb_sets", "lehmer_code",
    "parse_word", "reduced_words", "to_barred", "Polynomial", "IndexedForest",
    "LabeledForest", "decreasing_labelings", "lbs_labelings", "expand_in_basis",
    "forest_polynomial", "fundamental_qsym", "schubert", "slide_polynomial",
    "dual_forest_polynomial", "omega_parking", "is_parking", "wf_correspondence",
    "gamma_inverse", "reduce_mod_qsym", "divided_symmetrization", "a_w",
    "multivariate_mixed_eulerian", "schubert_forest_expansion",
]
