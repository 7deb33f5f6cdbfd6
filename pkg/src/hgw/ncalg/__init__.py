"""Presented noncommutative algebras, tensor products and bounded ideal membership."""

from .ideal import (DEFAULT_DEGREE_CAP, CapacityError, DegreeCapError, IdealBasis, Reducer,
                    Verdict, ZeroCheck, ideal_basis, is_zero_mod, normal_form)
from .matrix import NcMatrix, mat_mul, mat_scalar, mat_transpose
from .morphism import (AlgMorphism, apply_morphism, compose, identity_morphism,
                       morphism_well_defined, morphisms_equal, multiply_factors)
from .poly import Alphabet, NcPoly, TensorElem, poly_mul, tensor_mul
from .presentation import Presentation, free_algebra, unit_algebra, x_name
