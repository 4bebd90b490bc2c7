"""Exact engine for amalgams of finite groups and connected graded algebras.

Computes normal forms and Poincare series of pushouts along split injective
maps, integral Mayer-Vietoris kernels of graded-commutative rings, and the
verification identities that tie them together.
"""

from .errors import (AmalgError, CheckFailure, DegreeOverflow,
                     FreenessFailure, InputError)
from .fields import GF, QQ, Field
from .linalg import (Echelon, GradedAbelianGroup, GradedMap,
                     GradedVectorSpace, ModuleData, SmithNormalForm,
                     ZGradedMap, kernel_cokernel, normalize_torsion,
                     row_reduce, rref, smith_normal_form,
                     tensor_over_algebra, trivial_module)
from .ncpoly import Generator, NcPoly, parse_ncpoly
from .presented import (AlgebraMorphism, PresentedAlgebra, TruncatedAlgebra,
                        check_morphism, naive_quotient_dims, truncated_basis)

__all__ = [
    "AmalgError", "CheckFailure", "DegreeOverflow", "FreenessFailure",
    "InputError", "GF", "QQ", "Field", "Echelon", "GradedAbelianGroup",
    "GradedMap", "GradedVectorSpace", "ModuleData", "SmithNormalForm",
    "ZGradedMap", "kernel_cokernel", "normalize_torsion", "row_reduce",
    "rref", "smith_normal_form", "tensor_over_algebra", "trivial_module",
    "Generator", "NcPoly", "parse_ncpoly", "AlgebraMorphism",
    "PresentedAlgebra", "TruncatedAlgebra", "check_morphism",
    "naive_quotient_dims", "truncated_basis",
]
