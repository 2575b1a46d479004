"""Explicit matrix groups over finite fields."""

from .enumerate import (
    ConjClass,
    ElementSet,
    Subgroup,
    centralizer,
    closure_keys,
    conj_orbit,
    conjugacy_classes,
    enumerate_group,
    is_conjugate,
    orbit_keys,
    subgroup,
)
from .groups import (
    ENUM_CAP,
    ORBIT_CAP,
    GroupHandle,
    GroupSpec,
    ProductGroup,
    antidiag,
    make_group,
    symplectic_form,
)
from .matrix import Matrix, MatrixSpace, matrix_space


def central_quotient_rep(group: GroupHandle, x: Matrix) -> Matrix:
    return group.central_quotient_rep(x)


enumerate = enumerate_group  # noqa: A001  (module-level name used by the public API)

__all__ = [
    "ConjClass", "ElementSet", "GroupHandle", "GroupSpec", "Matrix", "MatrixSpace", "ProductGroup",
    "Subgroup",
    "ENUM_CAP", "ORBIT_CAP", "antidiag", "central_quotient_rep", "centralizer", "closure_keys",
    "conj_orbit", "conjugacy_classes", "enumerate_group", "is_conjugate", "make_group",
    "matrix_space", "orbit_keys", "subgroup", "symplectic_form",
]
