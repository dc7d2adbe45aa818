"""Nonabelian tensor squares of finite groups and the invariants they carry."""

from .abelian import (
    AbelianInvariants,
    BasedAbelianGroup,
    abelian_subquotients,
    abelian_tensor_square,
    elementary_two,
)
from .catalog import CATALOG, CatalogError, ExpectedRecord, catalog_lookup
from .coset import (
    CosetGroup,
    CosetTable,
    EnumerationExceeded,
    FpGroup,
    free_reduce,
    regular_permutation_rep,
    todd_coxeter,
)
from .groups import (
    ActionPair,
    BoundExceeded,
    FiniteGroup,
    GroupError,
    GroupHomomorphism,
    Perm,
    Subgroup,
    abelian_invariants_of_quotient,
    abelianization,
    check_compatible_actions,
    derived_subgroup,
    find_complement,
    order,
    quotient_group,
    semidirect_product,
    subgroup_generated,
)
from .named import GroupSpecError, make_named_group
from .snf import SNFResult, smith_normal_form
from .tensor import (
    HomotopyInvariants,
    InfeasibleMethod,
    TensorSquare,
    canonical_subgroups,
    commutator_map,
    homotopy_invariants,
    tensor_square,
    tensor_square_presentation,
)
from .theorems import (
    green_bound_check,
    odd_splitting,
    pi2s_closed_form,
    verify_complement_case,
    verify_perfect_normal_sequences,
    verify_semidirect_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
