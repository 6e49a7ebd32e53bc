"""Exact deformation calculus for finite-dimensional graded commutative
algebras: deformation spaces, split/semi-split classification, quantum
3-point-invariant extension feasibility, and cokernel rank bounds."""

from .fields import QQ, PrimeField, RationalField, field_by_name
from .algebra import (
    AlgebraHom,
    GradedAlgebra,
    pmn_algebra,
    pmn_index,
    tensor,
    truncated_poly,
    verify_algebra,
)
from .deformation import (
    Cochain2,
    DefSpace,
    DeformationTriple,
    coboundary,
    coboundary_space,
    cocycle_from_triple,
    cocycle_space,
    def_space,
    flatness_check,
    monogenic_deformation,
    pmn_coefficient_range,
    presented_pmn_deformation,
    sum_deformations,
    triple_from_cocycle,
    trivial_deformation,
)
from .structure import (
    PmnCoordinates,
    SemiSplitWitness,
    chern_deformation,
    classify_monogenic,
    classify_pmn,
    exterior_cochain,
    exterior_product,
    is_semisplit,
    is_split,
    pmn_shape,
    semisplit_subalgebra_criterion,
    subalgebra_span,
)
from .quantum import (
    ExtensionResult,
    ExtensionWitness,
    QuantumStructure,
    extension_solve,
    extension_subspace,
    feasible_class_subspace,
    star_product,
    truncated_psi,
    truncated_psi_pmn,
    verify_extension_axioms,
    verify_gw_axioms,
)
from .bounds import (
    BoundReport,
    CuspFeasibility,
    betti_cpn,
    betti_pmn,
    coker_table,
    cusp_feasibility,
    lambda_bound,
    semisplit_pipeline,
    split_subspace_dimension,
    theorem1_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
