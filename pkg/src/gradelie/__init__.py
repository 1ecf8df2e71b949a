"""gradelie: exact structure theory for graded matrix Lie algebras.

Everything structural runs over the Gaussian rationals with no rounding;
floating point is confined to eigenvalue estimation, and every numeric guess
is re-verified exactly before it affects a verdict.
"""

from .scalars import GaussianRational, Q, format_scalar, parse_scalar
from .matrices import (
    Mat,
    NumMat,
    bracket,
    flatten,
    is_nilpotent_exact,
    jordan_product,
    to_numeric,
    trace_product,
    triple_product,
    unflatten,
)
from .subspaces import (
    Subspace,
    canonicalize,
    column_kernel,
    mat_inverse,
    mat_span,
    span_basis_mats,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from .groups import FinAbGroup, noncyclic_pairs, quotient_group, regular_rep
from .lie import (
    KillingGram,
    LieAlgebra,
    SeriesReport,
    ad_matrix,
    cartan_test,
    center,
    derived_series,
    engel_sum_check,
    is_engel_element,
    is_ideal,
    is_nil_subspace,
    is_nilpotent_lie,
    is_scalar_set,
    is_solvable,
    killing_form,
    lie_closure,
    lower_central_series,
    trace_orthogonal_ideal,
)
from .grading import (
    AmpliationResult,
    GradingError,
    SubgradedAlgebra,
    ampliate,
    check_maptri,
    coarsen_by_subgroup,
    endo_eigenspace_product_check,
    grading_from_automorphism,
    homogeneous_commutators,
    nonzero_opposite_bracket_ideal,
    opposite_bracket_ideal,
    verify_subgrading,
)
from .spectral import (
    Flag,
    IrreducibilityVerdict,
    assoc_closure_dim,
    decide_irreducible,
    eig_numeric,
    generalized_eigenspace_numeric,
    spectral_radius,
    triangularize_solvable,
    verify_flag,
)
from .structures import (
    JordanIdealChain,
    MatSubspace,
    is_jordan_algebra,
    is_jordan_ideal,
    is_lie_n_product_system,
    is_lie_triple_system,
    jordan_ideal_chain,
    jordan_to_z2,
    m_bracket_powers,
    triple_envelope,
    triple_to_z2,
)
from .documents import (
    AlgebraDocument,
    DocumentError,
    document_from,
    dumps_document,
    loads_document,
    materialize,
)
from .examples import EXAMPLE_NAMES, build_example
from .checks import CheckReport
from .campaigns import CampaignResult, run_campaign

__version__ = "0.1.0"
