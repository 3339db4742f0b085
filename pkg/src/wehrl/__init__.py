"""Weyl systems, coherent-state frames, and Wehrl entropy over finite
abelian groups, with exact structural checks at desk scale."""

from .groups import (
    Character,
    DualSubgroup,
    FiniteAbelianGroup,
    GroupElement,
    GroupMismatchError,
    PhaseSpacePoint,
    PhaseSpaceSubgroup,
    Subgroup,
    all_subgroups,
    annihilator,
    coset_representatives,
    direct_product,
    dual_annihilator,
    is_corwin,
    maximal_compact,
    parse_generators,
    parse_group,
    parse_point,
    phase_space,
    subgroup_closure,
)
from .weyl import (
    CcrReport,
    HeisenbergElement,
    cocycle,
    cocycle_phase,
    compose_phase,
    heis_mul,
    verify_ccr,
    weyl_apply,
    weyl_matrix,
)
from .states import (
    DenseLimitError,
    basis_state,
    check_density_matrix,
    check_state_vector,
    dense_limit,
    maximally_mixed,
    pure_density,
    random_density_matrix,
    random_state_vector,
)
from .frames import (
    CoherentFrame,
    CosetBasis,
    NotVacuumError,
    coherent_state,
    coset_basis,
    detect_vacuum_subgroup,
    invariant_subspace_dim,
    overlap_matrix,
    resolution_residual,
    vacuum_vector,
)
from .entropy import (
    EntropyReport,
    HusimiTable,
    entropy_report,
    husimi,
    husimi_coset_spread,
    husimi_fast,
    husimi_marginal,
    measurement_channel,
    partial_trace,
    product_frame,
    pure_amplitudes,
    pure_state_entropy,
    subadditivity_gap,
    tensor,
    von_neumann_entropy,
    wehrl_entropy,
    wehrl_entropy_coset,
)
from .minimize import (
    MinimizerConfig,
    MinimizerResult,
    descend,
    entropy_gradient,
    minimize,
    nearest_coherent,
    scan_fiducials,
)
from .verify import CheckResult, run_checks, standard_suite, suite_pairs

__version__ = "0.1.0"
