"""Exact-arithmetic toolkit for the promotion Markov chain on linear
extensions of finite posets: symbolic transition matrices, predicted
spectra with multiplicities, an independent characteristic-polynomial
oracle, stationary distributions, and seeded simulation."""

from .errors import (
    CapacityError,
    ClassError,
    CycleError,
    DimensionError,
    LabelingError,
    MultiplicityError,
    NonPositiveError,
    NotNaturalError,
    PairError,
    PositionError,
    PromwalkError,
    RangeError,
    RedundantCoverError,
    UpsetPropertyError,
)
from .forms import LinearForm, MultiPoly, parse_form
from .poset import (
    DEFAULT_CAP,
    Poset,
    StructureClass,
    UpsetLattice,
    break_cover,
    breakable_pairs,
    chain_completion,
    classify,
    is_naturally_labeled,
    parse_poset,
    poset_derangements,
    poset_from_json,
    poset_from_text,
    poset_to_json,
    upset_lattice,
)
from .extensions import (
    count_linear_extensions,
    hat_promotion,
    hat_promotion_direct,
    linear_extensions,
    promotion,
    promotion_graph,
    tau,
)
from .matrices import (
    RationalMatrix,
    SymbolicMatrix,
    evaluate,
    expand_ab,
    kron_assemble,
    transition_matrix,
)
from .charpoly import char_poly, poly_divide_root, poly_from_roots, poly_mul
from .spectra import (
    EigenvalueMultiset,
    LadderEigenPair,
    ak_a2_minus_edge_spectrum,
    break_edge_spectrum,
    chain_union_spectrum,
    check_upset_property,
    classical_derangements,
    forest_ladder_spectrum,
    forest_spectrum,
    ladder_eigensystem,
    ladder_levels,
)
from .stationary import (
    StationaryReport,
    convergence_bound,
    mixing_time_bound,
    partition_factors,
    partition_function,
    probability_vector,
    stationary_distribution,
    stationary_weight,
)
from .sim import SimReport, rfactor, simulate, step, tv_distance
from .oracle import (
    ExplorationReport,
    VerificationReport,
    explore_factorization,
    sample_points,
    verify_spectrum,
)

__version__ = "0.1.0"
