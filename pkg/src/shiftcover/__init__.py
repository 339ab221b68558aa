"""Finite-group TQFT transfer matrices for infinite cyclic covers, and the
strong-shift-equivalence toolkit used to compare them."""

from .errors import (
    BudgetError,
    DataConsistencyError,
    DivisibilityError,
    MalformedWordError,
    ParseError,
    ShapeError,
    ShiftcoverError,
    SizeLimitError,
)
from .groups import (
    ConjClassTable,
    FiniteGroup,
    conjugacy_classes,
    cyclic,
    dihedral,
    group_from_permutations,
    group_from_table,
    named_group,
    symmetric,
)
from .knots import (
    BraidWord,
    FiberedKnotData,
    braid_closure_presentation,
    braid_to_artin,
    builtin,
    fibered_to_cobordism,
)
from .presentations import (
    Homomorphism,
    Presentation,
    branched_quotient_presentation,
    count_homs,
    enumerate_homs,
    evaluate_word,
    free_product_with_free,
    hom_classes,
    mapping_torus_presentation,
)
from .symdyn import (
    NNMatrix,
    SSECertificate,
    SSEMove,
    ShiftInvariants,
    invariants_agree,
    is_elementary_equivalence,
    permutation_similarity_move,
    shift_invariants,
    smith_normal_form,
    sse_search,
)
from .tqft import (
    CobordismData,
    DirectedMultigraph,
    TransferMatrix,
    branched_cover_counts,
    char_poly,
    closed_invariant,
    closed_invariant_relative,
    compose,
    cover_count,
    graph_folded,
    graph_hat,
    periodic_point_counts,
    transfer_matrix,
    transfer_matrix_relative,
    verify_recursion,
)

__version__ = "0.1.0"
