"""oplab: exact computations in symmetric-group algebras, operadic ideal
slices, and polynomial identities of finite-dimensional algebras."""

__version__ = "0.1.0"

from .algebras import (
    AlgebraElement,
    AlgebraError,
    IdentityCheckInconsistency,
    StructureAlgebra,
    algebra_from_spec,
    direct_sum,
    evaluate,
    evaluate_nullary,
    evaluate_poly,
    grassmann_algebra,
    is_identity,
    is_identity_general,
    matrix_algebra,
    tensor_product,
)
from .freealg import (
    NcPoly,
    PolyParseError,
    act_poly,
    format_poly,
    multilinearize,
    operad_to_poly,
    parse_poly,
    poly_to_operad,
)
from .ideals import (
    BudgetExceeded,
    ClosureReport,
    GeneratorSet,
    IdealSlice,
    NONUNITAL,
    RoundtripReport,
    UNITAL,
    codimension,
    full_slice_map,
    generator_set_hash,
    ideal_slice_closure,
    ideal_slice_spanning,
    identities_slice,
    load_slice_file,
    membership,
    min_identity_degree,
    poly_generated_slice,
    roundtrip_check,
    save_slice_file,
    slice_cache_path,
    slice_polynomials,
    slices_equal,
    verify_ideal_closure,
)
from .linalg import (
    DimensionMismatch,
    RowBasis,
    SparseVector,
    format_rational,
    kernel_basis,
    parse_rational,
)
from .operad import (
    OperadElement,
    act,
    format_element,
    from_vector,
    full_compose,
    parse_element,
    partial_compose,
    standard_polynomial,
    to_vector,
)
from .perms import (
    ArityMismatch,
    Permutation,
    all_permutations,
    block_compose,
    format_permutation,
    identity,
    multiply,
    parse_permutation,
    perm_index,
)
