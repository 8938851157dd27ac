"""pptsep: PPT verdicts, canonical forms, and certified separable decompositions.

The package works with tripartite states on C^K (x) C^M (x) C^N whose global
rank equals the dimension N of the third subsystem.  For such states, being
PPT forces — after a local filter on C — a rigid algebraic normal form built
from commuting normal matrices, and that form converts directly into an
explicit, machine-checkable separable ensemble.  Everything here is organized
around making each step of that chain an independently verifiable computation.
"""

from .errors import (
    CertificationFailure,
    CommutatorViolation,
    DegeneracyUnresolved,
    DimensionMismatch,
    NoWitness,
    NormalizationError,
    NotHermitianError,
    NotPptError,
    NotPsdError,
    PptSepError,
    PreconditionError,
    RankMismatch,
    SingularError,
    StructureViolation,
)
from .linalg import (
    ALL_MASKS,
    MASK_A,
    MASK_B,
    MASK_C,
    MASK_NONE,
    SubsystemMask,
    TripartiteDims,
    TripartiteState,
    block,
    compose_index,
    conjugate_local,
    dagger,
    hermitize,
    kron,
    numeric_rank,
    partial_transpose,
    psd_inv_sqrt,
    psd_sqrt,
    sandwich_ab,
    split_index,
)
from .ppt import MaskResult, PptReport, is_psd, ppt_report
from .canonical import (
    CanonicalForm,
    ExtractionDiagnostics,
    ProductWitness,
    extract_canonical,
    filter_corner,
    find_witness,
    rotate_to_corner,
    verify_kernel_vectors,
)
from .ensembles import (
    EigenTable,
    EnsembleTerm,
    SeparableEnsemble,
    decompose,
    ensemble_from_form,
    simultaneous_diagonalize,
    verify_ensemble,
)
from .generate import (
    GenSpec,
    assemble_canonical_state,
    gen_canonical_state,
    gen_commuting_family,
    gen_npt_control,
    ghz_vector,
    haar_unitary,
    identity_corner_state,
    qubit_corner_state,
    shifts_complement_state,
    shifts_product_vectors,
)
from .serialize import (
    load_canonical_form,
    load_ensemble,
    load_state,
    save_canonical_form,
    save_ensemble,
    save_state,
)

__version__ = "0.1.0"

__all__ = [
    "PptSepError",
    "DimensionMismatch",
    "NotHermitianError",
    "NotPsdError",
    "SingularError",
    "NormalizationError",
    "PreconditionError",
    "NotPptError",
    "RankMismatch",
    "StructureViolation",
    "CommutatorViolation",
    "DegeneracyUnresolved",
    "NoWitness",
    "CertificationFailure",
    "TripartiteDims",
    "TripartiteState",
    "SubsystemMask",
    "ALL_MASKS",
    "MASK_NONE",
    "MASK_A",
    "MASK_B",
    "MASK_C",
    "compose_index",
    "split_index",
    "kron",
    "partial_transpose",
    "block",
    "sandwich_ab",
    "conjugate_local",
    "numeric_rank",
    "psd_sqrt",
    "psd_inv_sqrt",
    "dagger",
    "hermitize",
    "is_psd",
    "ppt_report",
    "PptReport",
    "MaskResult",
    "ProductWitness",
    "CanonicalForm",
    "ExtractionDiagnostics",
    "find_witness",
    "rotate_to_corner",
    "filter_corner",
    "extract_canonical",
    "verify_kernel_vectors",
    "EigenTable",
    "EnsembleTerm",
    "SeparableEnsemble",
    "simultaneous_diagonalize",
    "ensemble_from_form",
    "decompose",
    "verify_ensemble",
    "GenSpec",
    "haar_unitary",
    "gen_commuting_family",
    "assemble_canonical_state",
    "gen_canonical_state",
    "identity_corner_state",
    "qubit_corner_state",
    "shifts_product_vectors",
    "shifts_complement_state",
    "ghz_vector",
    "gen_npt_control",
    "save_state",
    "load_state",
    "save_ensemble",
    "load_ensemble",
    "save_canonical_form",
    "load_canonical_form",
    "__version__",
]
