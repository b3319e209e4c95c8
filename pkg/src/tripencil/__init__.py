"""Tridiagonal linear pencils z*J - H: recurrences, m-functions, reconstruction."""

from .errors import (
    DegenerateDifferenceError,
    DegreeDropError,
    GenerationFailedError,
    HermitianInconsistentError,
    MathPreconditionError,
    NearSingularError,
    NonRealDiagonalError,
    PencilError,
    PoleCollisionError,
    SchemaError,
    SingularDeltaError,
    SpectrumCollisionError,
    VanishingComponentError,
)
from .giep import (
    GiepInstance,
    ImaginaryClassification,
    ReconstructionResult,
    classify_imaginary,
    closed_form_b,
    delta,
    head_components,
    positivity_witness,
    reconstruct_a,
    reconstruct_b,
    solve,
    solve_pair_system,
    trace_identity_residuals,
)
from .mfunctions import (
    MFunctionTable,
    MRouteEntries,
    ResolventFactors,
    ldu_factors,
    m_function,
    m_table,
    reconstruct_from_m,
    resolvent_matrix,
    trailing_inverse,
)
from .oracle import (
    GeneratorConfig,
    VerificationReport,
    dense_resolvent,
    generate_instance,
    instance_from_truth,
    pencil_eigenvalues,
    verify,
)
from .pencil import HermitianTridiagonal, Pencil, RealPolynomial, SymmetricTridiagonal
from .recurrence import (
    KappaSequence,
    convergent,
    eval_p,
    eval_q,
    in_spectrum,
    kappa_sequence,
    left_components,
    liouville_ostrogradsky_residual,
    poly_p,
    poly_q,
    right_components,
    right_components_with_derivative,
)

__version__ = "0.1.0"
