"""Exception hierarchy.

``MathPreconditionError`` subclasses signal that a mathematical hypothesis
required by an operation does not hold for the given data; the CLI maps
them to exit code 2.  ``SchemaError`` covers malformed serialized input
(exit code 1).
"""

from __future__ import annotations


class PencilError(Exception):
    """Base class for all library errors."""


class SchemaError(PencilError):
    """Malformed or internally inconsistent serialized data."""


class MathPreconditionError(PencilError):
    """A hypothesis required by the requested operation is violated."""


class _IndexedError(MathPreconditionError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(message)


class PoleCollisionError(_IndexedError):
    """Evaluation point hits a component pole b_j/d_j (or its conjugate)."""

    def __init__(self, index: int):
        super().__init__(index, f"evaluation point collides with pole at off-diagonal index {index}")


class SpectrumCollisionError(MathPreconditionError):
    """Evaluation point lies in the spectrum of a leading sub-pencil."""

    def __init__(self, order: int, point: complex):
        self.order = order
        self.point = point
        super().__init__(f"point {point} lies in the spectrum of the order-{order} leading sub-pencil")


class SingularDeltaError(_IndexedError):
    """The 2x2 reconstruction system is singular: Delta_j vanishes.

    Signals a real pole ratio b_j/d_j or corrupted spectral data.
    """

    def __init__(self, index: int):
        super().__init__(index, f"singular reconstruction system: Delta at index {index} vanishes "
                                f"(pole ratio at {index} is real or data violates the spectrum hypotheses)")


class HermitianInconsistentError(_IndexedError):
    """The conjugate unknown of the 2x2 solve is not the conjugate of b_j."""

    def __init__(self, index: int):
        super().__init__(index, f"inconsistent spectral data: recovered pair at index {index} "
                                f"is not conjugate-symmetric")


class VanishingComponentError(_IndexedError):
    """An eigenvector component appearing in a denominator is (near) zero."""

    def __init__(self, index: int):
        super().__init__(index, f"eigenvector component at index {index} vanishes")


class NonRealDiagonalError(_IndexedError):
    """A recovered diagonal entry has a non-negligible imaginary part."""

    def __init__(self, index: int, imag: float):
        self.imag = imag
        super().__init__(index, f"recovered diagonal entry a_{index} has imaginary part {imag:.3e}; "
                                f"spectral data is inconsistent")


class DegenerateDifferenceError(_IndexedError):
    """Two m-function values that must differ coincide."""

    def __init__(self, index: int):
        super().__init__(index, f"degenerate m-function difference at index {index}")


class DegreeDropError(_IndexedError):
    """A leading coefficient kappa_m vanishes, so the minor degree drops."""

    def __init__(self, index: int):
        super().__init__(index, f"degree drop: leading coefficient kappa at index {index} vanishes")


class NearSingularError(MathPreconditionError):
    """Dense linear solve rejected: matrix is numerically singular."""


class GenerationFailedError(PencilError):
    """Instance generator exhausted its rejection-sampling budget."""
