"""Value types for tridiagonal matrix pencils z*J - H.

J is real symmetric tridiagonal (diagonal c, off-diagonal d), H is Hermitian
tridiagonal (real diagonal a, super-diagonal b, sub-diagonal conj(b)).  Both
are stored as immutable coefficient tuples; all operations on them are pure
functions, so every type here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


def _finite_floats(xs: Sequence[float], name: str) -> tuple[float, ...]:
    out = tuple(float(x) for x in xs)
    if any(not math.isfinite(x) for x in out):
        raise ValueError(f"{name} entries must be finite")
    return out


def _finite_complexes(xs: Sequence[complex], name: str) -> tuple[complex, ...]:
    out = tuple(complex(x) for x in xs)
    if any(not (math.isfinite(z.real) and math.isfinite(z.imag)) for z in out):
        raise ValueError(f"{name} entries must be finite")
    return out


@dataclass(frozen=True)
class SymmetricTridiagonal:
    """Real symmetric tridiagonal matrix of order n+1: diagonal c, off-diagonal d."""

    c: tuple[float, ...]
    d: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", _finite_floats(self.c, "c"))
        object.__setattr__(self, "d", _finite_floats(self.d, "d"))
        if len(self.d) != len(self.c) - 1:
            raise ValueError("off-diagonal length must be one less than diagonal length")
        if any(x == 0.0 for x in self.d):
            raise ValueError("off-diagonal entries d_j must be nonzero")

    @property
    def n(self) -> int:
        return len(self.c) - 1

    def dense(self) -> np.ndarray:
        m = np.diag(np.asarray(self.c, dtype=float))
        if self.d:
            m += np.diag(self.d, 1) + np.diag(self.d, -1)
        return m

    def block(self, lo: int, hi: int) -> np.ndarray:
        """Dense principal block over rows/columns lo..hi inclusive."""
        return self.dense()[lo:hi + 1, lo:hi + 1]


@dataclass(frozen=True)
class HermitianTridiagonal:
    """Hermitian tridiagonal matrix: real diagonal a, super-diagonal b."""

    a: tuple[float, ...]
    b: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", _finite_floats(self.a, "a"))
        object.__setattr__(self, "b", _finite_complexes(self.b, "b"))
        if len(self.b) != len(self.a) - 1:
            raise ValueError("super-diagonal length must be one less than diagonal length")

    @property
    def n(self) -> int:
        return len(self.a) - 1

    def dense(self) -> np.ndarray:
        m = np.diag(np.asarray(self.a, dtype=complex))
        if self.b:
            bb = np.asarray(self.b, dtype=complex)
            m += np.diag(bb, 1) + np.diag(np.conj(bb), -1)
        return m


@dataclass(frozen=True)
class Pencil:
    """The linear pencil z*J - H of two tridiagonal matrices of equal order."""

    J: SymmetricTridiagonal
    H: HermitianTridiagonal

    def __post_init__(self):
        if self.J.n != self.H.n:
            raise ValueError("J and H must have the same order")

    @property
    def n(self) -> int:
        return self.J.n

    def dense_at(self, z: complex) -> np.ndarray:
        return complex(z) * self.J.dense().astype(complex) - self.H.dense()

    def head(self, k: int) -> "Pencil":
        """Leading sub-pencil over indices 0..k."""
        if not 0 <= k <= self.n:
            raise ValueError("head index out of range")
        return Pencil(
            SymmetricTridiagonal(self.J.c[:k + 1], self.J.d[:k]),
            HermitianTridiagonal(self.H.a[:k + 1], self.H.b[:k]),
        )


@dataclass(frozen=True)
class RealPolynomial:
    """Real-coefficient polynomial, coefficients in ascending degree order.

    The zero polynomial is stored as the single coefficient (0.0,); otherwise
    trailing zero coefficients are trimmed so the last entry is the leading
    coefficient.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        cs = _finite_floats(self.coeffs, "coeffs")
        while len(cs) > 1 and cs[-1] == 0.0:
            cs = cs[:-1]
        if not cs:
            cs = (0.0,)
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0.0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for ck in reversed(self.coeffs):
            acc = acc * z + ck
        return acc

    def derivative(self) -> "RealPolynomial":
        if len(self.coeffs) == 1:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(k * ck for k, ck in enumerate(self.coeffs) if k > 0))

    def magnitude_at(self, z: complex) -> float:
        """Sum of |coeff| * |z|^degree, the natural evaluation scale at z."""
        r = abs(z)
        acc = 0.0
        for ck in reversed(self.coeffs):
            acc = acc * r + abs(ck)
        return acc
