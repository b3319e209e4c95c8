"""Inverse eigenvalue reconstruction from two eigenpairs with prescribed tails.

Given the full J, the leading block of H up to split index k, two real
eigenvalues lam != mu and the trailing eigenvector components at both, the
solver recovers the remaining entries b_k..b_{n-1} and a_{k+1}..a_n of H and
the leading eigenvector components.

For every index j the pair (b_j, conj(b_j)) satisfies the same 2x2 linear
system, one equation per eigenvalue:

    p_j^L p_{j+1}^R b_j - p_{j+1}^L p_j^R conj(b_j)
        = lam d_j (p_j^L p_{j+1}^R - p_{j+1}^L p_j^R)

(and the mu-counterpart in the s-components).  The primary path solves this
system directly for each j; the closed-form expression for b_j through the
system determinant Delta_j is kept as an independent cross-check.  Delta_j
vanishes exactly when the pole ratio b_j/d_j is real, so a singular system is
reported rather than solved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    HermitianInconsistentError,
    NonRealDiagonalError,
    SingularDeltaError,
    SpectrumCollisionError,
    VanishingComponentError,
)
from .pencil import HermitianTridiagonal, Pencil, SymmetricTridiagonal, _finite_complexes, _finite_floats
from .recurrence import (
    eval_p,
    in_spectrum,
    left_components,
    right_components,
    right_components_with_derivative,
)

# Detection floor for a singular 2x2 system.  Tail data computed from
# eigenvalues carrying ~1e-14 relative error smears an exact zero of Delta_j
# up to ~1e-11 of the monomial scale, so the guard sits at 1e-10.
DELTA_RTOL = 1e-10
HERMITIAN_RTOL = 1e-8
COMPONENT_RTOL = 1e-12


@dataclass(frozen=True)
class GiepInstance:
    """Problem data: J, the head of H, two eigenvalues and eigenvector tails.

    tail_p holds p_k^R(lam)..p_n^R(lam), tail_s the analogous values at mu.
    The optional poles field is diagnostic only; reconstruction never reads it.
    """

    J: SymmetricTridiagonal
    head_a: tuple[float, ...]
    head_b: tuple[complex, ...]
    lam: float
    mu: float
    tail_p: tuple[complex, ...]
    tail_s: tuple[complex, ...]
    k: int
    poles: tuple[complex, ...] | None = None

    def __post_init__(self):
        n = self.J.n
        if not 1 <= self.k <= n - 1:
            raise ValueError(f"split index k={self.k} must satisfy 1 <= k <= n-1 with n={n}")
        object.__setattr__(self, "head_a", _finite_floats(self.head_a, "head_a"))
        object.__setattr__(self, "head_b", _finite_complexes(self.head_b, "head_b"))
        object.__setattr__(self, "tail_p", _finite_complexes(self.tail_p, "tail_p"))
        object.__setattr__(self, "tail_s", _finite_complexes(self.tail_s, "tail_s"))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "mu", float(self.mu))
        if self.poles is not None:
            object.__setattr__(self, "poles", _finite_complexes(self.poles, "poles"))
            if len(self.poles) != n - self.k:
                raise ValueError("poles must cover indices k..n-1")
        if self.lam == self.mu:
            raise ValueError("the two eigenvalues must be distinct")
        if len(self.head_a) != self.k + 1:
            raise ValueError("head_a must hold a_0..a_k")
        if len(self.head_b) != self.k:
            raise ValueError("head_b must hold b_0..b_{k-1}")
        if len(self.tail_p) != n - self.k + 1 or len(self.tail_s) != n - self.k + 1:
            raise ValueError("eigenvector tails must hold indices k..n")

    @property
    def n(self) -> int:
        return self.J.n

    def head_pencil(self) -> Pencil:
        return Pencil(
            SymmetricTridiagonal(self.J.c[:self.k + 1], self.J.d[:self.k]),
            HermitianTridiagonal(self.head_a, self.head_b),
        )


@dataclass(frozen=True)
class ImaginaryClassification:
    """Real/imaginary split b_j = x + i*y and the eigenvalue-ratio flag.

    wall_ratio_ok is True when lam/mu matches the determinant ratio that
    forces x = 0, the regime in which b_j is a purely imaginary multiple
    of d_j.
    """

    index: int
    x: float
    y: float
    wall_ratio_ok: bool


@dataclass(frozen=True)
class ReconstructionResult:
    """Recovered H, leading eigenvector components and diagnostics.

    Residuals are relative: ||(z*J - H) v|| / (||z*J - H||_F ||v||) over the
    assembled full eigenvectors.
    """

    H: HermitianTridiagonal
    head_p: tuple[complex, ...]
    head_s: tuple[complex, ...]
    deltas: tuple[complex, ...]
    residual_lambda: float
    residual_mu: float
    imaginary_flags: tuple[ImaginaryClassification, ...]

    @property
    def k(self) -> int:
        return len(self.head_p)


def delta(pl_j: complex, pl_j1: complex, pr_j: complex, pr_j1: complex,
          sl_j: complex, sl_j1: complex, sr_j: complex, sr_j1: complex) -> complex:
    """Determinant of the 2x2 system for (b_j, conj(b_j)).

    Proportional to (lam - mu) * Im(b_j/d_j); zero exactly when the pole
    ratio at j is real.
    """
    return pl_j1 * pr_j * (sl_j * sr_j1 - sl_j1 * sr_j) \
        - sl_j1 * sr_j * (pl_j * pr_j1 - pl_j1 * pr_j)


def delta_scale(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1) -> float:
    """Magnitude of the largest degree-4 monomial entering the determinant."""
    return max(
        abs(pl_j1 * pr_j * sl_j * sr_j1),
        abs(pl_j1 * pr_j * sl_j1 * sr_j),
        abs(sl_j1 * sr_j * pl_j * pr_j1),
        abs(sl_j1 * sr_j * pl_j1 * pr_j),
    )


def closed_form_b(d_j: float, lam: float, mu: float,
                  p_pair: tuple[complex, complex], s_pair: tuple[complex, complex]) -> tuple[complex, complex]:
    """Closed-form (b_j, conj(b_j)) through the system determinant.

    Independent of the linear-solve path; used as a cross-check.
    """
    pr_j, pr_j1 = complex(p_pair[0]), complex(p_pair[1])
    sr_j, sr_j1 = complex(s_pair[0]), complex(s_pair[1])
    pl_j, pl_j1 = pr_j.conjugate(), pr_j1.conjugate()
    sl_j, sl_j1 = sr_j.conjugate(), sr_j1.conjugate()
    wp = pl_j * pr_j1 - pl_j1 * pr_j
    ws = sl_j * sr_j1 - sl_j1 * sr_j
    det = delta(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1)
    b = (lam + mu) * d_j + (d_j / det) * (mu * sl_j1 * sr_j * wp - lam * pl_j1 * pr_j * ws)
    b_conj = (lam + mu) * d_j + (d_j / det) * (mu * sl_j * sr_j1 * wp - lam * pl_j * pr_j1 * ws)
    return b, b_conj


def solve_pair_system(j: int, d_j: float, lam: float, mu: float,
                      p_pair: tuple[complex, complex],
                      s_pair: tuple[complex, complex]) -> tuple[complex, complex, complex]:
    """Solve one 2x2 system for the unknown pair (b_j, conj(b_j)).

    p_pair = (p_j, p_{j+1}) at lam, s_pair = (s_j, s_{j+1}) at mu; left
    values are conjugates of the given right values.  Returns (u, v, Delta_j)
    where u is the recovered b_j and v the independently solved conjugate
    unknown.
    """
    pr_j, pr_j1 = complex(p_pair[0]), complex(p_pair[1])
    sr_j, sr_j1 = complex(s_pair[0]), complex(s_pair[1])
    pl_j, pl_j1 = pr_j.conjugate(), pr_j1.conjugate()
    sl_j, sl_j1 = sr_j.conjugate(), sr_j1.conjugate()
    det = delta(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1)
    scale = delta_scale(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1)
    if abs(det) <= DELTA_RTOL * (scale + 1.0):
        raise SingularDeltaError(j)
    a11 = pl_j * pr_j1
    a12 = -pl_j1 * pr_j
    r1 = lam * d_j * (pl_j * pr_j1 - pl_j1 * pr_j)
    a21 = sl_j * sr_j1
    a22 = -sl_j1 * sr_j
    r2 = mu * d_j * (sl_j * sr_j1 - sl_j1 * sr_j)
    u = (r1 * a22 - r2 * a12) / det
    v = (a11 * r2 - a21 * r1) / det
    return u, v, det


def reconstruct_b(instance: GiepInstance,
                  components_lambda: Sequence[complex],
                  components_mu: Sequence[complex]) -> tuple[tuple[complex, ...], tuple[complex, ...]]:
    """Solve the per-index 2x2 systems for b_k..b_{n-1}.

    components_lambda / components_mu hold the right components p_k..p_n at
    lam and s_k..s_n at mu (any common rescaling of either sequence leaves
    the solution unchanged).  Returns the recovered entries together with
    the determinants Delta_k..Delta_{n-1}.
    """
    k, n = instance.k, instance.n
    d = instance.J.d
    lam, mu = instance.lam, instance.mu
    bs: list[complex] = []
    deltas: list[complex] = []
    for j in range(k, n):
        t = j - k
        u, v, det = solve_pair_system(
            j, d[j], lam, mu,
            (components_lambda[t], components_lambda[t + 1]),
            (components_mu[t], components_mu[t + 1]))
        if abs(v - u.conjugate()) > HERMITIAN_RTOL * (1.0 + abs(u)):
            raise HermitianInconsistentError(j)
        bs.append(u)
        deltas.append(det)
    return tuple(bs), tuple(deltas)


def reconstruct_a(instance: GiepInstance, b_full: Sequence[complex],
                  components_lambda: Sequence[complex]) -> tuple[float, ...]:
    """Recover the real diagonal entries a_{k+1}..a_n from the lam-eigenpair.

    b_full holds b_k..b_{n-1}; components_lambda holds p_k..p_n at lam.  Each
    a_i comes out of the three-term relation at row i solved for the diagonal
    entry; a non-negligible imaginary part means the data is inconsistent.
    """
    k, n = instance.k, instance.n
    c, d = instance.J.c, instance.J.d
    lam = instance.lam
    p = [complex(x) for x in components_lambda]
    comp_scale = max(abs(x) for x in p)

    def b_at(j: int) -> complex:
        return complex(b_full[j - k])

    out: list[float] = []
    for i in range(k + 1, n + 1):
        t = i - k
        if abs(p[t]) <= COMPONENT_RTOL * (1.0 + comp_scale):
            raise VanishingComponentError(i)
        num = (lam * d[i - 1] - b_at(i - 1).conjugate()) * p[t - 1]
        if i <= n - 1:
            num += (lam * d[i] - b_at(i)) * p[t + 1]
        val = lam * c[i] + num / p[t]
        if abs(val.imag) > 1e-8 * (1.0 + abs(val)):
            raise NonRealDiagonalError(i, val.imag)
        out.append(val.real)
    return tuple(out)


def head_components(instance: GiepInstance, b_k: complex, p_k1: complex,
                    z: float | None = None) -> tuple[complex, ...]:
    """Leading components p_0..p_{k-1} at z (default: instance.lam).

    p_m = (b_k - z d_k) * prod_{j=m..k-1} (b_j - z d_j) * P_m(z) / P_{k+1}(z) * p_{k+1},
    where the P_m are minors of the head pencil, hence computable from the
    given data alone.  Linear in p_k1, so tails may carry any normalization.
    """
    if z is None:
        z = instance.lam
    k = instance.k
    head = instance.head_pencil()
    if in_spectrum(head, k + 1, z):
        raise SpectrumCollisionError(k, complex(z))
    d = instance.J.d
    b = instance.head_b
    p_k1 = complex(p_k1)
    pk1_val = eval_p(head, k + 1, z)
    out = []
    for m in range(k):
        prod = b_k - z * d[k]
        for j in range(m, k):
            prod *= b[j] - z * d[j]
        out.append(prod * eval_p(head, m, z) / pk1_val * p_k1)
    return tuple(out)


def classify_imaginary(j: int, p_pair: tuple[complex, complex], s_pair: tuple[complex, complex],
                       d_j: float, lam: float, mu: float) -> ImaginaryClassification:
    """Split b_j into x_j + i*y_j and test the eigenvalue-ratio condition.

    p_pair = (p_j, p_{j+1}) at lam and s_pair = (s_j, s_{j+1}) at mu; left
    values are their conjugates.  The flag is the cross-multiplied relative
    comparison of lam/mu against the determinant ratio that forces x_j = 0.
    """
    pr_j, pr_j1 = complex(p_pair[0]), complex(p_pair[1])
    sr_j, sr_j1 = complex(s_pair[0]), complex(s_pair[1])
    pl_j, pl_j1 = pr_j.conjugate(), pr_j1.conjugate()
    sl_j, sl_j1 = sr_j.conjugate(), sr_j1.conjugate()
    det = delta(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1)
    scale = delta_scale(pl_j, pl_j1, pr_j, pr_j1, sl_j, sl_j1, sr_j, sr_j1)
    if abs(det) <= DELTA_RTOL * (scale + 1.0):
        raise SingularDeltaError(j)
    wp = pl_j * pr_j1 - pl_j1 * pr_j
    ws = sl_j * sr_j1 - sl_j1 * sr_j
    vp = pl_j * pr_j1 + pl_j1 * pr_j
    vs = sl_j * sr_j1 + sl_j1 * sr_j
    x = d_j * (mu * vp * ws - lam * vs * wp) / (2.0 * det)
    y = (lam - mu) * d_j * wp * ws / (2j * det)
    lhs = lam * vs * wp
    rhs = mu * vp * ws
    ratio_ok = abs(lhs - rhs) <= 1e-8 * (abs(lhs) + abs(rhs))
    return ImaginaryClassification(j, x.real, y.real, bool(ratio_ok))


def trace_identity_residuals(pencil: Pencil, k: int, lam: float, mu: float) -> tuple[float, float]:
    """Relative residuals of the two block trace identities at (lam, mu).

    First identity: (lam - mu) p^L_{[k+1,n]} J_{[k+1,n]} s^R_{[k+1,n]} equals
    (b_k - lam d_k) p_k^L s_{k+1}^R - (conj(b_k) - mu d_k) p_{k+1}^L s_k^R.
    Second: (lam - mu) s^L_{[0,k]} J_{[0,k]} p^R_{[0,k]} equals
    (b_k - lam d_k) s_k^L p_{k+1}^R - (conj(b_k) - mu d_k) s_{k+1}^L p_k^R;
    the sign of this right-hand side was fixed against direct dense
    evaluation.  Exact data gives residuals at roundoff level.
    """
    if lam == mu:
        raise ValueError("the identities degenerate at lam == mu")
    n = pencil.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"split index {k} out of range 1..{n - 1}")
    for m in (k, k + 1):
        if in_spectrum(pencil, m, lam):
            raise SpectrumCollisionError(m - 1, complex(lam))
        if in_spectrum(pencil, m, mu):
            raise SpectrumCollisionError(m - 1, complex(mu))
    d_k = pencil.J.d[k]
    b_k = pencil.H.b[k]
    p = right_components(pencil, lam)
    pl = left_components(pencil, lam)
    s = right_components(pencil, mu)
    sl = left_components(pencil, mu)
    Jd = pencil.J.dense().astype(complex)

    lhs1 = (lam - mu) * (pl[k + 1:] @ Jd[k + 1:, k + 1:] @ s[k + 1:])
    rhs1 = (b_k - lam * d_k) * pl[k] * s[k + 1] - (b_k.conjugate() - mu * d_k) * pl[k + 1] * s[k]
    res1 = abs(lhs1 - rhs1) / (1.0 + abs(rhs1))

    lhs2 = (lam - mu) * (sl[:k + 1] @ Jd[:k + 1, :k + 1] @ p[:k + 1])
    rhs2 = (b_k - lam * d_k) * sl[k] * p[k + 1] - (b_k.conjugate() - mu * d_k) * sl[k + 1] * p[k]
    res2 = abs(lhs2 - rhs2) / (1.0 + abs(rhs2))
    return res1, res2


def positivity_witness(pencil: Pencil, k: int, mu: float) -> float:
    """Value of the limiting quadratic form (s^R)* J_{[0,k]} s^R at eigenvalue mu.

    Evaluated from the coupling entries and analytic component derivatives:

        (b_k - mu d_k) s_k^L (s_{k+1}^R)' - (conj(b_k) - mu d_k) s_{k+1}^L (s_k^R)'
            - d_k s_k^L s_{k+1}^R

    (sign fixed against the dense quadratic form).  Positive whenever the
    leading block of J is positive definite.
    """
    n = pencil.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"split index {k} out of range 1..{n - 1}")
    if not in_spectrum(pencil, n + 1, mu):
        raise ValueError("mu must be an eigenvalue of the full pencil")
    d_k = pencil.J.d[k]
    b_k = pencil.H.b[k]
    s, ds = right_components_with_derivative(pencil, mu)
    sl = np.conj(s)
    val = (b_k - mu * d_k) * sl[k] * ds[k + 1] \
        - (b_k.conjugate() - mu * d_k) * sl[k + 1] * ds[k] \
        - d_k * sl[k] * s[k + 1]
    if abs(val.imag) > 1e-10 * (1.0 + abs(val)):
        raise NonRealDiagonalError(k, val.imag)
    return float(val.real)


def _relative_residual(matrix: np.ndarray, vec: np.ndarray) -> float:
    denom = float(np.linalg.norm(matrix) * np.linalg.norm(vec))
    return float(np.linalg.norm(matrix @ vec) / (denom + 1e-300))


def solve(instance: GiepInstance) -> ReconstructionResult:
    """Full reconstruction: entries of H, leading components, diagnostics."""
    k, n = instance.k, instance.n
    lam, mu = instance.lam, instance.mu
    head = instance.head_pencil()
    for z in (lam, mu):
        for m in (k, k + 1):
            if in_spectrum(head, m, z):
                raise SpectrumCollisionError(m - 1, complex(z))

    b_rec, deltas = reconstruct_b(instance, instance.tail_p, instance.tail_s)
    a_rec = reconstruct_a(instance, b_rec, instance.tail_p)

    H = HermitianTridiagonal(instance.head_a + a_rec, instance.head_b + b_rec)
    full = Pencil(instance.J, H)

    flags = tuple(
        classify_imaginary(j,
                           (instance.tail_p[j - k], instance.tail_p[j - k + 1]),
                           (instance.tail_s[j - k], instance.tail_s[j - k + 1]),
                           instance.J.d[j], lam, mu)
        for j in range(k, n)
    )

    head_p = head_components(instance, b_rec[0], instance.tail_p[1], z=lam)
    head_s = head_components(instance, b_rec[0], instance.tail_s[1], z=mu)

    p_full = np.concatenate([np.asarray(head_p, dtype=complex),
                             np.asarray(instance.tail_p, dtype=complex)])
    s_full = np.concatenate([np.asarray(head_s, dtype=complex),
                             np.asarray(instance.tail_s, dtype=complex)])
    res_l = _relative_residual(full.dense_at(lam), p_full)
    res_m = _relative_residual(full.dense_at(mu), s_full)

    return ReconstructionResult(
        H=H,
        head_p=head_p,
        head_s=head_s,
        deltas=deltas,
        residual_lambda=res_l,
        residual_mu=res_m,
        imaginary_flags=flags,
    )
