"""Independent ground-truth machinery: eigenvalues, dense inversion, generators.

The eigensolver goes through the coefficient polynomial of the full minor
P_{n+1} (companion matrix plus one Newton polish), so it shares nothing with
the point-evaluation recurrence except the coefficients themselves.  The
instance generator manufactures reconstruction problems whose answer is known
and rejects draws that sit too close to any hypothesis boundary, so solver
failures on generated data are bugs by definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DegreeDropError, GenerationFailedError, NearSingularError
from .giep import GiepInstance, ReconstructionResult, delta, delta_scale
from .mfunctions import MRouteEntries
from .pencil import HermitianTridiagonal, Pencil, SymmetricTridiagonal
from .recurrence import eval_p, kappa_sequence, poly_p, right_components

ENTRY_TOL = 1e-7
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for the seeded instance generator.

    min_im_ratio bounds |Im(b_j/d_j)| from below for j >= k, keeping the
    reconstruction determinants away from zero.  ensure_pd_J makes J strictly
    diagonally dominant with positive diagonal, hence positive definite, so
    the pencil spectrum is real.  eigenvalue_pick is "extreme" (smallest and
    largest, maximizing |lam - mu|) or "random" (any distinct pair).
    """

    n: int
    k: int
    seed: int
    min_im_ratio: float = 0.1
    ensure_pd_J: bool = True
    eigenvalue_pick: str = "extreme"

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"split index k={self.k} must satisfy 1 <= k <= n-1")
        if not self.min_im_ratio > 0:
            raise ValueError("min_im_ratio must be positive")
        if self.eigenvalue_pick not in ("extreme", "random"):
            raise ValueError(f"unknown eigenvalue_pick strategy {self.eigenvalue_pick!r}")


@dataclass(frozen=True)
class VerificationReport:
    """Per-entry errors of a reconstruction against its ground truth."""

    entry_errors: Mapping[str, float]
    residual_lambda: float
    residual_mu: float
    delta_magnitudes: tuple[float, ...]
    pipeline: str
    passed: bool


def _relative(err_val: complex, truth: complex) -> float:
    return abs(err_val - truth) / (1.0 + abs(truth))


def pencil_eigenvalues(pencil: Pencil) -> np.ndarray:
    """All n+1 roots of P_{n+1}, sorted by real part.

    Computed as eigenvalues of the companion matrix of the monic coefficient
    polynomial, refined by one Newton step on P_{n+1}.
    """
    kappas = kappa_sequence(pencil)
    if any(kappas.degraded):
        raise DegreeDropError(kappas.degraded.index(True))
    poly = poly_p(pencil, pencil.n + 1)
    coeffs = np.asarray(poly.coeffs, dtype=float)
    monic = coeffs / coeffs[-1]
    deg = len(monic) - 1
    if deg == 0:
        return np.array([], dtype=complex)
    comp = np.zeros((deg, deg))
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -monic[:-1]
    roots = np.linalg.eigvals(comp)
    dpoly = poly.derivative()
    polished = []
    for r in roots:
        dp = dpoly(r)
        if abs(dp) > 1e-300:
            r = r - poly(r) / dp
        polished.append(r)
    out = np.asarray(polished, dtype=complex)
    return out[np.lexsort((out.imag, out.real))]


def dense_resolvent(pencil: Pencil, omega: complex) -> np.ndarray:
    """Inverse of the dense assembly of (w*J - H) by partial-pivoting elimination."""
    A = pencil.dense_at(omega)
    n1 = A.shape[0]
    det = complex(np.linalg.det(A))
    hadamard = float(np.prod(np.linalg.norm(A, axis=1)))
    if abs(det) < 1e-12 * (hadamard + 1.0):
        raise NearSingularError(f"determinant {abs(det):.3e} below tolerance at omega={omega}")
    try:
        X = np.linalg.solve(A, np.eye(n1, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise NearSingularError(str(exc)) from exc
    residual = float(np.abs(A @ X - np.eye(n1)).max())
    if residual > 1e-10 * (1.0 + float(np.abs(A).max()) * float(np.abs(X).max())):
        raise NearSingularError(f"dense inverse residual {residual:.3e} too large")
    return X


def instance_from_truth(truth: Pencil, k: int, lam: float, mu: float) -> GiepInstance:
    """Build the reconstruction problem a ground-truth pencil would pose.

    Tails are the exact right components of the truth at the two eigenvalues.
    No hypothesis checks are performed here, so deliberately degenerate
    instances (for negative controls) can be constructed.
    """
    p = right_components(truth, lam)
    s = right_components(truth, mu)
    return GiepInstance(
        J=truth.J,
        head_a=truth.H.a[:k + 1],
        head_b=truth.H.b[:k],
        lam=float(lam),
        mu=float(mu),
        tail_p=tuple(p[k:]),
        tail_s=tuple(s[k:]),
        k=k,
        poles=tuple(truth.H.b[j] / truth.J.d[j] for j in range(k, truth.n)),
    )


def _draw_truth(config: GeneratorConfig, rng: np.random.Generator) -> Pencil:
    n = config.n
    d = rng.uniform(0.5, 2.0, n) * rng.choice([-1.0, 1.0], n)
    if config.ensure_pd_J:
        pads = np.concatenate([[0.0], np.abs(d)]) + np.concatenate([np.abs(d), [0.0]])
        c = pads + rng.uniform(0.3, 1.3, n + 1)
    else:
        c = rng.uniform(0.5, 2.0, n + 1) * rng.choice([-1.0, 1.0], n + 1)
    a = rng.uniform(-1.0, 1.0, n + 1)
    b_re = rng.uniform(-1.0, 1.0, n)
    # |Im(b_j/d_j)| >= min_im_ratio for j >= k; a mild floor below k keeps the
    # head poles off the real axis, where the eigenvalues live
    mags = 0.05 + rng.uniform(0.0, 0.95, n)
    mags[config.k:] = config.min_im_ratio * 1.001 + rng.uniform(0.0, 0.9, n - config.k)
    b_im = rng.choice([-1.0, 1.0], n) * mags * d
    b = b_re + 1j * b_im
    return Pencil(SymmetricTridiagonal(tuple(c), tuple(d)),
                  HermitianTridiagonal(tuple(a), tuple(b)))


def _spectrum_margin(pencil: Pencil, m: int, z: float) -> float:
    scale = poly_p(pencil, m).magnitude_at(z)
    return abs(eval_p(pencil, m, z)) / (1.0 + scale)


def generate_instance(config: GeneratorConfig) -> tuple[Pencil, GiepInstance]:
    """Manufacture a (truth, instance) pair satisfying every solver hypothesis.

    Deterministic for a fixed seed; each rejected draw advances a sub-seed so
    reruns reproduce the same sequence of attempts.
    """
    for attempt in range(100):
        rng = np.random.default_rng([config.seed, attempt])
        truth = _draw_truth(config, rng)
        n, k = config.n, config.k
        try:
            eigs = pencil_eigenvalues(truth)
        except DegreeDropError:
            continue
        if config.ensure_pd_J and float(np.abs(eigs.imag).max()) > 1e-8:
            continue
        order = np.argsort(eigs.real)
        if config.eigenvalue_pick == "extreme":
            lam = float(eigs[order[-1]].real)
            mu = float(eigs[order[0]].real)
        else:
            i1, i2 = rng.choice(len(eigs), size=2, replace=False)
            lam, mu = float(eigs[i1].real), float(eigs[i2].real)
        if abs(lam - mu) < 1e-6:
            continue

        # stay clearly outside every sub-pencil spectrum the solver touches
        if any(_spectrum_margin(truth, m, z) < 1e-6
               for m in range(k, n + 1) for z in (lam, mu)):
            continue

        try:
            inst = instance_from_truth(truth, k, lam, mu)
        except Exception:
            continue

        ok = True
        for j in range(k, n):
            t = j - k
            pr_j, pr_j1 = inst.tail_p[t], inst.tail_p[t + 1]
            sr_j, sr_j1 = inst.tail_s[t], inst.tail_s[t + 1]
            det = delta(pr_j.conjugate(), pr_j1.conjugate(), pr_j, pr_j1,
                        sr_j.conjugate(), sr_j1.conjugate(), sr_j, sr_j1)
            scale = delta_scale(pr_j.conjugate(), pr_j1.conjugate(), pr_j, pr_j1,
                                sr_j.conjugate(), sr_j1.conjugate(), sr_j, sr_j1)
            if abs(det) < 1e-8 * (scale + 1.0):
                ok = False
                break
        if ok:
            return truth, inst
    raise GenerationFailedError(f"no admissible instance after 100 attempts (seed={config.seed})")


def verify(truth: Pencil, result: ReconstructionResult | MRouteEntries) -> VerificationReport:
    """Compare a reconstruction against its ground truth, entry by entry."""
    n = truth.n
    errors: dict[str, float] = {}
    if isinstance(result, ReconstructionResult):
        if result.H.n != n:
            raise ValueError("result order does not match truth")
        k = result.k
        for j in range(k, n):
            errors[f"b_{j}"] = _relative(result.H.b[j], truth.H.b[j])
        for j in range(k + 1, n + 1):
            errors[f"a_{j}"] = _relative(result.H.a[j], truth.H.a[j])
        res_l, res_m = result.residual_lambda, result.residual_mu
        deltas = tuple(abs(x) for x in result.deltas)
        pipeline = "eigenpair"
    else:
        k = result.k
        if k + len(result.a) != n:
            raise ValueError("m-route result shape does not match truth")
        for j in range(k + 1, n):
            errors[f"b_{j}"] = _relative(result.b_at(j), truth.H.b[j])
        for j in range(k + 1, n + 1):
            errors[f"a_{j}"] = _relative(result.a_at(j), truth.H.a[j])
        res_l = res_m = 0.0
        deltas = ()
        pipeline = "m-function"
    passed = all(e <= ENTRY_TOL for e in errors.values()) \
        and res_l <= RESIDUAL_TOL and res_m <= RESIDUAL_TOL
    return VerificationReport(
        entry_errors=errors,
        residual_lambda=res_l,
        residual_mu=res_m,
        delta_magnitudes=deltas,
        pipeline=pipeline,
        passed=bool(passed),
    )
