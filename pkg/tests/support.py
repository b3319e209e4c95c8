"""Shared builders and dense oracles for the test suite."""

from __future__ import annotations

import numpy as np
import scipy.linalg

import tripencil as tp


def build_pencil(rng, n, pd_J=True, min_im=0.2, real_b_at=(), pure_imag=False):
    """Random pencil with nonzero off-diagonals and non-real pole ratios.

    real_b_at forces a real b_j at the named indices; pure_imag zeroes every
    Re(b_j).
    """
    d = rng.uniform(0.5, 2.0, n) * rng.choice([-1.0, 1.0], n)
    if pd_J:
        pads = np.concatenate([[0.0], np.abs(d)]) + np.concatenate([np.abs(d), [0.0]])
        c = pads + rng.uniform(0.3, 1.3, n + 1)
    else:
        c = rng.uniform(0.5, 2.0, n + 1) * rng.choice([-1.0, 1.0], n + 1)
    a = rng.uniform(-1.0, 1.0, n + 1)
    re = np.zeros(n) if pure_imag else rng.uniform(-1.0, 1.0, n)
    im = (min_im + rng.uniform(0.0, 0.8, n)) * d * rng.choice([-1.0, 1.0], n)
    b = re + 1j * im
    for j in real_b_at:
        b[j] = complex(rng.uniform(0.3, 1.0) * np.sign(d[j]), 0.0)
    return tp.Pencil(tp.SymmetricTridiagonal(tuple(c), tuple(d)),
                     tp.HermitianTridiagonal(tuple(a), tuple(b)))


def seeded_pencil(seed, n, **kwargs):
    return build_pencil(np.random.default_rng(seed), n, **kwargs)


def dense_eigenpairs(pencil):
    """Generalized eigenpairs of (H, J) by the dense LAPACK solver, sorted by Re."""
    w, v = scipy.linalg.eig(pencil.H.dense(), pencil.J.dense().astype(complex))
    order = np.argsort(w.real)
    return w[order], v[:, order]


def extreme_pair(pencil):
    """Largest and smallest real eigenvalue of a PD-J pencil."""
    w, _ = dense_eigenpairs(pencil)
    return float(w[-1].real), float(w[0].real)


def hand_pencil():
    """c=[1,1], d=[1], a=[0,0], b=[i]: P_2 = z^2 - (z^2+1) = -1."""
    return tp.Pencil(tp.SymmetricTridiagonal((1.0, 1.0), (1.0,)),
                     tp.HermitianTridiagonal((0.0, 0.0), (1j,)))


def rel_err(value, truth):
    return abs(value - truth) / (1.0 + abs(truth))
