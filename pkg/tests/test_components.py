"""Eigenvector component sequences and their derivatives."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import tripencil as tp
from support import build_pencil, dense_eigenpairs, seeded_pencil


def test_normalization(rng):
    pencil = build_pencil(rng, 4)
    assert tp.right_components(pencil, 0.3)[0] == 1.0
    assert tp.left_components(pencil, 0.3)[0] == 1.0


def test_order1_eigenvalue_residual(rng):
    pencil = build_pencil(rng, 1)
    w, _ = dense_eigenpairs(pencil)
    lam = float(w[0].real)
    p = tp.right_components(pencil, lam)
    matrix = pencil.dense_at(lam)
    assert np.linalg.norm(matrix @ p) <= 1e-9 * np.linalg.norm(matrix) * np.linalg.norm(p)


def test_collinear_with_dense_eigenvector(rng):
    pencil = build_pencil(rng, 4)
    w, v = dense_eigenpairs(pencil)
    lam = float(w[-1].real)
    p = tp.right_components(pencil, lam)
    u = v[:, -1]
    cos = abs(np.vdot(u, p)) / (np.linalg.norm(u) * np.linalg.norm(p))
    assert cos >= 1 - 1e-9


def test_left_row_annihilates_pencil(rng):
    pencil = build_pencil(rng, 3)
    w, _ = dense_eigenpairs(pencil)
    lam = float(w[0].real)
    pl = tp.left_components(pencil, lam)
    matrix = pencil.dense_at(lam)
    assert np.linalg.norm(pl @ matrix) <= 1e-9 * np.linalg.norm(matrix) * np.linalg.norm(pl)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6))
def test_left_is_conjugate_of_right_at_real_z(seed, n):
    pencil = seeded_pencil(seed, n)
    z = float(np.random.default_rng(seed + 5).uniform(-3, 3))
    right = tp.right_components(pencil, z)
    left = tp.left_components(pencil, z)
    assert np.abs(left - np.conj(right)).max() <= 1e-12 * (1 + np.abs(right).max())


def test_pole_collision_reports_index(rng):
    pencil = build_pencil(rng, 3)
    z = pencil.H.b[1] / pencil.J.d[1]
    with pytest.raises(tp.PoleCollisionError) as exc:
        tp.right_components(pencil, z)
    assert exc.value.index == 1


def test_components_match_product_formula(rng):
    pencil = build_pencil(rng, 4)
    z = 0.9 - 0.6j
    p = tp.right_components(pencil, z)
    for m in range(pencil.n + 1):
        denom = np.prod([pencil.H.b[j] - z * pencil.J.d[j] for j in range(m)]) if m else 1.0
        expected = tp.eval_p(pencil, m, z) / denom
        assert abs(p[m] - expected) <= 1e-10 * (1 + abs(expected))


def test_derivative_against_finite_differences(rng):
    pencil = build_pencil(rng, 4)
    z = 0.8
    h = 1e-6
    _, dp = tp.right_components_with_derivative(pencil, z)
    fd = (tp.right_components(pencil, z + h) - tp.right_components(pencil, z - h)) / (2 * h)
    assert np.abs(dp - fd).max() <= 1e-5 * (1 + np.abs(dp).max())
