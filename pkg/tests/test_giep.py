"""Reconstruction from two eigenpairs: systems, heads, diagnostics."""

import numpy as np
import pytest

import tripencil as tp
from support import build_pencil, dense_eigenpairs, extreme_pair, rel_err


def make_case(rng, n, k, **kwargs):
    truth = build_pencil(rng, n, **kwargs)
    lam, mu = extreme_pair(truth)
    return truth, tp.instance_from_truth(truth, k, lam, mu)


class TestDelta:
    def test_real_pole_ratio_gives_zero(self, rng):
        truth, inst = make_case(rng, 3, 1, real_b_at=(1,))
        t = 0  # j = k = 1
        pr_j, pr_j1 = inst.tail_p[t], inst.tail_p[t + 1]
        sr_j, sr_j1 = inst.tail_s[t], inst.tail_s[t + 1]
        det = tp.delta(pr_j.conjugate(), pr_j1.conjugate(), pr_j, pr_j1,
                       sr_j.conjugate(), sr_j1.conjugate(), sr_j, sr_j1)
        scale = abs(pr_j * pr_j1 * sr_j * sr_j1)
        assert abs(det) <= 1e-12 * (scale + 1)

    def test_matches_closed_product_form(self, rng):
        truth, inst = make_case(rng, 2, 1)
        j, lam, mu = 1, inst.lam, inst.mu
        pr_j, pr_j1 = inst.tail_p[0], inst.tail_p[1]
        sr_j, sr_j1 = inst.tail_s[0], inst.tail_s[1]
        det = tp.delta(pr_j.conjugate(), pr_j1.conjugate(), pr_j, pr_j1,
                       sr_j.conjugate(), sr_j1.conjugate(), sr_j, sr_j1)
        assert abs(det) > 0
        # product form: 2i (lam-mu) Im(alpha_j) d_j^2 * P_j P_{j+1} at both
        # eigenvalues over the squared pole distances
        d = truth.J.d
        b = truth.H.b
        alpha = b[j] / d[j]
        denom = 1.0
        for t in range(j + 1):
            denom *= abs(b[t] - lam * d[t]) ** 2 * abs(b[t] - mu * d[t]) ** 2
        closed = (2j * (lam - mu) * alpha.imag * d[j] ** 2
                  * tp.eval_p(truth, j, lam) * tp.eval_p(truth, j, mu)
                  * tp.eval_p(truth, j + 1, lam) * tp.eval_p(truth, j + 1, mu) / denom)
        assert abs(closed - det) <= 1e-9 * abs(det)

    def test_swapping_eigenvalue_roles_negates(self, rng):
        _, inst = make_case(rng, 3, 1)
        args_pm = (inst.tail_p[0].conjugate(), inst.tail_p[1].conjugate(),
                   inst.tail_p[0], inst.tail_p[1],
                   inst.tail_s[0].conjugate(), inst.tail_s[1].conjugate(),
                   inst.tail_s[0], inst.tail_s[1])
        args_mp = (inst.tail_s[0].conjugate(), inst.tail_s[1].conjugate(),
                   inst.tail_s[0], inst.tail_s[1],
                   inst.tail_p[0].conjugate(), inst.tail_p[1].conjugate(),
                   inst.tail_p[0], inst.tail_p[1])
        d1, d2 = tp.delta(*args_pm), tp.delta(*args_mp)
        assert abs(d1 + d2) <= 1e-12 * abs(d1)


class TestReconstructB:
    def test_round_trip_order4(self, rng):
        truth, inst = make_case(rng, 3, 1)
        bs, _ = tp.reconstruct_b(inst, inst.tail_p, inst.tail_s)
        for j, b in zip(range(1, 3), bs):
            assert abs(b - truth.H.b[j]) <= 1e-9 * abs(truth.H.b[j])

    def test_real_pole_ratio_raises(self, rng):
        _, inst = make_case(rng, 4, 1, real_b_at=(2,))
        with pytest.raises(tp.SingularDeltaError) as exc:
            tp.reconstruct_b(inst, inst.tail_p, inst.tail_s)
        assert exc.value.index == 2

    def test_swap_symmetry(self, rng):
        truth, inst = make_case(rng, 3, 1)
        swapped = tp.GiepInstance(
            J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
            lam=inst.mu, mu=inst.lam, tail_p=inst.tail_s, tail_s=inst.tail_p,
            k=inst.k)
        b1, _ = tp.reconstruct_b(inst, inst.tail_p, inst.tail_s)
        b2, _ = tp.reconstruct_b(swapped, swapped.tail_p, swapped.tail_s)
        assert max(abs(x - y) for x, y in zip(b1, b2)) <= 1e-9 * max(abs(x) for x in b1)

    def test_closed_form_agreement(self, rng):
        truth, inst = make_case(rng, 4, 2)
        bs, _ = tp.reconstruct_b(inst, inst.tail_p, inst.tail_s)
        for j, b in zip(range(2, 4), bs):
            t = j - 2
            closed, closed_conj = tp.closed_form_b(
                inst.J.d[j], inst.lam, inst.mu,
                (inst.tail_p[t], inst.tail_p[t + 1]),
                (inst.tail_s[t], inst.tail_s[t + 1]))
            assert abs(closed - b) <= 1e-9 * (1 + abs(b))
            assert abs(closed_conj - b.conjugate()) <= 1e-9 * (1 + abs(b))


class TestReconstructA:
    def test_round_trip_order4(self, rng):
        truth, inst = make_case(rng, 3, 1)
        a = tp.reconstruct_a(inst, truth.H.b[1:], inst.tail_p)
        for i, val in zip(range(2, 4), a):
            assert abs(val - truth.H.a[i]) <= 1e-9 * (1 + abs(truth.H.a[i]))

    def test_terminal_branch_only(self, rng):
        truth, inst = make_case(rng, 2, 1)
        a = tp.reconstruct_a(inst, truth.H.b[1:], inst.tail_p)
        assert len(a) == 1
        assert abs(a[0] - truth.H.a[2]) <= 1e-9 * (1 + abs(truth.H.a[2]))

    def test_perturbed_component_is_detected(self, rng):
        truth, inst = make_case(rng, 4, 1)
        tail = list(inst.tail_p)
        tail[2] *= 1.1
        try:
            a = tp.reconstruct_a(inst, truth.H.b[1:], tail)
        except tp.NonRealDiagonalError:
            return
        worst = max(abs(v - truth.H.a[i]) for i, v in zip(range(2, 5), a))
        assert worst > 1e-3


class TestHeadComponents:
    def test_k1_matches_dense_eigenvector(self, rng):
        truth, inst = make_case(rng, 3, 1)
        head = tp.head_components(inst, truth.H.b[1], inst.tail_p[1])
        w, v = dense_eigenpairs(truth)
        u = v[:, -1]  # lam is the largest eigenvalue
        full = np.concatenate([head, inst.tail_p])
        cos = abs(np.vdot(u, full)) / (np.linalg.norm(u) * np.linalg.norm(full))
        assert cos >= 1 - 1e-9

    def test_round_trip_order5_k2(self, rng):
        truth, inst = make_case(rng, 4, 2)
        expected = tp.right_components(truth, inst.lam)[:2]
        head = tp.head_components(inst, truth.H.b[2], inst.tail_p[1])
        assert np.abs(np.asarray(head) - expected).max() <= 1e-9 * (1 + np.abs(expected).max())

    def test_homogeneous_in_tail(self, rng):
        truth, inst = make_case(rng, 4, 2)
        gamma = 0.7 - 1.9j
        head = np.asarray(tp.head_components(inst, truth.H.b[2], inst.tail_p[1]))
        scaled = np.asarray(tp.head_components(inst, truth.H.b[2], gamma * inst.tail_p[1]))
        assert np.abs(scaled - gamma * head).max() <= 1e-12 * np.abs(scaled).max()

    def test_spectrum_collision(self, rng):
        truth, inst = make_case(rng, 3, 1)
        head_pencil = inst.head_pencil()
        root = np.roots(tp.poly_p(head_pencil, 2).coeffs[::-1])[0]
        with pytest.raises(tp.SpectrumCollisionError):
            tp.head_components(inst, truth.H.b[1], inst.tail_p[1], z=float(root.real))


class TestClassifyImaginary:
    def test_generic_split_matches_truth(self, rng):
        truth, inst = make_case(rng, 3, 1)
        for j in (1, 2):
            t = j - 1
            rec = tp.classify_imaginary(
                j, (inst.tail_p[t], inst.tail_p[t + 1]),
                (inst.tail_s[t], inst.tail_s[t + 1]),
                truth.J.d[j], inst.lam, inst.mu)
            assert abs(rec.x - truth.H.b[j].real) <= 1e-9 * (1 + abs(truth.H.b[j]))
            assert abs(rec.y - truth.H.b[j].imag) <= 1e-9 * (1 + abs(truth.H.b[j]))

    def test_pure_imaginary_truth_flags_ratio(self, rng):
        truth, inst = make_case(rng, 3, 1, pure_imag=True)
        for j in (1, 2):
            t = j - 1
            rec = tp.classify_imaginary(
                j, (inst.tail_p[t], inst.tail_p[t + 1]),
                (inst.tail_s[t], inst.tail_s[t + 1]),
                truth.J.d[j], inst.lam, inst.mu)
            assert abs(rec.x) <= 1e-8 * abs(rec.y)
            assert rec.wall_ratio_ok

    def test_real_pole_ratio_refuses(self, rng):
        truth, inst = make_case(rng, 3, 1, real_b_at=(1,))
        with pytest.raises(tp.SingularDeltaError):
            tp.classify_imaginary(
                1, (inst.tail_p[0], inst.tail_p[1]),
                (inst.tail_s[0], inst.tail_s[1]),
                truth.J.d[1], inst.lam, inst.mu)


class TestTraceIdentities:
    def test_random_order4(self, rng):
        truth = build_pencil(rng, 4)
        lam, mu = extreme_pair(truth)
        r1, r2 = tp.trace_identity_residuals(truth, 2, lam, mu)
        assert r1 < 1e-9 and r2 < 1e-9

    def test_trailing_1x1_edge(self, rng):
        truth = build_pencil(rng, 3)
        lam, mu = extreme_pair(truth)
        r1, r2 = tp.trace_identity_residuals(truth, 2, lam, mu)
        assert r1 < 1e-12 and r2 < 1e-12

    def test_equal_eigenvalues_rejected(self, rng):
        truth = build_pencil(rng, 3)
        with pytest.raises(ValueError):
            tp.trace_identity_residuals(truth, 1, 1.5, 1.5)


class TestPositivityWitness:
    def test_near_identity_J(self, rng):
        n = 3
        d = tuple(0.05 * x for x in rng.uniform(0.5, 1.0, n) * rng.choice([-1, 1], n))
        c = tuple(1.0 for _ in range(n + 1))
        a = tuple(rng.uniform(-1, 1, n + 1))
        b = tuple(rng.uniform(-1, 1, n) + 1j * (0.3 + rng.uniform(0, 0.5, n)))
        truth = tp.Pencil(tp.SymmetricTridiagonal(c, d), tp.HermitianTridiagonal(a, b))
        _, mu = extreme_pair(truth)
        k = 1
        witness = tp.positivity_witness(truth, k, mu)
        s = tp.right_components(truth, mu)[:k + 1]
        dense = np.real(np.conj(s) @ truth.J.block(0, k) @ s)
        assert witness > 0
        assert abs(witness - dense) <= 1e-8 * abs(dense)

    def test_random_pd_J(self, rng):
        truth = build_pencil(rng, 4)
        assert np.all(np.linalg.eigvalsh(truth.J.dense()) > 0)
        _, mu = extreme_pair(truth)
        for k in (1, 2, 3):
            witness = tp.positivity_witness(truth, k, mu)
            s = tp.right_components(truth, mu)[:k + 1]
            dense = np.real(np.conj(s) @ truth.J.block(0, k) @ s)
            assert witness > 0
            assert abs(witness - dense) <= 1e-8 * abs(dense)

    def test_rejects_non_eigenvalue(self, rng):
        truth = build_pencil(rng, 3)
        lam, _ = extreme_pair(truth)
        with pytest.raises(ValueError):
            tp.positivity_witness(truth, 1, lam + 10.0)


class TestSolve:
    def test_round_trip_n4_k2(self, rng):
        truth, inst = make_case(rng, 4, 2)
        result = tp.solve(inst)
        for j in range(2, 4):
            assert rel_err(result.H.b[j], truth.H.b[j]) <= 1e-8
        for j in range(3, 5):
            assert rel_err(result.H.a[j], truth.H.a[j]) <= 1e-8
        assert result.residual_lambda <= 1e-7
        assert result.residual_mu <= 1e-7
        assert result.H.a[:3] == truth.H.a[:3]
        assert result.H.b[:2] == truth.H.b[:2]

    def test_smallest_legal_instance(self, rng):
        truth, inst = make_case(rng, 2, 1)
        result = tp.solve(inst)
        assert rel_err(result.H.b[1], truth.H.b[1]) <= 1e-8
        assert rel_err(result.H.a[2], truth.H.a[2]) <= 1e-8

    def test_lambda_in_head_spectrum_raises(self, rng):
        truth, inst = make_case(rng, 3, 1)
        head = inst.head_pencil()
        bad = float(np.roots(tp.poly_p(head, 2).coeffs[::-1])[0].real)
        corrupted = tp.GiepInstance(
            J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
            lam=bad, mu=inst.mu,
            tail_p=tuple(tp.right_components(truth, bad)[1:]),
            tail_s=inst.tail_s, k=1)
        with pytest.raises(tp.SpectrumCollisionError):
            tp.solve(corrupted)

    def test_scaling_invariance(self, rng):
        truth, inst = make_case(rng, 4, 2)
        gamma, delta_scale = 1.3 - 0.4j, -0.2 + 2.1j
        scaled = tp.GiepInstance(
            J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
            lam=inst.lam, mu=inst.mu,
            tail_p=tuple(gamma * x for x in inst.tail_p),
            tail_s=tuple(delta_scale * x for x in inst.tail_s),
            k=inst.k)
        r1 = tp.solve(inst)
        r2 = tp.solve(scaled)
        assert np.abs(np.asarray(r2.H.b) - np.asarray(r1.H.b)).max() <= 1e-9 * (1 + np.abs(np.asarray(r1.H.b)).max())
        assert np.abs(np.asarray(r2.H.a) - np.asarray(r1.H.a)).max() <= 1e-9 * (1 + np.abs(np.asarray(r1.H.a)).max())
        # heads follow the tail scalings
        assert np.abs(np.asarray(r2.head_p) - gamma * np.asarray(r1.head_p)).max() \
            <= 1e-9 * (1 + np.abs(np.asarray(r1.head_p)).max())

    def test_hermiticity_by_construction(self, rng):
        truth, inst = make_case(rng, 4, 1)
        result = tp.solve(inst)
        dense = result.H.dense()
        assert np.abs(dense - dense.conj().T).max() == 0.0


class TestInstanceValidation:
    def test_equal_eigenvalues_rejected(self, rng):
        truth, inst = make_case(rng, 3, 1)
        with pytest.raises(ValueError):
            tp.GiepInstance(J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
                            lam=1.0, mu=1.0, tail_p=inst.tail_p,
                            tail_s=inst.tail_s, k=1)

    def test_split_index_bounds(self, rng):
        truth, inst = make_case(rng, 3, 1)
        with pytest.raises(ValueError):
            tp.GiepInstance(J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
                            lam=inst.lam, mu=inst.mu, tail_p=inst.tail_p,
                            tail_s=inst.tail_s, k=3)

    def test_tail_length_checked(self, rng):
        truth, inst = make_case(rng, 3, 1)
        with pytest.raises(ValueError):
            tp.GiepInstance(J=inst.J, head_a=inst.head_a, head_b=inst.head_b,
                            lam=inst.lam, mu=inst.mu, tail_p=inst.tail_p[:-1],
                            tail_s=inst.tail_s, k=1)
