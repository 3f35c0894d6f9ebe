import math

import numpy as np
import pytest

from grasspack.bounds import eitff_bound, simplex_bound_gram
from grasspack.construct import random_frame, regular_simplex, tensor_eitff
from grasspack.linalg import FieldTag, NumericalError
from grasspack.metrics import FusionFrame
from grasspack.optimize import (
    Criterion,
    PackConfig,
    _descend,
    pack,
    polish,
    smoothed_objective,
    smoothed_objective_and_gradient,
    worst_overlap,
)

R = FieldTag.REAL
C = FieldTag.COMPLEX

FAST = PackConfig(iterations=200, restarts=2)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"iterations": 0},
            {"restarts": 0},
            {"step_size": 0.0},
            {"step_size": -1.0},
            {"smoothing": 0.0},
            {"tolerance": 0.0},
        ],
    )
    def test_rejects_nonpositive(self, kwargs):
        with pytest.raises(ValueError):
            PackConfig(**kwargs)


class TestObjective:
    def test_soft_max_dominates_true_max(self, rng):
        # The soft max sits between the true max and the true max of the
        # surrogate pair values plus the log-sum-exp offset; the spectral
        # surrogate itself overshoots ||G||_2^2 by at most c^(1/p).
        f = random_frame(R, 4, 2, 3, 3)
        mats = [b.array.real.copy() for b in f.bases]
        offset = math.log(3) / 200.0
        for crit, slack in ((Criterion.CHORDAL_OVERLAP, 1.0), (Criterion.SPECTRAL_OVERLAP, 2 ** 0.25)):
            smoothed = smoothed_objective(mats, crit, 200.0)
            true_max = worst_overlap(f, crit)
            assert smoothed >= true_max - 1e-9
            assert smoothed <= slack * true_max + offset + 1e-6

    def test_spectral_surrogate_above_spectral_norm(self, rng):
        # (Tr[(G* G)^p])^(1/p) >= ||G||_2^2, and close for p = 4.
        f = random_frame(C, 5, 2, 2, 4)
        mats = [b.array.copy() for b in f.bases]
        sval = smoothed_objective(mats, Criterion.SPECTRAL_OVERLAP, 1e6)
        true_spec = worst_overlap(f, Criterion.SPECTRAL_OVERLAP)
        assert sval >= true_spec - 1e-12
        assert sval <= 2 ** (1 / 4) * true_spec + 1e-12  # c = 2 singular values

    def test_gradient_matches_finite_differences(self, rng):
        h = 1e-6
        for crit in Criterion:
            f = random_frame(R, 4, 2, 3, 17)
            mats = [b.array.real.copy() for b in f.bases]
            _, grads = smoothed_objective_and_gradient(mats, crit, 200.0)
            fd = [np.zeros_like(m) for m in mats]
            for k, m in enumerate(mats):
                for idx in np.ndindex(m.shape):
                    up = [x.copy() for x in mats]
                    up[k][idx] += h
                    down = [x.copy() for x in mats]
                    down[k][idx] -= h
                    fd[k][idx] = (
                        smoothed_objective(up, crit, 200.0)
                        - smoothed_objective(down, crit, 200.0)
                    ) / (2 * h)
            num = math.sqrt(sum(np.linalg.norm(a - b) ** 2 for a, b in zip(grads, fd)))
            den = math.sqrt(sum(np.linalg.norm(g) ** 2 for g in grads))
            assert num / den < 1e-5

    def test_complex_gradient_matches_wirtinger_convention(self):
        # Real and imaginary parts of the returned gradient match
        # entrywise finite differences over those parts.
        f = random_frame(C, 3, 1, 4, 7)
        mats = [b.array.copy() for b in f.bases]
        _, grads = smoothed_objective_and_gradient(mats, Criterion.CHORDAL_OVERLAP, 50.0)
        h = 1e-6
        k, idx = 1, (2, 0)

        def perturbed(delta):
            out = [x.copy() for x in mats]
            out[k][idx] += delta
            return smoothed_objective(out, Criterion.CHORDAL_OVERLAP, 50.0)

        fd_re = (perturbed(h) - perturbed(-h)) / (2 * h)
        fd_im = (perturbed(1j * h) - perturbed(-1j * h)) / (2 * h)
        assert grads[k][idx].real == pytest.approx(fd_re, rel=1e-4, abs=1e-10)
        assert grads[k][idx].imag == pytest.approx(fd_im, rel=1e-4, abs=1e-10)

    def test_descend_rejects_non_finite_start(self):
        huge = [np.full((2, 1), 1e200), np.full((2, 1), 1e200)]
        with pytest.raises(NumericalError):
            _descend(huge, PackConfig(iterations=5, restarts=1))


class TestPack:
    def test_orthogonal_solution_found(self):
        # Two planes in R^4 can be made exactly orthogonal.
        result = pack(R, 4, 2, 2, FAST)
        assert result.bound == 0.0
        assert result.achieved <= 1e-6

    def test_three_vectors_in_plane_reach_welch(self):
        result = pack(R, 2, 1, 3, PackConfig(iterations=500, restarts=3))
        assert result.achieved <= 0.25 + 1e-4

    def test_gap_never_negative_beyond_tolerance(self):
        for iters in (1, 5, 40):
            result = pack(R, 4, 2, 3, PackConfig(iterations=iters, restarts=1))
            assert result.gap >= -1e-10
            assert result.achieved >= simplex_bound_gram(3, 4, 2) - 1e-10

    def test_all_iterates_stay_orthonormal(self):
        for iters in (1, 7, 60):
            result = pack(C, 4, 2, 3, PackConfig(iterations=iters, restarts=1))
            for b in result.frame.bases:
                defect = np.linalg.norm(b.array.conj().T @ b.array - np.eye(2))
                assert defect < 1e-10

    def test_deterministic(self):
        a = pack(R, 3, 1, 4, FAST)
        b = pack(R, 3, 1, 4, FAST)
        assert a.achieved == b.achieved
        assert a.restart_index == b.restart_index
        assert a.iterations_used == b.iterations_used
        for x, y in zip(a.frame.bases, b.frame.bases):
            assert x.array.tobytes() == y.array.tobytes()

    def test_spectral_criterion_bound(self):
        result = pack(R, 4, 2, 3, PackConfig(criterion=Criterion.SPECTRAL_OVERLAP, iterations=300, restarts=2))
        assert result.bound == pytest.approx(eitff_bound(3, 4, 2))
        assert result.gap >= -1e-10

    def test_result_carries_certificate(self):
        result = pack(R, 2, 1, 3, PackConfig(iterations=500, restarts=3))
        assert result.certificate.alpha == pytest.approx(1.5)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            pack(R, 2, 3, 3, FAST)
        with pytest.raises(ValueError):
            pack(R, 2, 1, 1, FAST)


class TestPolish:
    def test_frame_at_bound_is_unchanged(self):
        f = tensor_eitff(regular_simplex(3), 2)
        before = worst_overlap(f, Criterion.CHORDAL_OVERLAP)
        result = polish(f, PackConfig())
        assert abs(result.achieved - before) <= 1e-9

    def test_generic_frame_strictly_improves(self):
        f = random_frame(R, 4, 2, 3, 5)
        before = worst_overlap(f, Criterion.CHORDAL_OVERLAP)
        result = polish(f, PackConfig(iterations=300))
        assert result.achieved < before

    def test_orthogonal_frame_stays_at_zero(self):
        f = FusionFrame.from_arrays([np.eye(4)[:, :2], np.eye(4)[:, 2:]])
        result = polish(f, PackConfig(iterations=50))
        assert result.achieved == pytest.approx(0.0, abs=1e-12)

    def test_never_worse_than_input(self):
        # Even with an absurd step size the result cannot regress.
        f = tensor_eitff(regular_simplex(3), 2)
        before = worst_overlap(f, Criterion.CHORDAL_OVERLAP)
        result = polish(f, PackConfig(step_size=50.0, iterations=40))
        assert result.achieved <= before + 1e-8
