"""Numerical search for good subspace packings.

The search minimizes the worst pairwise overlap between subspaces,
measured either by the squared Frobenius norm of the cross-Gramian
(chordal criterion, lower-bounded by ``simplex_bound_gram``) or by its
squared spectral norm (spectral criterion, lower-bounded by
``eitff_bound``).

Since the true max is nonsmooth exactly at the ties an optimal packing
must have, the objective is smoothed with a log-sum-exp soft max of
configurable sharpness; the spectral norm is additionally smoothed by
the differentiable surrogate (Tr[(G* G)^p])^(1/p) with a fixed small
power p. Descent is plain gradient descent in the ambient entries,
followed by QR re-orthonormalization of every basis (a retraction onto
the product of Stiefel manifolds). The step size is fixed, with halving
on objective increase (at most 20 halvings per iteration) and no
momentum. Runs are deterministic: restarts draw their starting frames
from seeds derived from the configured seed, and the best restart wins
with ties broken by the lowest restart index.

No claim of global optimality is ever made; results report their gap to
the relevant bound and carry a structure certificate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds
from .certify import Certificate, certify
from .construct import random_frame
from .linalg import FieldTag, Mat, NumericalError, _qr_columns, singular_values
from .metrics import FusionFrame, SubspaceBasis, cross_gramian

__all__ = [
    "Criterion",
    "PackConfig",
    "PackResult",
    "pack",
    "polish",
    "smoothed_objective",
    "smoothed_objective_and_gradient",
    "worst_overlap",
]

# Power p of the trace surrogate (Tr[(G* G)^p])^(1/p) for the squared
# spectral norm; larger p is tighter but stiffer.
SPECTRAL_SMOOTHING_POWER = 4

_MAX_HALVINGS = 20


class Criterion(enum.Enum):
    """Which pairwise overlap the search minimizes the maximum of."""

    CHORDAL_OVERLAP = "chordal"  # max ||G||_F^2 over pairs
    SPECTRAL_OVERLAP = "spectral"  # max ||G||_2^2 over pairs


@dataclass(frozen=True)
class PackConfig:
    criterion: Criterion = Criterion.CHORDAL_OVERLAP
    iterations: int = 2000
    restarts: int = 10
    step_size: float = 0.05
    smoothing: float = 200.0
    seed: int = 0
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not self.step_size > 0:
            raise ValueError(f"step size must be positive, got {self.step_size}")
        if not self.smoothing > 0:
            raise ValueError(f"smoothing must be positive, got {self.smoothing}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


@dataclass(frozen=True)
class PackResult:
    frame: FusionFrame
    achieved: float  # true (unsmoothed) criterion value of the frame
    bound: float  # the matching lower bound for (n, d, c)
    gap: float  # achieved - bound; >= -tolerance always
    certificate: Certificate
    iterations_used: int
    restart_index: int


def _pair_value(a: np.ndarray, b: np.ndarray, criterion: Criterion, power: int) -> float:
    g = a.conj().T @ b
    if criterion is Criterion.CHORDAL_OVERLAP:
        return float(np.vdot(g, g).real)
    m = g.conj().T @ g
    t = float(np.trace(np.linalg.matrix_power(m, power)).real)
    if t <= 0.0:
        return 0.0
    return t ** (1.0 / power)


def smoothed_objective(
    mats: Sequence[np.ndarray],
    criterion: Criterion = Criterion.CHORDAL_OVERLAP,
    smoothing: float = 200.0,
    power: int = SPECTRAL_SMOOTHING_POWER,
) -> float:
    """Soft max of the pairwise overlaps of arbitrary d x c matrices.

    Orthonormal columns are not required, which makes this directly
    usable in finite-difference checks. The log-sum-exp is shifted by
    the running max for overflow safety.
    """
    n = len(mats)
    # Overflow to inf on pathological inputs is deliberate; the descent
    # loop detects it and rejects the step (or raises NumericalError).
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.array(
            [
                _pair_value(mats[j], mats[jj], criterion, power)
                for j in range(n)
                for jj in range(j + 1, n)
            ]
        )
        m = vals.max()
        return float(m + math.log(np.exp(smoothing * (vals - m)).sum()) / smoothing)


def smoothed_objective_and_gradient(
    mats: Sequence[np.ndarray],
    criterion: Criterion = Criterion.CHORDAL_OVERLAP,
    smoothing: float = 200.0,
    power: int = SPECTRAL_SMOOTHING_POWER,
) -> tuple[float, list[np.ndarray]]:
    """Objective value together with its gradient in the matrix entries.

    For complex matrices the returned arrays are conjugate (Wirtinger)
    gradients, so a step along their negative decreases the objective to
    first order and the real and imaginary parts match entrywise finite
    differences.
    """
    n = len(mats)
    pairs = [(j, jj) for j in range(n) for jj in range(j + 1, n)]
    vals = np.empty(len(pairs))
    grams = []
    for idx, (j, jj) in enumerate(pairs):
        g = mats[j].conj().T @ mats[jj]
        grams.append(g)
        if criterion is Criterion.CHORDAL_OVERLAP:
            vals[idx] = np.vdot(g, g).real
        else:
            m = g.conj().T @ g
            t = float(np.trace(np.linalg.matrix_power(m, power)).real)
            vals[idx] = t ** (1.0 / power) if t > 0.0 else 0.0

    vmax = vals.max()
    weights = np.exp(smoothing * (vals - vmax))
    total = weights.sum()
    objective = float(vmax + math.log(total) / smoothing)
    weights /= total

    grads = [np.zeros_like(m) for m in mats]
    for idx, (j, jj) in enumerate(pairs):
        w = weights[idx]
        if w == 0.0:
            continue
        g = grams[idx]
        if criterion is Criterion.CHORDAL_OVERLAP:
            grads[j] += (2.0 * w) * (mats[jj] @ g.conj().T)
            grads[jj] += (2.0 * w) * (mats[j] @ g)
        else:
            m = g.conj().T @ g
            t = float(np.trace(np.linalg.matrix_power(m, power)).real)
            if t <= 0.0:
                continue
            m_pm1 = np.linalg.matrix_power(m, power - 1)
            coef = 2.0 * w * t ** (1.0 / power - 1.0)
            grads[j] += coef * (mats[jj] @ m_pm1 @ g.conj().T)
            grads[jj] += coef * (mats[j] @ g @ m_pm1)
    return objective, grads


def worst_overlap(f: FusionFrame, criterion: Criterion) -> float:
    """The true (unsmoothed) criterion value: the worst pairwise overlap."""
    if f.n < 2:
        raise ValueError("overlap needs at least two subspaces")
    worst = 0.0
    for j, jj in f.pairs():
        g = cross_gramian(f.bases[j], f.bases[jj])
        if criterion is Criterion.CHORDAL_OVERLAP:
            worst = max(worst, float(np.vdot(g.array, g.array).real))
        else:
            worst = max(worst, float(singular_values(g)[0]) ** 2)
    return worst


def _descend(
    mats: list[np.ndarray], config: PackConfig
) -> tuple[list[np.ndarray], int]:
    """Backtracking gradient descent with QR retraction after every step.

    Returns the final matrices and the number of iterations that
    accepted a step. Stops early once no step down to step_size/2^20
    decreases the smoothed objective.
    """
    fval = smoothed_objective(mats, config.criterion, config.smoothing)
    if not math.isfinite(fval):
        raise NumericalError(f"non-finite objective {fval!r}; reduce the step size")
    used = 0
    for _ in range(config.iterations):
        _, grads = smoothed_objective_and_gradient(mats, config.criterion, config.smoothing)
        if all(not g.any() for g in grads):
            break
        step = config.step_size
        accepted = False
        for _ in range(_MAX_HALVINGS + 1):
            trial = [_qr_columns(m - step * g) for m, g in zip(mats, grads)]
            ftrial = smoothed_objective(trial, config.criterion, config.smoothing)
            if math.isfinite(ftrial) and ftrial < fval:
                mats, fval = trial, ftrial
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        used += 1
    if not math.isfinite(fval):
        raise NumericalError(f"non-finite objective {fval!r}; reduce the step size")
    return mats, used


def _as_arrays(f: FusionFrame) -> list[np.ndarray]:
    # Real frames descend in float64; complex ones in complex128.
    if f.field is FieldTag.REAL:
        return [b.array.real.copy() for b in f.bases]
    return [b.array.copy() for b in f.bases]


def _as_frame(mats: Sequence[np.ndarray], field: FieldTag) -> FusionFrame:
    return FusionFrame(SubspaceBasis(Mat(m, field)) for m in mats)


def _criterion_bound(criterion: Criterion, n: int, d: int, c: int) -> float:
    if criterion is Criterion.CHORDAL_OVERLAP:
        return bounds.simplex_bound_gram(n, d, c)
    return bounds.eitff_bound(n, d, c)


def pack(field: FieldTag, d: int, c: int, n: int, config: PackConfig = PackConfig()) -> PackResult:
    """Search for n well-separated c-dimensional subspaces of F^d.

    Runs ``config.restarts`` independent descents from seeded random
    frames and returns the best by achieved criterion value (ties to the
    lowest restart index). Identical configs produce bit-identical
    results.
    """
    if d < 1 or not 1 <= c <= d:
        raise ValueError(f"need 1 <= c <= d, got c = {c}, d = {d}")
    if n < 2:
        raise ValueError(f"need n >= 2 subspaces, got n = {n}")
    restart_seeds = [int(s) for s in np.random.SeedSequence(config.seed).generate_state(config.restarts, dtype=np.uint64)]
    best: tuple[float, int, FusionFrame, int] | None = None
    for r, seed in enumerate(restart_seeds):
        start = random_frame(field, d, c, n, seed)
        mats, used = _descend(_as_arrays(start), config)
        frame = _as_frame(mats, field)
        achieved = worst_overlap(frame, config.criterion)
        if best is None or achieved < best[0]:
            best = (achieved, r, frame, used)
    achieved, restart_index, frame, used = best
    bound = _criterion_bound(config.criterion, n, d, c)
    return PackResult(
        frame=frame,
        achieved=achieved,
        bound=bound,
        gap=achieved - bound,
        certificate=certify(frame, config.tolerance),
        iterations_used=used,
        restart_index=restart_index,
    )


def polish(f: FusionFrame, config: PackConfig = PackConfig()) -> PackResult:
    """Run the descent from an existing frame instead of a random start.

    The result is never worse than the input: if the descent on the
    smoothed objective fails to improve the true criterion value, the
    input frame is returned unchanged.
    """
    if f.n < 2:
        raise ValueError(f"need n >= 2 subspaces, got n = {f.n}")
    initial_achieved = worst_overlap(f, config.criterion)
    mats, used = _descend(_as_arrays(f), config)
    frame = _as_frame(mats, f.field)
    achieved = worst_overlap(frame, config.criterion)
    if achieved > initial_achieved:
        frame, achieved, used = f, initial_achieved, 0
    bound = _criterion_bound(config.criterion, f.n, f.d, f.c)
    return PackResult(
        frame=frame,
        achieved=achieved,
        bound=bound,
        gap=achieved - bound,
        certificate=certify(frame, config.tolerance),
        iterations_used=used,
        restart_index=0,
    )
