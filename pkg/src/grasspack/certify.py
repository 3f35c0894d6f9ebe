"""Machine-checkable structure certificates for frames of subspaces.

Each predicate returns a boolean flag together with the residuals that
justify it, so a near-miss can be diagnosed; a frame is never "almost"
certified. Tightness, equi-chordality and equi-isoclinicity combine
into ECTFF / EITFF verdicts, and :func:`certify` additionally reports the
gap between the frame's worst pairwise overlap and each applicable
packing bound. Constants are estimated by averaging over all pairs
rather than privileging the first pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .linalg import DEFAULT_TOL
from .metrics import FusionFrame, cross_gramian, fusion_frame_operator

__all__ = [
    "Certificate",
    "EquiangularResult",
    "EquichordalResult",
    "EquiisoclinicResult",
    "TightnessResult",
    "certify",
    "is_equiangular",
    "is_equichordal",
    "is_equiisoclinic",
    "is_etf",
    "is_regular_simplex",
    "is_tight_fusion_frame",
    "is_unit_norm_tight_frame",
]


@dataclass(frozen=True)
class TightnessResult:
    flag: bool
    residual: float  # ||sum P_j - alpha I||_F / (alpha sqrt(d)), alpha = nc/d
    alpha: float


@dataclass(frozen=True)
class EquichordalResult:
    flag: bool
    beta: float  # mean pairwise squared Frobenius cross-Gramian norm
    deviation: float  # worst pairwise departure from beta


@dataclass(frozen=True)
class EquiisoclinicResult:
    flag: bool
    sigma_sq: float  # mean of (1/c) ||cross-Gramian||_F^2 over pairs
    deviation: float  # worst ||G* G - sigma_sq I||_F over pairs
    projection_residual: float  # ||P2 P1 P2 - sigma_sq P2||_F on the first pair


@dataclass(frozen=True)
class EquiangularResult:
    flag: bool
    beta: float  # mean squared modulus of the off-diagonal Gram entries
    deviation: float


@dataclass(frozen=True)
class Certificate:
    """Certified structure of a fusion frame, with residuals and bound gaps."""

    is_tight: bool
    tight_residual: float
    alpha: float
    is_equichordal: bool
    beta: float
    beta_deviation: float
    is_equiisoclinic: bool
    sigma_sq: float
    sigma_deviation: float
    is_ectff: bool
    is_eitff: bool
    simplex_gap: float  # worst Frobenius overlap minus its lower bound
    eitff_gap: float  # worst spectral overlap minus its lower bound
    orthoplex_gap: float | None  # present only past the Gerzon limit
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "is_tight": self.is_tight,
            "tight_residual": self.tight_residual,
            "alpha": self.alpha,
            "is_equichordal": self.is_equichordal,
            "beta": self.beta,
            "beta_deviation": self.beta_deviation,
            "is_equiisoclinic": self.is_equiisoclinic,
            "sigma_sq": self.sigma_sq,
            "sigma_deviation": self.sigma_deviation,
            "is_ectff": self.is_ectff,
            "is_eitff": self.is_eitff,
            "simplex_gap": self.simplex_gap,
            "eitff_gap": self.eitff_gap,
            "orthoplex_gap": self.orthoplex_gap,
            "tolerance": self.tolerance,
        }


def _pair_gramians(f: FusionFrame):
    for j, jj in f.pairs():
        yield j, jj, cross_gramian(f.bases[j], f.bases[jj]).array


def is_tight_fusion_frame(f: FusionFrame, tol: float = DEFAULT_TOL) -> TightnessResult:
    """Check that the projections sum to (nc/d) I.

    The constant is forced by the trace, so only the relative residual
    ||sum P_j - (nc/d) I||_F / ((nc/d) sqrt(d)) is measured.
    """
    alpha = f.n * f.c / f.d
    s = fusion_frame_operator(f).array
    residual = float(np.linalg.norm(s - alpha * np.eye(f.d))) / (alpha * math.sqrt(f.d))
    return TightnessResult(flag=residual <= tol, residual=residual, alpha=alpha)


def is_equichordal(f: FusionFrame, tol: float = DEFAULT_TOL) -> EquichordalResult:
    """Check that all pairwise squared Frobenius cross-Gramian norms agree."""
    if f.n < 2:
        raise ValueError("equi-chordality needs at least two subspaces")
    overlaps = [float(np.vdot(g, g).real) for _, _, g in _pair_gramians(f)]
    beta = float(np.mean(overlaps))
    deviation = max(abs(o - beta) for o in overlaps)
    return EquichordalResult(flag=deviation <= tol * max(1.0, beta), beta=beta, deviation=deviation)


def is_equiisoclinic(f: FusionFrame, tol: float = DEFAULT_TOL) -> EquiisoclinicResult:
    """Check that every cross-Gramian is sigma times a unitary.

    For each pair the product G* G must equal sigma_sq I, with sigma_sq
    estimated as the mean of (1/c)||G||_F^2 over pairs. The equivalent
    projection-operator identity P2 P1 P2 = sigma_sq P2 is verified on
    the first pair as a consistency check and folded into the flag.
    """
    if f.n < 2:
        raise ValueError("equi-isoclinicity needs at least two subspaces")
    c = f.c
    grams = [(j, jj, g) for j, jj, g in _pair_gramians(f)]
    sigma_sq = float(np.mean([np.vdot(g, g).real / c for _, _, g in grams]))
    eye = np.eye(c)
    deviation = max(
        float(np.linalg.norm(g.conj().T @ g - sigma_sq * eye)) for _, _, g in grams
    )
    a0 = f.bases[0].array
    a1 = f.bases[1].array
    p0 = a0 @ a0.conj().T
    p1 = a1 @ a1.conj().T
    projection_residual = float(np.linalg.norm(p1 @ p0 @ p1 - sigma_sq * p1))
    scale = tol * max(1.0, sigma_sq * math.sqrt(c))
    flag = deviation <= scale and projection_residual <= scale
    return EquiisoclinicResult(
        flag=flag,
        sigma_sq=sigma_sq,
        deviation=deviation,
        projection_residual=projection_residual,
    )


def certify(f: FusionFrame, tol: float = DEFAULT_TOL) -> Certificate:
    """Full structure certificate for a frame of n >= 2 subspaces.

    ECTFF requires tightness, equi-chordality, and beta at its forced
    value c(nc-d)/(d(n-1)); EITFF additionally requires equi-isoclinicity
    with sigma_sq at (nc-d)/(d(n-1)), and implies ECTFF by construction.
    Bound gaps compare the frame's worst pairwise overlaps against the
    corresponding lower bounds; the orthoplex gap is reported only when
    n exceeds the Gerzon limit.
    """
    if f.n < 2:
        raise ValueError("certification needs at least two subspaces")
    n, d, c = f.n, f.d, f.c

    tight = is_tight_fusion_frame(f, tol)
    chordal = is_equichordal(f, tol)
    iso = is_equiisoclinic(f, tol)

    beta_expected = bounds.simplex_bound_gram(n, d, c)
    sigma_expected = bounds.eitff_bound(n, d, c)
    is_ectff = (
        tight.flag
        and chordal.flag
        and abs(chordal.beta - beta_expected) <= tol * max(1.0, abs(beta_expected))
    )
    is_eitff = (
        is_ectff
        and iso.flag
        and abs(iso.sigma_sq - sigma_expected) <= tol * max(1.0, abs(sigma_expected))
    )

    max_frob = 0.0
    max_spec = 0.0
    for _, _, g in _pair_gramians(f):
        max_frob = max(max_frob, float(np.vdot(g, g).real))
        s = np.linalg.svd(g, compute_uv=False)
        max_spec = max(max_spec, float(s[0]) ** 2)

    ortho = bounds.orthoplex_bound(n, d, c, f.field)
    orthoplex_gap = None if ortho is None else max_frob - ortho.gram

    return Certificate(
        is_tight=tight.flag,
        tight_residual=tight.residual,
        alpha=tight.alpha,
        is_equichordal=chordal.flag,
        beta=chordal.beta,
        beta_deviation=chordal.deviation,
        is_equiisoclinic=iso.flag,
        sigma_sq=iso.sigma_sq,
        sigma_deviation=iso.deviation,
        is_ectff=is_ectff,
        is_eitff=is_eitff,
        simplex_gap=max_frob - beta_expected,
        eitff_gap=max_spec - sigma_expected,
        orthoplex_gap=orthoplex_gap,
        tolerance=tol,
    )


def _require_vectors(f: FusionFrame, what: str) -> None:
    if f.c != 1:
        raise ValueError(f"{what} is defined for unit vectors (c = 1), got c = {f.c}")


def is_unit_norm_tight_frame(f: FusionFrame, tol: float = DEFAULT_TOL) -> TightnessResult:
    """Check that n unit vectors form a tight frame, with constant n/d."""
    _require_vectors(f, "unit-norm tightness")
    return is_tight_fusion_frame(f, tol)


def is_equiangular(f: FusionFrame, tol: float = DEFAULT_TOL) -> EquiangularResult:
    """Check that all pairwise |inner products| of unit vectors agree."""
    _require_vectors(f, "equiangularity")
    if f.n < 2:
        raise ValueError("equiangularity needs at least two vectors")
    sq = [abs(complex(g[0, 0])) ** 2 for _, _, g in _pair_gramians(f)]
    beta = float(np.mean(sq))
    deviation = max(abs(v - beta) for v in sq)
    return EquiangularResult(flag=deviation <= tol * max(1.0, beta), beta=beta, deviation=deviation)


def is_etf(f: FusionFrame, tol: float = DEFAULT_TOL) -> bool:
    """True when the unit vectors are both equiangular and a tight frame.

    A positive verdict also requires the squared coherence to sit at the
    Welch bound, which it must for a genuine ETF.
    """
    _require_vectors(f, "the ETF property")
    if f.n < 2:
        return False
    ea = is_equiangular(f, tol)
    tf = is_unit_norm_tight_frame(f, tol)
    if not (ea.flag and tf.flag):
        return False
    # Tightness forces n >= d, so the Welch bound is well-defined here.
    coh_sq = max(abs(complex(g[0, 0])) ** 2 for _, _, g in _pair_gramians(f))
    w = bounds.welch_bound(f.n, f.d)
    return abs(coh_sq - w) <= tol * max(1.0, w)


def is_regular_simplex(f: FusionFrame, tol: float = DEFAULT_TOL) -> bool:
    """True when every pairwise inner product equals -1/(n-1) within tol."""
    _require_vectors(f, "the regular-simplex property")
    if f.n < 2:
        raise ValueError("a simplex needs at least two vectors")
    target = -1.0 / (f.n - 1)
    for _, _, g in _pair_gramians(f):
        val = complex(g[0, 0])
        if abs(val.real - target) > tol or abs(val.imag) > tol:
            return False
    return True
