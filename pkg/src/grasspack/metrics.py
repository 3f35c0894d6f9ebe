"""Distances, angles, and operator-valued descriptors of subspaces.

A c-dimensional subspace of F^d is represented by a d x c matrix with
orthonormal columns (:class:`SubspaceBasis`); a packing candidate is a
:class:`FusionFrame`, a list of such bases sharing (field, d, c). The
functions here compute orthogonal projections, cross-Gramians, the
fusion Gram matrix and fusion frame operator, principal angles, and the
chordal / spectral / geodesic distances between subspaces. All pairwise
quantities are invariant under the choice of orthonormal basis within
each subspace.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .linalg import DEFAULT_TOL, FieldTag, Mat, singular_values

__all__ = [
    "FusionFrame",
    "PrincipalAngles",
    "SubspaceBasis",
    "chordal_distance_sq",
    "coherence",
    "cross_gramian",
    "fusion_frame_operator",
    "fusion_gram",
    "geodesic_distance",
    "min_chordal_packing",
    "principal_angles",
    "projection",
    "spectral_distance_sq",
    "traceless_embed",
]


class SubspaceBasis:
    """A d x c matrix with orthonormal columns spanning one subspace.

    Construction verifies the orthonormality defect ||mat* mat - I||_F
    against ``tol``; 1 <= c <= d is required.
    """

    __slots__ = ("mat",)

    mat: Mat

    def __init__(self, mat: Mat, tol: float = DEFAULT_TOL):
        if mat.cols > mat.rows:
            raise ValueError(f"basis must be tall: got {mat.rows}x{mat.cols}")
        gram = mat.array.conj().T @ mat.array
        defect = float(np.linalg.norm(gram - np.eye(mat.cols)))
        if defect > tol:
            raise ValueError(
                f"columns not orthonormal: defect {defect:.3e} exceeds tolerance {tol:.1e}"
            )
        self.mat = mat

    @classmethod
    def from_array(cls, data, field: FieldTag | None = None, tol: float = DEFAULT_TOL) -> "SubspaceBasis":
        return cls(Mat(data, field), tol)

    @property
    def d(self) -> int:
        return self.mat.rows

    @property
    def c(self) -> int:
        return self.mat.cols

    @property
    def field(self) -> FieldTag:
        return self.mat.field

    @property
    def array(self) -> np.ndarray:
        return self.mat.array

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"SubspaceBasis(d={self.d}, c={self.c}, {self.field.value})"


class FusionFrame:
    """n subspaces of F^d, each of dimension c, as a tuple of bases.

    All bases must share (field, d, c). A single subspace (n = 1) is
    allowed; operations with pairwise semantics require n >= 2 and say
    so.
    """

    __slots__ = ("bases",)

    bases: tuple[SubspaceBasis, ...]

    def __init__(self, bases: Iterable[SubspaceBasis]):
        bases = tuple(bases)
        if not bases:
            raise ValueError("frame needs at least one subspace")
        head = bases[0]
        for idx, b in enumerate(bases):
            if (b.field, b.d, b.c) != (head.field, head.d, head.c):
                raise ValueError(
                    f"basis {idx + 1} has (field={b.field.value}, d={b.d}, c={b.c}), "
                    f"expected (field={head.field.value}, d={head.d}, c={head.c})"
                )
        self.bases = bases

    @classmethod
    def from_arrays(
        cls,
        arrays: Sequence,
        field: FieldTag | None = None,
        tol: float = DEFAULT_TOL,
    ) -> "FusionFrame":
        return cls(SubspaceBasis.from_array(a, field, tol) for a in arrays)

    @property
    def field(self) -> FieldTag:
        return self.bases[0].field

    @property
    def d(self) -> int:
        return self.bases[0].d

    @property
    def c(self) -> int:
        return self.bases[0].c

    @property
    def n(self) -> int:
        return len(self.bases)

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Index pairs (j, j') with j < j', in fixed lexicographic order."""
        for j in range(self.n):
            for jj in range(j + 1, self.n):
                yield j, jj

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionFrame):
            return NotImplemented
        return self.bases == other.bases

    def __hash__(self):
        return hash(self.bases)

    def __repr__(self) -> str:
        return f"FusionFrame(n={self.n}, d={self.d}, c={self.c}, {self.field.value})"


class PrincipalAngles:
    """Nondecreasing angles in [0, pi/2] between two equi-dimensional subspaces."""

    __slots__ = ("thetas",)

    thetas: np.ndarray

    def __init__(self, thetas):
        arr = np.asarray(thetas, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("principal angles must form a non-empty 1-d sequence")
        if np.any(arr < 0.0) or np.any(arr > math.pi / 2 + 1e-12):
            raise ValueError("principal angles must lie in [0, pi/2]")
        if np.any(np.diff(arr) < -1e-12):
            raise ValueError("principal angles must be nondecreasing")
        arr.setflags(write=False)
        self.thetas = arr

    def __len__(self) -> int:
        return self.thetas.size

    def __repr__(self) -> str:
        return f"PrincipalAngles({np.array2string(self.thetas, precision=6)})"


def _require_compatible(b1: SubspaceBasis, b2: SubspaceBasis) -> None:
    if (b1.field, b1.d, b1.c) != (b2.field, b2.d, b2.c):
        raise ValueError(
            f"subspaces not comparable: (field={b1.field.value}, d={b1.d}, c={b1.c}) vs "
            f"(field={b2.field.value}, d={b2.d}, c={b2.c})"
        )


def projection(b: SubspaceBasis) -> Mat:
    """Orthogonal projection onto the subspace: the d x d matrix mat @ mat*."""
    return Mat(b.array @ b.array.conj().T, b.field)


def cross_gramian(b1: SubspaceBasis, b2: SubspaceBasis) -> Mat:
    """The c x c matrix mat1* @ mat2; all its singular values are <= 1."""
    _require_compatible(b1, b2)
    return Mat(b1.array.conj().T @ b2.array, b1.field)


def fusion_gram(f: FusionFrame) -> Mat:
    """Block Gram matrix of all nc basis vectors, nc x nc.

    Block (j, j') is the cross-Gramian of bases j and j'; diagonal
    blocks are exactly the identity and the lower triangle mirrors the
    upper, so the result is self-adjoint by construction.
    """
    n, c = f.n, f.c
    out = np.zeros((n * c, n * c), dtype=np.complex128)
    eye = np.eye(c)
    for j in range(n):
        out[j * c : (j + 1) * c, j * c : (j + 1) * c] = eye
    for j, jj in f.pairs():
        block = f.bases[j].array.conj().T @ f.bases[jj].array
        out[j * c : (j + 1) * c, jj * c : (jj + 1) * c] = block
        out[jj * c : (jj + 1) * c, j * c : (j + 1) * c] = block.conj().T
    return Mat(out, f.field)


def fusion_frame_operator(f: FusionFrame) -> Mat:
    """Sum of the n orthogonal projections, a d x d PSD matrix of trace nc."""
    acc = np.zeros((f.d, f.d), dtype=np.complex128)
    for b in f.bases:
        acc += b.array @ b.array.conj().T
    return Mat(acc, f.field)


def principal_angles(b1: SubspaceBasis, b2: SubspaceBasis) -> PrincipalAngles:
    """Principal angles between two subspaces.

    The cosines are the singular values of the cross-Gramian, clamped to
    [0, 1] before arccos since round-off can push them past 1 by ~1e-16.
    Invariant under the choice of orthonormal bases.
    """
    s = singular_values(cross_gramian(b1, b2))
    return PrincipalAngles(np.arccos(np.clip(s, 0.0, 1.0)))


def chordal_distance_sq(b1: SubspaceBasis, b2: SubspaceBasis) -> float:
    """Squared chordal distance between two subspaces, in [0, c].

    Equals half the squared Frobenius distance of the projections,
    c - ||cross-Gramian||_F^2, and the sum of squared sines of the
    principal angles.
    """
    g = cross_gramian(b1, b2)
    val = b1.c - float(np.vdot(g.array, g.array).real)
    return min(max(val, 0.0), float(b1.c))


def spectral_distance_sq(b1: SubspaceBasis, b2: SubspaceBasis) -> float:
    """Squared sine of the smallest principal angle: 1 - ||cross-Gramian||_2^2."""
    s_max = float(singular_values(cross_gramian(b1, b2))[0])
    return max(0.0, 1.0 - min(s_max, 1.0) ** 2)


def geodesic_distance(b1: SubspaceBasis, b2: SubspaceBasis) -> float:
    """2-norm of the vector of principal angles."""
    return float(np.linalg.norm(principal_angles(b1, b2).thetas))


def min_chordal_packing(f: FusionFrame) -> float:
    """Smallest pairwise squared chordal distance (the squared packing radius)."""
    if f.n < 2:
        raise ValueError("packing radius needs at least two subspaces")
    return min(chordal_distance_sq(f.bases[j], f.bases[jj]) for j, jj in f.pairs())


def coherence(f: FusionFrame) -> float:
    """Largest pairwise |inner product| of a unit-vector frame (c = 1 only)."""
    if f.c != 1:
        raise ValueError(f"coherence is defined for unit vectors (c = 1), got c = {f.c}")
    if f.n < 2:
        raise ValueError("coherence needs at least two vectors")
    return max(
        abs(complex(cross_gramian(f.bases[j], f.bases[jj]).array[0, 0]))
        for j, jj in f.pairs()
    )


def traceless_embed(b: SubspaceBasis) -> Mat:
    """Normalized traceless component of the subspace's projection.

    Returns [d/(c(d-c))]^(1/2) (P - (c/d) I), a self-adjoint d x d
    matrix of trace zero and unit Frobenius norm. Requires c < d.
    """
    d, c = b.d, b.c
    if c >= d:
        raise ValueError(f"traceless embedding needs c < d, got c = {c}, d = {d}")
    p = b.array @ b.array.conj().T
    scale = math.sqrt(d / (c * (d - c)))
    return Mat(scale * (p - (c / d) * np.eye(d)), b.field)
