"""
Momentum-space building blocks: wavevectors, the electromagnetic helicity
basis, the Dirac spinors and the Cartesian orts.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .algebra import alpha_matrices, beta_matrix, spin1_generators

logger = logging.getLogger(__name__)

BASIS_TOL = 1e-13


@dataclass(frozen=True)
class WaveVector:
    """Wavevector k with mass m; omega = sqrt(k^2 + m^2)"""
    k: np.ndarray
    m: float = 0.0

    def __post_init__(self):
        k = np.array(self.k, dtype=float)
        if k.shape != (3,) or not np.all(np.isfinite(k)):
            raise ValueError(f"Wavevector must be a finite real 3-vector, got {self.k!r}")
        if not (np.isfinite(self.m) and self.m >= 0):
            raise ValueError(f"Mass must be finite and non-negative, got {self.m}")
        if self.m == 0 and not np.any(k):
            raise ValueError("Massless wavevector needs |k| > 0 (omega = 0 is rejected)")
        k.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", float(self.m))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.k))

    @property
    def omega(self) -> float:
        if self.m == 0:
            return self.norm
        return float(np.sqrt(self.k @ self.k + self.m * self.m))

    def flipped(self) -> "WaveVector":
        return WaveVector(-self.k, self.m)


class BasisKind(Enum):
    HELICITY = "helicity"
    DIRAC = "dirac"
    CARTESIAN = "cartesian"


@dataclass(frozen=True)
class BasisQuad:
    """Four orthonormal complex 4-vectors, stored as rows"""
    vectors: np.ndarray
    kind: BasisKind

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=np.complex128)
        if vectors.shape != (4, 4):
            raise ValueError(f"A basis quad holds four 4-vectors, got shape {vectors.shape}")
        gram = vectors.conj() @ vectors.T
        deviation = float(np.max(np.abs(gram - np.eye(4))))
        if deviation > BASIS_TOL:
            raise ValueError(f"{self.kind.value} basis is not orthonormal (Gram deviation {deviation:.2e})")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    def __getitem__(self, index: int) -> np.ndarray:
        """1-based access, matching the labels e_1..e_4, d_1..d_4"""
        if not 1 <= index <= 4:
            raise IndexError(f"Basis labels run from 1 to 4, got {index}")
        return self.vectors[index - 1]

    def completeness(self) -> np.ndarray:
        """Sum of outer products v v^dagger"""
        return self.vectors.T @ self.vectors.conj()


def helicity_vectors(k: Sequence[float]) -> np.ndarray:
    """
    The 3-component vectors e1, e2 = conj(e1), e3 = k/|k| as rows.

    For k along the third axis the limit k^1 -> 0+ is used:
    e1 = (-i sign(k^3), -1, 0) / sqrt(2).
    """
    k1, k2, k3 = np.asarray(k, dtype=float)
    omega = float(np.sqrt(k1 * k1 + k2 * k2 + k3 * k3))
    if omega == 0:
        raise ValueError("Helicity is undefined for k = 0")
    rho2 = k1 * k1 + k2 * k2
    if rho2 == 0:
        e1 = np.array([-1j * np.sign(k3), -1.0, 0.0]) / np.sqrt(2.0)
    else:
        e1 = np.array([
            omega * k2 - 1j * k1 * k3,
            -omega * k1 - 1j * k2 * k3,
            1j * rho2,
        ]) / (omega * np.sqrt(2.0 * rho2))
    e3 = np.array([k1, k2, k3], dtype=np.complex128) / omega
    return np.stack([e1, e1.conj(), e3])


def helicity_basis(wv: WaveVector) -> BasisQuad:
    """e_1..e_3 padded with a zero scalar slot, and e_4 = (0, 0, 0, 1)"""
    vectors = np.zeros((4, 4), dtype=np.complex128)
    vectors[:3, :3] = helicity_vectors(wv.k)
    vectors[3, 3] = 1.0
    return BasisQuad(vectors, BasisKind.HELICITY)


def helicity_operator(k: Sequence[float]) -> np.ndarray:
    """S . k/|k| with the spin-1 generators"""
    k = np.asarray(k, dtype=float)
    return sum(kj * s for kj, s in zip(k / np.linalg.norm(k), spin1_generators()))


def plane_wave_spinors(wv: WaveVector) -> np.ndarray:
    """
    The spinors v-_1, v-_2, v+_3, v+_4 at wavevector k exactly as written,
    scaled by N = 1/sqrt(2 omega (omega + m)). Rows are spinors.
    """
    k1, k2, k3 = wv.k
    w = wv.omega + wv.m
    kp = k1 + 1j * k2
    km = k1 - 1j * k2
    norm = 1.0 / np.sqrt(2.0 * wv.omega * w)
    return norm * np.array([
        [w, 0, k3, kp],
        [0, w, km, -k3],
        [k3, kp, w, 0],
        [km, -k3, 0, w],
    ], dtype=np.complex128)


def dirac_spinors(wv: WaveVector) -> BasisQuad:
    """
    Energy eigenbasis of H(k): v-_1(k), v-_2(k), v+_3(-k), v+_4(-k).

    The negative-energy spinors belong to momentum -k, which is what the
    e^{+ikx} branch carries; with that pairing the quad is orthonormal and
    complete.
    """
    positive = plane_wave_spinors(wv)[:2]
    negative = plane_wave_spinors(wv.flipped())[2:]
    return BasisQuad(np.vstack([positive, negative]), BasisKind.DIRAC)


def spinor_for_branch(wv: WaveVector, branch: int) -> np.ndarray:
    """Spinor multiplying branch 1..4 in the plane-wave Dirac solution (v-_r for r=1,2; v+_r for r=3,4)"""
    if branch not in (1, 2, 3, 4):
        raise ValueError(f"Branch must be 1..4, got {branch}")
    return plane_wave_spinors(wv)[branch - 1]


def cartesian_orts() -> BasisQuad:
    return BasisQuad(np.eye(4), BasisKind.CARTESIAN)


def dirac_hamiltonian(k: Sequence[float], m: float) -> np.ndarray:
    """Momentum symbol alpha.k + beta m"""
    return sum(kj * a for kj, a in zip(k, alpha_matrices())) + m * beta_matrix()
