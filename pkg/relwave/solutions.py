"""
Plane-wave solutions of the Schrodinger-Foldy, Dirac and generalized Maxwell
equations as finite mode sums, and residual evaluators for every equation
form they are supposed to satisfy.

Every field here is a PlaneWaveSum: a list of terms w * exp(s i (Omega t - k.x))
with s = -1 for the e^{-ikx} branches and s = +1 for the e^{+ikx} ones.
Derivatives of such sums are exact, so residuals measure only rounding.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.stats import qmc

from .algebra import METRIC, alpha_matrices, beta_matrix, gamma_standard, spin1_generators
from .linalg_core import RealLinearOperator, rl_apply
from .modes import WaveVector, helicity_basis, helicity_vectors, plane_wave_spinors
from .schema import SolutionKind

logger = logging.getLogger(__name__)

SF_PREFACTOR = (2.0 * np.pi) ** -1.5
MASSLESS_KINDS = (SolutionKind.GENMAXWELL,)


class ModeSpec(BaseModel):
    """One plane-wave mode; detuning shifts the phase frequency only"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: Tuple[float, float, float]
    branch: int = Field(ge=1, le=4)
    amplitude: complex = 1.0 + 0.0j
    detuning: float = 0.0

    @field_validator("amplitude", mode="before")
    @classmethod
    def validate_amplitude(cls, amplitude):
        amplitude = complex(amplitude)
        if not (math.isfinite(amplitude.real) and math.isfinite(amplitude.imag)):
            raise ValueError(f"Amplitude must be finite, got {amplitude}")
        return amplitude

    @field_validator("k")
    @classmethod
    def validate_k(cls, k):
        if not all(math.isfinite(component) for component in k):
            raise ValueError(f"Wavevector must be finite, got {k}")
        return k

    def wave_vector(self, mass: float) -> WaveVector:
        return WaveVector(self.k, mass)


class SolutionSpec(BaseModel):
    """A finite list of modes standing in for a momentum integral"""
    model_config = ConfigDict(frozen=True)

    mass: float = Field(0.0, ge=0)
    kind: SolutionKind
    modes: List[ModeSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_modes(self):
        if self.kind in MASSLESS_KINDS and self.mass != 0:
            raise ValueError(f"{self.kind.value} solutions are massless, got mass {self.mass}")
        for mode in self.modes:
            # raises for k = 0 when massless
            mode.wave_vector(self.mass)
        return self

    def __add__(self, other: "SolutionSpec") -> "SolutionSpec":
        if other.kind != self.kind or other.mass != self.mass:
            raise ValueError("Only specs of the same kind and mass can be superposed")
        return SolutionSpec(mass=self.mass, kind=self.kind, modes=[*self.modes, *other.modes])

    def with_modes(self, modes: Sequence[ModeSpec]) -> "SolutionSpec":
        return SolutionSpec(mass=self.mass, kind=self.kind, modes=list(modes))


@dataclass(frozen=True)
class EMField:
    """
    Field strengths E, H and the scalar pair E0, H0. Arrays may carry leading
    batch dimensions: E and H have shape (..., 3), E0 and H0 shape (...).
    """
    E: np.ndarray
    H: np.ndarray
    E0: np.ndarray
    H0: np.ndarray

    @classmethod
    def from_packed(cls, packed) -> "EMField":
        """Unpack calE = (E - iH, E0 - iH0)"""
        packed = np.asarray(packed, dtype=np.complex128)
        if packed.shape[-1] != 4:
            raise ValueError(f"Packed field needs 4 components, got shape {packed.shape}")
        return cls(
            E=packed[..., :3].real.copy(),
            H=-packed[..., :3].imag,
            E0=packed[..., 3].real.copy(),
            H0=-packed[..., 3].imag,
        )

    def packed(self) -> np.ndarray:
        vector = np.asarray(self.E) - 1j * np.asarray(self.H)
        scalar = np.asarray(self.E0) - 1j * np.asarray(self.H0)
        return np.concatenate([vector, scalar[..., None]], axis=-1)


@lru_cache(maxsize=1)
def levi_civita4() -> np.ndarray:
    """Totally antisymmetric symbol with epsilon_{0123} = +1"""
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    eps.setflags(write=False)
    return eps


@dataclass(frozen=True)
class FieldJet:
    """Field values and the derivatives d_t, d_x, d_y, d_z at a batch of points"""
    value: np.ndarray
    grad: np.ndarray

    def __post_init__(self):
        value = np.asarray(self.value, dtype=np.complex128)
        grad = np.asarray(self.grad, dtype=np.complex128)
        if grad.shape != (4, *value.shape):
            raise ValueError(f"Gradient shape {grad.shape} does not match value shape {value.shape}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "grad", grad)

    def map_components(self, op: RealLinearOperator) -> "FieldJet":
        """Pointwise real-linear map; it commutes with the (real) derivatives"""
        return FieldJet(rl_apply(op, self.value), rl_apply(op, self.grad))

    def scale(self) -> float:
        """Largest pointwise size of value plus derivatives, or 1 for a zero field"""
        sizes = np.linalg.norm(self.value, axis=-1) + np.linalg.norm(self.grad, axis=-1).sum(axis=0)
        largest = float(np.max(sizes, initial=0.0))
        return largest if largest > 0 else 1.0


def _max_norm(values: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(values, axis=-1), initial=0.0))


def _as_points(points) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[-1] != 4:
        raise ValueError(f"Sample points are (t, x, y, z) rows, got shape {points.shape}")
    return points


def spacetime_point(t: float, x: Sequence[float]) -> np.ndarray:
    return np.array([[t, *np.asarray(x, dtype=float)]])


@dataclass(frozen=True)
class PlaneWaveSum:
    """
    Sum of terms vectors[n] * exp(sign[n] * i * (freq[n] t - k[n] . x)).

    `mass` only enters the operator symbols (omega-hat) that act on the sum.
    """
    k: np.ndarray
    sign: np.ndarray
    freq: np.ndarray
    vectors: np.ndarray
    mass: float = 0.0

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float).reshape(-1, 3)
        sign = np.asarray(self.sign, dtype=float).reshape(-1)
        freq = np.asarray(self.freq, dtype=float).reshape(-1)
        vectors = np.asarray(self.vectors, dtype=np.complex128)
        if vectors.ndim != 2:
            raise ValueError(f"Vectors must be (terms, components), got shape {vectors.shape}")
        if not (len(k) == len(sign) == len(freq) == len(vectors)):
            raise ValueError("Plane-wave term arrays have different lengths")
        if not np.all(np.isin(sign, (-1.0, 1.0))):
            raise ValueError("Term signs must be -1 or +1")
        for name, value in (("k", k), ("sign", sign), ("freq", freq), ("vectors", vectors)):
            object.__setattr__(self, name, value)

    @classmethod
    def empty(cls, components: int, mass: float = 0.0) -> "PlaneWaveSum":
        return cls(np.zeros((0, 3)), np.zeros(0), np.zeros(0), np.zeros((0, components)), mass)

    @property
    def components(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return len(self.vectors)

    def omega(self) -> np.ndarray:
        """omega-hat symbol sqrt(k^2 + m^2) per term"""
        return np.sqrt(np.einsum("ni,ni->n", self.k, self.k) + self.mass * self.mass)

    def phases(self, points) -> np.ndarray:
        points = _as_points(points)
        t, x = points[:, 0], points[:, 1:]
        return np.exp(1j * self.sign[None, :] * (np.outer(t, self.freq) - x @ self.k.T))

    def evaluate(self, points, weights: Optional[np.ndarray] = None) -> np.ndarray:
        """Field values at points, shape (points, components); weights multiply each term"""
        phases = self.phases(points)
        if weights is not None:
            phases = phases * weights[None, :]
        return phases @ self.vectors

    def derivative_factors(self) -> np.ndarray:
        """Per-term factors of d_t, d_x, d_y, d_z, shape (4, terms)"""
        return np.vstack([1j * self.sign * self.freq, -1j * self.sign[None, :] * self.k.T])

    def jet(self, points) -> FieldJet:
        phases = self.phases(points)
        grad = np.stack([(phases * factor[None, :]) @ self.vectors for factor in self.derivative_factors()])
        return FieldJet(phases @ self.vectors, grad)

    def map_pointwise(self, op: RealLinearOperator) -> "PlaneWaveSum":
        """
        Apply a real-linear operator to the field value at every point. The
        antilinear part conjugates each term and so flips its sign.
        """
        if op.dim != self.components:
            raise ValueError(f"Operator dimension {op.dim} does not match {self.components} components")
        parts = []
        if not op.is_antilinear:
            parts.append(PlaneWaveSum(self.k, self.sign, self.freq, self.vectors @ op.A.T, self.mass))
        if not op.is_linear:
            parts.append(PlaneWaveSum(self.k, -self.sign, self.freq, self.vectors.conj() @ op.B.T, self.mass))
        if not parts:
            return self.scaled(0.0)
        return sum(parts[1:], parts[0])

    def map_terms(self, matrices: np.ndarray) -> "PlaneWaveSum":
        """Multiply each term's vector by its own matrix (a momentum-space symbol)"""
        return PlaneWaveSum(
            self.k, self.sign, self.freq, np.einsum("nab,nb->na", matrices, self.vectors), self.mass
        )

    def __add__(self, other: "PlaneWaveSum") -> "PlaneWaveSum":
        if other.components != self.components or other.mass != self.mass:
            raise ValueError("Plane-wave sums differ in components or mass")
        return PlaneWaveSum(
            np.vstack([self.k, other.k]),
            np.concatenate([self.sign, other.sign]),
            np.concatenate([self.freq, other.freq]),
            np.vstack([self.vectors, other.vectors]),
            self.mass,
        )

    def scaled(self, factor: complex) -> "PlaneWaveSum":
        return PlaneWaveSum(self.k, self.sign, self.freq, factor * self.vectors, self.mass)

    def scale(self) -> float:
        """Size bound on every term entering a residual, or 1 for an empty sum"""
        sizes = np.linalg.norm(self.vectors, axis=1) * (
            1.0 + np.abs(self.freq) + np.linalg.norm(self.k, axis=1) + self.mass
        )
        total = float(sizes.sum())
        return total if total > 0 else 1.0


def _gen_maxwell_terms(mode: ModeSpec) -> List[Tuple[float, np.ndarray]]:
    """(sign, vector) pairs of one generalized Maxwell mode"""
    basis = helicity_basis(WaveVector(mode.k))
    a = mode.amplitude
    if mode.branch == 1:
        return [(-1.0, a * basis[1])]
    if mode.branch == 2:
        return [(1.0, np.conj(a) * basis[1])]
    longitudinal = basis[3] + basis[4]
    if mode.branch == 3:
        return [(-1.0, a * longitudinal)]
    return [(1.0, np.conj(a) * longitudinal)]


def to_plane_waves(spec: SolutionSpec) -> PlaneWaveSum:
    """Expand a spec into explicit plane-wave terms"""
    components = 4
    if not spec.modes:
        return PlaneWaveSum.empty(components, spec.mass)

    ks, signs, freqs, vectors = [], [], [], []
    for mode in spec.modes:
        wv = mode.wave_vector(spec.mass)
        freq = wv.omega + mode.detuning
        if spec.kind == SolutionKind.SF:
            terms = [(-1.0, SF_PREFACTOR * mode.amplitude * np.eye(components)[mode.branch - 1])]
        elif spec.kind == SolutionKind.DIRAC:
            spinor = plane_wave_spinors(wv)[mode.branch - 1]
            if mode.branch <= 2:
                terms = [(-1.0, SF_PREFACTOR * mode.amplitude * spinor)]
            else:
                terms = [(1.0, SF_PREFACTOR * np.conj(mode.amplitude) * spinor)]
        else:
            prefactor = np.sqrt(2.0 * wv.omega / (2.0 * np.pi) ** 3)
            terms = [(s, prefactor * vector) for s, vector in _gen_maxwell_terms(mode)]
        for sign, vector in terms:
            ks.append(wv.k)
            signs.append(sign)
            freqs.append(freq)
            vectors.append(vector)
    return PlaneWaveSum(np.array(ks), np.array(signs), np.array(freqs), np.array(vectors), spec.mass)


def _require_kind(spec: SolutionSpec, kind: SolutionKind):
    if spec.kind != kind:
        raise ValueError(f"Expected a {kind.value} spec, got {spec.kind.value}")


def evaluate(spec: SolutionSpec, points) -> np.ndarray:
    """Field values of any spec at a batch of (t, x, y, z) points"""
    return to_plane_waves(spec).evaluate(points)


def eval_sf(spec: SolutionSpec, t: float, x: Sequence[float]) -> np.ndarray:
    _require_kind(spec, SolutionKind.SF)
    return evaluate(spec, spacetime_point(t, x))[0]


def residual_sf(spec: SolutionSpec, points) -> float:
    """max ||i d_t f - sqrt(m^2 - Laplacian) f|| with the square root acting as omega-hat per mode"""
    _require_kind(spec, SolutionKind.SF)
    waves = to_plane_waves(spec)
    weights = -waves.sign * waves.freq - waves.omega()
    return _max_norm(waves.evaluate(points, weights))


def eval_dirac(spec: SolutionSpec, t: float, x: Sequence[float]) -> np.ndarray:
    _require_kind(spec, SolutionKind.DIRAC)
    return evaluate(spec, spacetime_point(t, x))[0]


def dirac_residual(jet: FieldJet, m: float) -> float:
    """max ||i d_0 psi - (alpha . p + beta m) psi|| over the jet's points"""
    residual = 1j * jet.grad[0] - m * jet.value @ beta_matrix().T
    for alpha, derivative in zip(alpha_matrices(), jet.grad[1:]):
        residual = residual + 1j * derivative @ alpha.T
    return _max_norm(residual)


def massless_dirac_residual(jet: FieldJet) -> float:
    return dirac_residual(jet, 0.0)


def residual_dirac(spec: SolutionSpec, points) -> float:
    _require_kind(spec, SolutionKind.DIRAC)
    return dirac_residual(to_plane_waves(spec).jet(points), spec.mass)


def eval_gen_maxwell(spec: SolutionSpec, t: float, x: Sequence[float]) -> EMField:
    _require_kind(spec, SolutionKind.GENMAXWELL)
    return EMField.from_packed(evaluate(spec, spacetime_point(t, x))[0])


def eval_gen_maxwell_helicity_form(spec: SolutionSpec, t: float, x: Sequence[float]) -> EMField:
    """
    E and H written with transverse amplitudes c1, c2 and the longitudinal
    ones alpha = c3 + c4, beta = c3 - c4; E0 - iH0 from the scalar expansion.
    """
    _require_kind(spec, SolutionKind.GENMAXWELL)
    x = np.asarray(x, dtype=float)
    E, H = np.zeros(3), np.zeros(3)
    scalar = 0.0j
    for mode in spec.modes:
        wv = WaveVector(mode.k)
        e1, e2, e3 = helicity_vectors(wv.k)
        half = np.sqrt(wv.omega / (2.0 * (2.0 * np.pi) ** 3))
        phase = np.exp(-1j * ((wv.omega + mode.detuning) * t - wv.k @ x))
        c = mode.amplitude
        electric, magnetic = {
            1: (c * e1, c * e1),
            2: (c * e2, -c * e2),
            3: (c * e3, c * e3),
            4: (c * e3, -c * e3),
        }[mode.branch]
        E += 2.0 * (half * electric * phase).real
        H += 2.0 * (1j * half * magnetic * phase).real
        if mode.branch == 3:
            scalar += 2.0 * half * c * phase
        elif mode.branch == 4:
            scalar += 2.0 * half * np.conj(c) * np.conj(phase)
    return EMField(E=E, H=H, E0=np.asarray(scalar.real), H0=np.asarray(-scalar.imag))


def tensor_E(calE) -> np.ndarray:
    """Complex tensor built from calE^1..calE^3; accepts (..., 4) with calE^0 last"""
    calE = np.asarray(calE, dtype=np.complex128)
    e1, e2, e3 = calE[..., 0], calE[..., 1], calE[..., 2]
    zero = np.zeros_like(e1)
    rows = [
        [zero, e1, e2, e3],
        [-e1, zero, 1j * e3, -1j * e2],
        [-e2, -1j * e3, zero, 1j * e1],
        [-e3, 1j * e2, -1j * e1, zero],
    ]
    return np.stack([np.stack(row, axis=-1) for row in rows], axis=-2)


# packed slot of each contravariant index mu
_COVARIANT_ORDER = [3, 0, 1, 2]


@dataclass(frozen=True)
class GenMaxwellReport:
    """Max residual of each equivalent form of the generalized Maxwell system"""
    curl_div: float
    covariant: float
    tensor_scalar: float
    helicity: float
    divergence: float

    @property
    def max_residual(self) -> float:
        return max(self.curl_div, self.covariant, self.tensor_scalar, self.helicity, self.divergence)

    def as_dict(self) -> dict:
        return {
            "curl_div": self.curl_div,
            "covariant": self.covariant,
            "tensor_scalar": self.tensor_scalar,
            "helicity": self.helicity,
            "divergence": self.divergence,
        }


def _curl(spatial_grad: np.ndarray) -> np.ndarray:
    """curl of the 3-vector part given d_x, d_y, d_z of shape (3, points, 3)"""
    d = spatial_grad
    return np.stack([
        d[1][..., 2] - d[2][..., 1],
        d[2][..., 0] - d[0][..., 2],
        d[0][..., 1] - d[1][..., 0],
    ], axis=-1)


def _curl_div_residual(jet: FieldJet) -> float:
    dt = EMField.from_packed(jet.grad[0])
    spatial = [EMField.from_packed(derivative) for derivative in jet.grad[1:]]
    curl_E = _curl(np.stack([d.E for d in spatial]))
    curl_H = _curl(np.stack([d.H for d in spatial]))
    grad_E0 = np.stack([d.E0 for d in spatial], axis=-1)
    grad_H0 = np.stack([d.H0 for d in spatial], axis=-1)
    div_E = sum(d.E[..., j] for j, d in enumerate(spatial))
    div_H = sum(d.H[..., j] for j, d in enumerate(spatial))
    residual = np.concatenate([
        dt.E - curl_H + grad_E0,
        dt.H + curl_E + grad_H0,
        (div_E + dt.E0)[..., None],
        (div_H + dt.H0)[..., None],
    ], axis=-1)
    return _max_norm(residual)


def gen_maxwell_residuals(jet: FieldJet, printed_signs: bool = False) -> GenMaxwellReport:
    """
    Evaluate the curl/div system, the covariant vector form, the
    tensor-scalar form and the spin-1 helicity form on a jet of calE.

    With printed_signs=True the last three forms use the opposite relative
    signs of their dual, source and spin terms; on genuine solutions those
    variants do not vanish.
    """
    metric = np.asarray(METRIC)
    flip = -1.0 if printed_signs else 1.0

    # D[p, mu, nu] = d_mu calE^nu
    D = np.moveaxis(jet.grad[..., _COVARIANT_ORDER], 0, 1)
    lowered = D * metric[None, None, :]
    antisymmetric = lowered - np.swapaxes(lowered, 1, 2)
    raised = D * metric[None, :, None]
    dual = np.einsum("mnrs,prs->pmn", levi_civita4(), raised)
    divergence = np.einsum("pmm->p", D)
    covariant_terms = antisymmetric - flip * 1j * dual
    covariant = float(np.max(np.sqrt(
        np.sum(np.abs(covariant_terms) ** 2, axis=(1, 2)) + np.abs(divergence) ** 2
    ), initial=0.0))

    tensor_div = np.einsum("npmn->pm", tensor_E(jet.grad))
    source = (jet.grad[..., 3] * metric[:, None]).T
    tensor_scalar = _max_norm(tensor_div + flip * source)

    vector_grad = jet.grad[..., :3]
    spin_term = sum(-1j * vector_grad[1 + j] @ s.T for j, s in enumerate(spin1_generators()))
    grad_scalar = np.moveaxis(jet.grad[1:, :, 3], 0, -1)
    helicity_terms = 1j * vector_grad[0] + flip * (spin_term + 1j * grad_scalar)
    helicity = float(np.max(np.sqrt(
        np.linalg.norm(helicity_terms, axis=-1) ** 2 + np.abs(divergence) ** 2
    ), initial=0.0))

    return GenMaxwellReport(
        curl_div=_curl_div_residual(jet),
        covariant=covariant,
        tensor_scalar=tensor_scalar,
        helicity=helicity,
        divergence=float(np.max(np.abs(divergence), initial=0.0)),
    )


def residual_gen_maxwell(spec: SolutionSpec, points, printed_signs: bool = False) -> GenMaxwellReport:
    _require_kind(spec, SolutionKind.GENMAXWELL)
    return gen_maxwell_residuals(to_plane_waves(spec).jet(points), printed_signs)


@dataclass(frozen=True)
class GradientSources:
    """Covariant currents j_mu = -d_mu E0 (electric) and -d_mu H0 (magnetic)"""
    electric: np.ndarray
    magnetic: np.ndarray

    @property
    def rho_e(self) -> float:
        return float(self.electric[0])

    @property
    def rho_mag(self) -> float:
        return float(self.magnetic[0])


def gradient_sources(spec: SolutionSpec, t: float, x: Sequence[float]) -> GradientSources:
    _require_kind(spec, SolutionKind.GENMAXWELL)
    jet = to_plane_waves(spec).jet(spacetime_point(t, x))
    scalar_grad = jet.grad[:, 0, 3]
    return GradientSources(electric=-scalar_grad.real, magnetic=scalar_grad.imag)


def lagrangian_density(
    psi,
    dpsi,
    m: float,
    A: Optional[Sequence[float]] = None,
    charge_e: float = 1.0,
) -> complex:
    """
    (i/2)(psibar gamma^mu d_mu psi - d_mu psibar gamma^mu psi) - m psibar psi,
    plus e psibar gamma^mu psi A_mu when a covariant potential A is given.
    """
    psi = np.asarray(psi, dtype=np.complex128)
    dpsi = np.asarray(dpsi, dtype=np.complex128)
    if psi.shape != (4,) or dpsi.shape != (4, 4):
        raise ValueError(f"Expected a spinor and its four derivatives, got {psi.shape} and {dpsi.shape}")
    gammas = gamma_standard().matrices
    gamma0 = gammas[0]
    psibar = psi.conj() @ gamma0
    kinetic = sum(
        psibar @ gamma @ derivative - (derivative.conj() @ gamma0) @ gamma @ psi
        for gamma, derivative in zip(gammas, dpsi)
    )
    density = 0.5j * kinetic - m * (psibar @ psi)
    if A is not None:
        density += charge_e * sum(psibar @ gamma @ psi * a for gamma, a in zip(gammas, A))
    return complex(density)


def sample_points(rng: np.random.Generator, count: int) -> np.ndarray:
    """Scrambled Halton points in [0, 1]^4, rows (t, x, y, z)"""
    if count < 1:
        raise ValueError(f"Need at least one sample point, got {count}")
    return qmc.Halton(d=4, scramble=True, seed=rng).random(count)


def random_spec(
    rng: np.random.Generator,
    kind: SolutionKind,
    count: int,
    mass: float = 1.0,
    box: Optional[float] = None,
    max_index: int = 3,
) -> SolutionSpec:
    """
    Random modes with unit total amplitude scale. With `box` set, wavevectors
    lie on the FFT lattice 2 pi j / box with |j_i| <= max_index.
    """
    if kind in MASSLESS_KINDS:
        mass = 0.0
    modes = []
    while len(modes) < count:
        if box is None:
            k = rng.uniform(-3.0, 3.0, size=3)
        else:
            k = 2.0 * np.pi / box * rng.integers(-max_index, max_index + 1, size=3)
        if mass == 0 and not np.any(k):
            continue
        amplitude = complex(*rng.normal(size=2)) / np.sqrt(2.0 * count)
        modes.append(ModeSpec(k=tuple(k), branch=int(rng.integers(1, 5)), amplitude=amplitude))
    return SolutionSpec(mass=mass, kind=kind, modes=modes)


def format_spec(spec: SolutionSpec) -> str:
    """Line format: header `mass`, `kind`, then `branch kx ky kz re im [detuning]` per mode"""
    lines = [f"mass {spec.mass!r}", f"kind {spec.kind.value}"]
    for mode in spec.modes:
        fields = [str(mode.branch), *(repr(float(c)) for c in mode.k),
                  repr(mode.amplitude.real), repr(mode.amplitude.imag)]
        if mode.detuning:
            fields.append(repr(mode.detuning))
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def parse_spec(text: str) -> SolutionSpec:
    mass, kind, modes = 0.0, None, []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "mass":
                mass = float(fields[1])
            elif fields[0] == "kind":
                kind = SolutionKind(fields[1])
            elif len(fields) in (6, 7):
                branch, kx, ky, kz, re, im = fields[:6]
                modes.append(ModeSpec(
                    k=(float(kx), float(ky), float(kz)),
                    branch=int(branch),
                    amplitude=complex(float(re), float(im)),
                    detuning=float(fields[6]) if len(fields) == 7 else 0.0,
                ))
            else:
                raise ValueError(f"expected 6 or 7 fields, got {len(fields)}")
        except (IndexError, ValueError) as e:
            raise ValueError(f"Line {number}: {e}") from e
    if kind is None:
        raise ValueError("Spec text has no `kind` header")
    return SolutionSpec(mass=mass, kind=kind, modes=modes)
