"""
Correspondence maps: the Sallhofer columns and the medium link, the operator U
between the complex field strength and massless Dirac spinors with its eight
spinorizations, and the extended Foldy-Wouthuysen operator V between the
Schrodinger-Foldy doublet and the Dirac theory.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import alpha_matrices, beta_matrix, block_conjugation, gamma_standard, gamma_tilde, pgi_operators
from .linalg_core import RealLinearOperator, rl_chain, rl_distance
from .modes import dirac_hamiltonian, spinor_for_branch
from .schema import SolutionKind
from .solutions import (
    SF_PREFACTOR,
    EMField,
    FieldJet,
    GenMaxwellReport,
    ModeSpec,
    PlaneWaveSum,
    SolutionSpec,
    gen_maxwell_residuals,
    massless_dirac_residual,
    to_plane_waves,
)

logger = logging.getLogger(__name__)

# Entries a*C_+ and a*C_- with C_-+ = (C -+ 1)/2, as (linear, antilinear) coefficients
_CONJ_ENTRIES = {
    "0": (0.0, 0.0),
    "C+": (0.5, 0.5),
    "C-": (-0.5, 0.5),
    "iC+": (0.5j, 0.5j),
    "iC-": (-0.5j, 0.5j),
}

U_TABLE = (
    ("0", "0", "C+", "C-"),
    ("C+", "iC+", "0", "0"),
    ("0", "0", "C-", "C+"),
    ("C-", "iC-", "0", "0"),
)

U_INV_TABLE = (
    ("0", "C+", "0", "C-"),
    ("0", "iC-", "0", "iC+"),
    ("C+", "0", "C-", "0"),
    ("C-", "0", "C+", "0"),
)

# Columns 3..6 solve the medium equation only with epsilon and mu interchanged
SALLHOFER_SWAPPED = (False, False, True, True, True, True, False, False)


def operator_from_table(table: Sequence[Sequence[str]]) -> RealLinearOperator:
    """Real-linear operator from a table of C_+ / C_- entries"""
    entries = [[_CONJ_ENTRIES[entry] for entry in row] for row in table]
    return RealLinearOperator(
        [[a for a, _ in row] for row in entries],
        [[b for _, b in row] for row in entries],
    )


def build_U() -> RealLinearOperator:
    return operator_from_table(U_TABLE)


def build_U_inv() -> RealLinearOperator:
    return operator_from_table(U_INV_TABLE)


@dataclass(frozen=True)
class MappedField:
    jet: FieldJet
    residual: float


def map_maxwell_to_dirac(spec: SolutionSpec, points) -> MappedField:
    """psi = U calE at the sample points, with its massless Dirac residual"""
    if spec.kind != SolutionKind.GENMAXWELL:
        raise ValueError(f"Expected a GENMAXWELL spec, got {spec.kind.value}")
    jet = to_plane_waves(spec).jet(points).map_components(build_U())
    return MappedField(jet=jet, residual=massless_dirac_residual(jet))


def map_dirac_to_maxwell(jet: FieldJet) -> GenMaxwellReport:
    """calE = U^-1 psi, checked against every form of the generalized Maxwell system"""
    return gen_maxwell_residuals(jet.map_components(build_U_inv()))


def eight_spinorizations(f: EMField) -> np.ndarray:
    """The eight spinors psi^I..psi^VIII built from (E, H, E0, H0); shape (8, ..., 4)"""
    E1, E2, E3 = (np.asarray(f.E)[..., j] for j in range(3))
    H1, H2, H3 = (np.asarray(f.H)[..., j] for j in range(3))
    E0, H0 = np.asarray(f.E0), np.asarray(f.H0)
    i = 1j
    columns = [
        [E3 + i * H0, E1 + i * E2, i * H3 + E0, -H2 + i * H1],
        [i * E3 - H0, i * E1 - E2, -H3 + i * E0, -H1 - i * H2],
        [i * E1 + E2, -i * E3 - H0, -H1 + i * H2, H3 + i * E0],
        [-E1 + i * E2, E3 - i * H0, -i * H1 - H2, i * H3 - E0],
        [-H3 + i * E0, -H1 - i * H2, i * E3 - H0, i * E1 - E2],
        [-H1 + i * H2, H3 + i * E0, i * E1 + E2, -i * E3 - H0],
        [i * H3 + E0, -H2 + i * H1, E3 + i * H0, E1 + i * E2],
        [-i * H1 - H2, i * H3 - E0, -E1 + i * E2, E3 - i * H0],
    ]
    return np.stack([np.stack(column, axis=-1) for column in columns])


def sallhofer_columns(E, H) -> np.ndarray:
    """The eight candidate columns psi^1..psi^8 built from E, H; shape (8, ..., 4)"""
    E = np.asarray(E, dtype=float)
    H = np.asarray(H, dtype=float)
    E3, H3 = E[..., 2], H[..., 2]
    E_plus, E_minus = E[..., 0] + 1j * E[..., 1], E[..., 0] - 1j * E[..., 1]
    H_plus, H_minus = H[..., 0] + 1j * H[..., 1], H[..., 0] - 1j * H[..., 1]
    i = 1j
    columns = [
        [i * E3, i * E_plus, H3, H_plus],
        [-E3, -E_plus, i * H3, i * H_plus],
        [H3, H_plus, i * E3, i * E_plus],
        [i * H3, i * H_plus, -E3, -E_plus],
        [-i * H_minus, i * H3, E_minus, -E3],
        [H_minus, -H3, i * E_minus, -i * E3],
        [E_minus, -E3, -i * H_minus, i * H3],
        [i * E_minus, -i * E3, H_minus, -H3],
    ]
    return np.stack([np.stack(column, axis=-1) for column in columns])


@dataclass(frozen=True)
class PGIMatch:
    column: int
    operator: Optional[str]
    sign: float
    residual: float


def match_to_pgi(reference, candidates, fields: Sequence[EMField], tol: float = 1e-12) -> List[PGIMatch]:
    """
    For each candidate column find the PGI operator (and overall sign) that
    maps the reference column onto it, over every test field.

    Args:
        reference: Function EMField -> (..., 4) column
        candidates: Function EMField -> (8, ..., 4) columns
        fields: Test fields; random ones make the match exhaustive
        tol: Largest accepted residual
    """
    operators = pgi_operators(gamma_standard())
    references = np.stack([reference(f) for f in fields])
    targets = np.stack([candidates(f) for f in fields], axis=1)
    matches = []
    for column, target in enumerate(targets, start=1):
        best = PGIMatch(column=column, operator=None, sign=1.0, residual=np.inf)
        for name, op in operators.items():
            mapped = op(references)
            for sign in (1.0, -1.0):
                residual = float(np.max(np.abs(target - sign * mapped)))
                if residual < best.residual:
                    best = PGIMatch(column=column, operator=name, sign=sign, residual=residual)
        if best.residual > tol:
            best = PGIMatch(column=column, operator=None, sign=best.sign, residual=best.residual)
        logger.debug(f"Column {column}: {best.operator} (sign {best.sign:+.0f}), residual {best.residual:.2e}")
        matches.append(best)
    return matches


@dataclass(frozen=True)
class MediumProfile:
    """Coulomb medium Phi = -Z e^2 / |x| with hbar = c = 1"""
    Z: float = 1.0
    charge_e: float = 1.0
    m: float = 1.0
    omega_tilde: float = 1.0

    def __post_init__(self):
        if not self.omega_tilde > 0:
            raise ValueError(f"omega_tilde must be positive, got {self.omega_tilde}")
        if self.m < 0:
            raise ValueError(f"Mass must be non-negative, got {self.m}")

    def potential(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        if np.any(r == 0):
            raise ValueError("Coulomb potential is singular at |x| = 0")
        return -self.Z * self.charge_e ** 2 / r


def medium_permeabilities(profile: MediumProfile, x) -> Tuple[np.ndarray, np.ndarray]:
    """epsilon = 1 - (Phi - m)/omega_tilde, mu = 1 - (Phi + m)/omega_tilde"""
    phi = profile.potential(x)
    epsilon = 1.0 - (phi - profile.m) / profile.omega_tilde
    mu = 1.0 - (phi + profile.m) / profile.omega_tilde
    return epsilon, mu


def medium_amplitude_equivalence(profile: MediumProfile, xs, ks=None) -> float:
    """
    Largest Frobenius distance between the electromagnetic amplitude symbol
    alpha.(ik) + i omega diag(eps, eps, mu, mu) and the Dirac amplitude symbol
    in the Coulomb field, over the sample positions xs.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ks = np.zeros_like(xs) if ks is None else np.atleast_2d(np.asarray(ks, dtype=float))
    epsilon, mu = medium_permeabilities(profile, xs)
    w = profile.omega_tilde
    identity = np.eye(4)
    worst = 0.0
    for x, k, eps, mu_x in zip(xs, ks, epsilon, mu):
        gradient = sum(1j * kj * alpha for kj, alpha in zip(k, alpha_matrices()))
        electromagnetic = gradient + 1j * w * np.diag([eps, eps, mu_x, mu_x])
        phi = profile.potential(x)
        dirac = gradient + 1j * ((w - phi) * identity + profile.m * beta_matrix())
        worst = max(worst, float(np.linalg.norm(electromagnetic - dirac)))
    return worst


def _rescale_magnetic(packed: np.ndarray, ratio: float) -> np.ndarray:
    f = EMField.from_packed(packed)
    return EMField(f.E, ratio * f.H, f.E0, ratio * f.H0).packed()


def medium_plane_wave(spec: SolutionSpec, epsilon: float, mu: float, points) -> FieldJet:
    """
    Source-free Maxwell field in a homogeneous medium, as a jet of the packed
    field: E(t, x) = E_vac(s t, x), H = sqrt(eps/mu) H_vac(s t, x), s = 1/sqrt(eps mu).
    """
    if spec.kind != SolutionKind.GENMAXWELL:
        raise ValueError(f"Expected a GENMAXWELL spec, got {spec.kind.value}")
    if any(mode.branch > 2 for mode in spec.modes):
        raise ValueError("Medium plane waves are transverse; branches 3 and 4 carry sources")
    if not (epsilon > 0 and mu > 0):
        raise ValueError(f"Permeabilities must be positive, got eps={epsilon}, mu={mu}")
    speed = 1.0 / np.sqrt(epsilon * mu)
    ratio = np.sqrt(epsilon / mu)
    points = np.atleast_2d(np.asarray(points, dtype=float)).copy()
    points[:, 0] *= speed
    jet = to_plane_waves(spec).jet(points)
    grad = jet.grad.copy()
    grad[0] *= speed
    return FieldJet(_rescale_magnetic(jet.value, ratio), _rescale_magnetic(grad, ratio))


@dataclass(frozen=True)
class SallhoferReport:
    """Residual of each column in the medium equation, with and without the eps <-> mu interchange"""
    required: Tuple[float, ...]
    unswapped: Tuple[float, ...]
    swapped: Tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.required)


def _permeability_diagonal(epsilon, mu, swap: bool) -> np.ndarray:
    upper, lower = (mu, epsilon) if swap else (epsilon, mu)
    upper, lower = np.broadcast_arrays(np.asarray(upper, dtype=float), np.asarray(lower, dtype=float))
    return np.stack([upper, upper, lower, lower], axis=-1)


def sallhofer_residual(
    jet: FieldJet,
    medium: Union[MediumProfile, Tuple[float, float]],
    points=None,
) -> SallhoferReport:
    """
    Evaluate [alpha.grad - diag(eps I2, mu I2) d_t] psi for each of the eight
    columns built from the packed field jet.

    Args:
        jet: Jet of the packed field (E - iH, E0 - iH0)
        medium: Constant (eps, mu) or a MediumProfile evaluated at the points
        points: Sample points, needed only for a MediumProfile
    """
    if isinstance(medium, MediumProfile):
        if points is None:
            raise ValueError("A medium profile needs the sample points")
        epsilon, mu = medium_permeabilities(medium, np.atleast_2d(points)[:, 1:])
    else:
        epsilon, mu = medium

    def columns(packed):
        f = EMField.from_packed(packed)
        return sallhofer_columns(f.E, f.H)

    d_t = columns(jet.grad[0])
    spatial = sum(columns(derivative) @ alpha.T for alpha, derivative in zip(alpha_matrices(), jet.grad[1:]))

    def residuals(swap: bool) -> np.ndarray:
        diagonal = _permeability_diagonal(epsilon, mu, swap)
        residual = spatial - d_t * diagonal
        return np.max(np.linalg.norm(residual, axis=-1), axis=-1, initial=0.0)

    unswapped = residuals(False)
    swapped = residuals(True)
    required = np.where(SALLHOFER_SWAPPED, swapped, unswapped)
    return SallhoferReport(
        required=tuple(float(r) for r in required),
        unswapped=tuple(float(r) for r in unswapped),
        swapped=tuple(float(r) for r in swapped),
    )


def _fw_symbols(waves: PlaneWaveSum, direction: float) -> np.ndarray:
    """
    Per-term matrices N (direction * s gamma.k + omega + m); direction +1 is
    the symbol of V, -1 the one of V^-1.
    """
    m = waves.mass
    omega = waves.omega()
    spatial = gamma_standard().matrices[1:]
    gamma_k = np.einsum("nl,lab->nab", waves.k, np.stack(spatial))
    norm = 1.0 / np.sqrt(2.0 * omega * (omega + m))
    identity = np.eye(4)[None, :, :]
    factor = direction * waves.sign[:, None, None]
    return norm[:, None, None] * (factor * gamma_k + (omega + m)[:, None, None] * identity)


def _require_massive(mass: float):
    if not mass > 0:
        raise ValueError(f"The extended FW operator needs m > 0, got {mass}")


def apply_V_field(waves: PlaneWaveSum) -> PlaneWaveSum:
    """V on a plane-wave field: diag(1, 1, C, C) first, then the momentum symbol"""
    _require_massive(waves.mass)
    conjugated = waves.map_pointwise(block_conjugation())
    return conjugated.map_terms(_fw_symbols(conjugated, 1.0))


def apply_V_inv_field(waves: PlaneWaveSum) -> PlaneWaveSum:
    _require_massive(waves.mass)
    return waves.map_terms(_fw_symbols(waves, -1.0)).map_pointwise(block_conjugation())


def _single_mode(spec: SolutionSpec, mode: ModeSpec) -> PlaneWaveSum:
    return to_plane_waves(spec.with_modes([mode]))


def _read_amplitude(waves: PlaneWaveSum, target: np.ndarray, sign: float, conjugated: bool) -> Tuple[complex, float]:
    """
    Amplitude carried by `target` on the terms of one sign in a single-mode
    field, and the norm that `target` does not explain.
    """
    total = waves.vectors[waves.sign == sign].sum(axis=0)
    other = waves.vectors[waves.sign != sign].sum(axis=0)
    coefficient = np.vdot(target, total) / np.vdot(target, target)
    leakage = float(np.linalg.norm(total - coefficient * target) + np.linalg.norm(other))
    amplitude = coefficient / SF_PREFACTOR
    return (np.conj(amplitude) if conjugated else amplitude), leakage


def _map_modes(spec: SolutionSpec, kind: SolutionKind, field_map, target_for, antiparticle_on_plus: bool) -> SolutionSpec:
    modes = []
    for mode in spec.modes:
        mapped = field_map(_single_mode(spec, mode))
        flipped = antiparticle_on_plus and mode.branch > 2
        amplitude, leakage = _read_amplitude(mapped, target_for(mode), 1.0 if flipped else -1.0, flipped)
        scale = abs(mode.amplitude) * SF_PREFACTOR
        if leakage > 1e-9 * max(scale, 1e-300):
            logger.warning(f"Mode {mode} leaves its branch under the map (leakage {leakage:.2e})")
        modes.append(ModeSpec(k=mode.k, branch=mode.branch, amplitude=complex(amplitude), detuning=mode.detuning))
    return SolutionSpec(mass=spec.mass, kind=kind, modes=modes)


def apply_V(spec: SolutionSpec) -> SolutionSpec:
    """Map a Schrodinger-Foldy spec to the Dirac spec it becomes under V"""
    if spec.kind != SolutionKind.SF:
        raise ValueError(f"V acts on SF specs, got {spec.kind.value}")
    _require_massive(spec.mass)
    return _map_modes(
        spec,
        SolutionKind.DIRAC,
        apply_V_field,
        lambda mode: spinor_for_branch(mode.wave_vector(spec.mass), mode.branch),
        antiparticle_on_plus=True,
    )


def apply_V_inv(spec: SolutionSpec) -> SolutionSpec:
    if spec.kind != SolutionKind.DIRAC:
        raise ValueError(f"V^-1 acts on DIRAC specs, got {spec.kind.value}")
    _require_massive(spec.mass)
    # every SF branch sits on e^{-ikx}
    return _map_modes(
        spec,
        SolutionKind.SF,
        apply_V_inv_field,
        lambda mode: np.eye(4)[mode.branch - 1],
        antiparticle_on_plus=False,
    )


def _time_generator(waves: PlaneWaveSum) -> PlaneWaveSum:
    """d_0 + i omega-hat applied per term"""
    factors = 1j * waves.sign * waves.freq + 1j * waves.omega()
    return waves.map_terms(factors[:, None, None] * np.eye(4)[None])


def _dirac_generator(waves: PlaneWaveSum, mass: float) -> PlaneWaveSum:
    """d_0 + i(alpha.p + beta m) applied per term; p acts as -s k"""
    symbols = np.stack([
        1j * s * freq * np.eye(4) + 1j * dirac_hamiltonian(-s * k, mass)
        for k, s, freq in zip(waves.k, waves.sign, waves.freq)
    ]) if len(waves) else np.zeros((0, 4, 4))
    return waves.map_terms(symbols)


@dataclass(frozen=True)
class OperatorIdentityReport:
    max_difference: float
    scale: float

    @property
    def relative(self) -> float:
        return self.max_difference / self.scale if self.scale > 0 else self.max_difference


def check_identity_eq50(
    rng: np.random.Generator,
    trials: int,
    m: float = 1.0,
    rhs_mass: Optional[float] = None,
    samples: int = 8,
) -> OperatorIdentityReport:
    """
    Compare V (d_0 + i omega-hat) V^-1 with d_0 + i(alpha.p + beta m) on random
    single-mode test fields w exp(s i (Omega t - k.x)).

    Args:
        rng: Source of the test fields and sample points
        trials: Number of random test fields
        m: Mass in V and on the left-hand side
        rhs_mass: Mass on the right-hand side; defaults to m
        samples: Sample points per test field
    """
    _require_massive(m)
    rhs_mass = m if rhs_mass is None else rhs_mass
    worst, scale = 0.0, 0.0
    for _ in range(trials):
        waves = PlaneWaveSum(
            k=rng.uniform(-3.0, 3.0, size=(1, 3)),
            sign=[rng.choice([-1.0, 1.0])],
            freq=[rng.uniform(0.0, 5.0)],
            vectors=(rng.normal(size=(1, 4)) + 1j * rng.normal(size=(1, 4))),
            mass=m,
        )
        points = rng.uniform(0.0, 1.0, size=(samples, 4))
        lhs = apply_V_field(_time_generator(apply_V_inv_field(waves))).evaluate(points)
        rhs = _dirac_generator(waves, rhs_mass).evaluate(points)
        worst = max(worst, float(np.max(np.linalg.norm(lhs - rhs, axis=-1))))
        scale = max(scale, waves.scale())
    logger.debug(f"V intertwining identity: max difference {worst:.3e} over {trials} fields")
    return OperatorIdentityReport(max_difference=worst, scale=scale)


def tilde_conjugation_residual() -> float:
    """Largest distance between U^-1 gamma^mu U and the tilde gammas"""
    U, U_inv = build_U(), build_U_inv()
    standard = gamma_standard()
    return max(
        rl_distance(rl_chain(U_inv, standard[mu], U), gamma_tilde()[mu])
        for mu in range(4)
    )
