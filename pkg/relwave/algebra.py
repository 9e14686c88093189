"""
Matrix representations used throughout: Pauli matrices, the standard and the
tilde gamma sets, the spin-1 generators, the particle-antiparticle doublet
spin operators and the eight Pauli-Gursey-Ibragimov (PGI) symmetry operators.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .linalg_core import (
    RealLinearOperator,
    as_complex_matrix,
    block_diag,
    frobenius,
    rl_adjoint,
    rl_compose,
    rl_distance,
)

logger = logging.getLogger(__name__)

METRIC = (1.0, -1.0, -1.0, -1.0)
HERMITICITY_PATTERN = (1, -1, -1, -1)

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)


def pauli_matrices() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """sigma^1, sigma^2, sigma^3 in the standard representation"""
    return (
        as_complex_matrix([[0, 1], [1, 0]]),
        as_complex_matrix([[0, -1j], [1j, 0]]),
        as_complex_matrix([[1, 0], [0, -1]]),
    )


@dataclass(frozen=True)
class GammaSet:
    """
    Four gamma operators with the metric diag(1, -1, -1, -1).

    Operators are stored as RealLinearOperators so the antilinear tilde set
    lives in the same type as the ordinary matrix representations.
    """
    gammas: Tuple[RealLinearOperator, ...]
    metric: Tuple[float, ...] = METRIC

    def __post_init__(self):
        if len(self.gammas) != 4:
            raise ValueError(f"A gamma set needs four operators, got {len(self.gammas)}")
        dims = {g.dim for g in self.gammas}
        if len(dims) != 1:
            raise ValueError(f"Gamma operators have different dimensions: {sorted(dims)}")
        if tuple(self.metric) != METRIC:
            raise ValueError(f"Metric must be diag{METRIC}, got {self.metric}")

    @classmethod
    def from_matrices(cls, matrices: Sequence) -> "GammaSet":
        return cls(tuple(RealLinearOperator.linear(m) for m in matrices))

    @property
    def dim(self) -> int:
        return self.gammas[0].dim

    @property
    def matrices(self) -> Tuple[np.ndarray, ...]:
        if not all(g.is_linear for g in self.gammas):
            raise ValueError("Gamma set contains antilinear operators and has no plain matrix form")
        return tuple(g.A for g in self.gammas)

    def __getitem__(self, mu: int) -> RealLinearOperator:
        return self.gammas[mu]


def gamma_standard() -> GammaSet:
    """Pauli-Dirac representation: gamma^0 = diag(I, -I), gamma^l = [[0, sigma^l], [-sigma^l, 0]]"""
    zero = np.zeros((2, 2))
    gamma0 = block_diag(I2, -I2)
    spatial = [np.block([[zero, s], [-s, zero]]) for s in pauli_matrices()]
    return GammaSet.from_matrices([gamma0, *spatial])


def gamma4() -> np.ndarray:
    """Chirality matrix i gamma^0 gamma^1 gamma^2 gamma^3"""
    g0, g1, g2, g3 = gamma_standard().matrices
    return as_complex_matrix(1j * g0 @ g1 @ g2 @ g3)


def alpha_matrices() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """alpha^l = gamma^0 gamma^l"""
    g0, *spatial = gamma_standard().matrices
    return tuple(as_complex_matrix(g0 @ g) for g in spatial)


def beta_matrix() -> np.ndarray:
    return gamma_standard().matrices[0]


def gamma_tilde() -> GammaSet:
    """The antilinear gamma set acting on the complex field strength (each entry is M C)"""
    return GammaSet((
        RealLinearOperator.antilinear(np.diag([1, 1, 1, -1])),
        RealLinearOperator.antilinear([[0, 0, 0, 1], [0, 0, -1j, 0], [0, 1j, 0, 0], [-1, 0, 0, 0]]),
        RealLinearOperator.antilinear([[0, 0, 1j, 0], [0, 0, 0, 1], [-1j, 0, 0, 0], [0, -1, 0, 0]]),
        RealLinearOperator.antilinear([[0, -1j, 0, 0], [1j, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
    ))


@dataclass(frozen=True)
class CliffordReport:
    anticommutation: float
    hermiticity: float

    @property
    def max_residual(self) -> float:
        return max(self.anticommutation, self.hermiticity)


def verify_gamma_set(gs: GammaSet, hermiticity_pattern: Sequence[int] = HERMITICITY_PATTERN) -> CliffordReport:
    """
    Measure how far a gamma set is from the Clifford-Dirac relations and the
    expected hermiticity pattern. Violations are reported, never raised.
    """
    identity = RealLinearOperator.identity(gs.dim)
    anticommutation = 0.0
    for mu in range(4):
        for nu in range(mu, 4):
            product = rl_compose(gs[nu], gs[mu]) + rl_compose(gs[mu], gs[nu])
            target = identity.scaled(2.0 * gs.metric[mu]) if mu == nu else identity.scaled(0.0)
            anticommutation = max(anticommutation, rl_distance(product, target))

    hermiticity = 0.0
    for gamma, sign in zip(gs.gammas, hermiticity_pattern):
        hermiticity = max(hermiticity, rl_distance(rl_adjoint(gamma), gamma.scaled(sign)))

    logger.debug(f"Clifford residuals: anticommutation {anticommutation:.3e}, hermiticity {hermiticity:.3e}")
    return CliffordReport(anticommutation=anticommutation, hermiticity=hermiticity)


def slash(p: Sequence[float], gs: Optional[GammaSet] = None) -> np.ndarray:
    """gamma^nu p_nu for a covariant 4-vector p"""
    matrices = (gs or gamma_standard()).matrices
    return sum(pv * g for pv, g in zip(p, matrices))


def kg_factorization_residual(p: Sequence[float], m: float) -> float:
    """
    Residual of the Klein-Gordon factorization on its Fourier symbol:
    || (gamma.p + m)(gamma.p - m) - (p.p - m^2) I ||_F
    """
    if m < 0:
        raise ValueError(f"Mass must be non-negative, got {m}")
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"Expected a 4-vector, got shape {p.shape}")
    p_slash = slash(p)
    p_squared = float(np.dot(np.asarray(METRIC) * p, p))
    lhs = (p_slash + m * I4) @ (p_slash - m * I4)
    return frobenius(lhs - (p_squared - m * m) * I4)


def spin1_generators() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Generators of the D(1) representation of SU(2), (S^j)_ab = -i epsilon_jab"""
    return (
        as_complex_matrix([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
        as_complex_matrix([[0, 0, 1j], [0, 0, 0], [-1j, 0, 0]]),
        as_complex_matrix([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    )


def block_conjugation() -> RealLinearOperator:
    """v = diag(1, 1, C, C)"""
    return RealLinearOperator(np.diag([1, 1, 0, 0]), np.diag([0, 0, 1, 1]))


@dataclass(frozen=True)
class DoubletSpinSet:
    """Charge sign, spin and FW spin of the particle-antiparticle doublet"""
    g: np.ndarray
    s: Tuple[RealLinearOperator, ...]
    s_fw: Tuple[np.ndarray, ...]
    v: RealLinearOperator
    charge_e: float = 1.0

    @property
    def charge_operator(self) -> np.ndarray:
        return self.charge_e * self.g


def doublet_spin_set(charge_e: float = 1.0) -> DoubletSpinSet:
    zero = np.zeros((2, 2))
    lower_conj = RealLinearOperator.antilinear(np.diag([0, 0, 1, 1]))
    spins = []
    for sigma in pauli_matrices():
        upper = RealLinearOperator.linear(block_diag(sigma, zero))
        lower = RealLinearOperator.linear(block_diag(zero, sigma))
        # lower block is -C sigma C
        sandwich = rl_compose(rl_compose(lower_conj, lower), lower_conj)
        spins.append((upper - sandwich).scaled(0.5))
    s_fw = tuple(as_complex_matrix(0.5 * block_diag(sigma, sigma)) for sigma in pauli_matrices())
    return DoubletSpinSet(
        g=as_complex_matrix(-beta_matrix()),
        s=tuple(spins),
        s_fw=s_fw,
        v=block_conjugation(),
        charge_e=charge_e,
    )


PGI_NAMES = (
    "gamma2_C",
    "i_gamma2_C",
    "gamma2_gamma4_C",
    "i_gamma2_gamma4_C",
    "gamma4",
    "i_gamma4",
    "i",
    "I",
)


def pgi_operators(gs: GammaSet, chirality: Optional[np.ndarray] = None) -> Dict[str, RealLinearOperator]:
    """
    The eight PGI operators, keyed by name in the order
    {gamma2 C, i gamma2 C, gamma2 gamma4 C, i gamma2 gamma4 C, gamma4, i gamma4, i, I}.

    Args:
        gs: A 4x4 linear gamma set
        chirality: Matrix used as gamma^4; defaults to gamma4()
    """
    if gs.dim != 4:
        raise ValueError(f"PGI operators need a 4x4 gamma set, got dimension {gs.dim}")
    g2 = gs.matrices[2]
    g4 = gamma4() if chirality is None else as_complex_matrix(chirality)
    operators = (
        RealLinearOperator.antilinear(g2),
        RealLinearOperator.antilinear(1j * g2),
        RealLinearOperator.antilinear(g2 @ g4),
        RealLinearOperator.antilinear(1j * g2 @ g4),
        RealLinearOperator.linear(g4),
        RealLinearOperator.linear(1j * g4),
        RealLinearOperator.linear(1j * I4),
        RealLinearOperator.identity(4),
    )
    return dict(zip(PGI_NAMES, operators))


@dataclass(frozen=True)
class InvarianceReport:
    residuals: Dict[str, float] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def failing(self, tol: float):
        return [name for name, value in self.residuals.items() if value > tol]


def pgi_invariance_check(
    ops: Dict[str, RealLinearOperator],
    trials: int,
    rng: np.random.Generator,
    modes_per_solution: int = 5,
    samples: int = 20,
) -> InvarianceReport:
    """
    Apply each operator pointwise to random massless plane-wave Dirac
    solutions and measure the massless Dirac residual of the result,
    relative to the field scale.
    """
    # solutions builds on this module
    from .solutions import SolutionKind, massless_dirac_residual, random_spec, sample_points, to_plane_waves

    residuals = {name: 0.0 for name in ops}
    for _ in range(trials):
        spec = random_spec(rng, SolutionKind.DIRAC, modes_per_solution, mass=0.0)
        points = sample_points(rng, samples)
        jet = to_plane_waves(spec).jet(points)
        for name, op in ops.items():
            mapped = jet.map_components(op)
            residuals[name] = max(residuals[name], massless_dirac_residual(mapped) / jet.scale())
    logger.debug(f"PGI invariance residuals: {residuals}")
    return InvarianceReport(residuals=residuals)
