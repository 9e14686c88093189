"""
Spectral time evolution on periodic grids.

Fields live on an n-point (1D) or n^3-point (3D) lattice of edge L. Every
generator here is diagonal (or 4x4 block diagonal) in Fourier space, so the
propagator is applied exactly per mode and there is no time stepping.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from .algebra import alpha_matrices, beta_matrix, block_conjugation, gamma_standard
from .linalg_core import RealLinearOperator, rl_apply
from .schema import SolutionKind
from .solutions import ModeSpec, SolutionSpec, evaluate
from .transforms import build_U, build_U_inv

logger = logging.getLogger(__name__)

DUMP_MAGIC = "RELWAVE1"


@dataclass(frozen=True)
class FieldGrid:
    """
    Complex multi-component field on a periodic lattice.

    values has shape (components, n) in 1D and (components, n, n, n) in 3D,
    spatial axes ordered x, y, z.
    """
    dims: int
    n: int
    box: float
    values: np.ndarray

    def __post_init__(self):
        if self.dims not in (1, 3):
            raise ValueError(f"Grid must be 1D or 3D, got dims={self.dims}")
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError(f"Points per axis must be a power of two, got {self.n}")
        if not self.box > 0:
            raise ValueError(f"Box length must be positive, got {self.box}")
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != self.dims + 1 or values.shape[1:] != (self.n,) * self.dims:
            raise ValueError(f"Values of shape {values.shape} do not fit a {self.dims}D grid with n={self.n}")
        object.__setattr__(self, "values", values)

    @property
    def components(self) -> int:
        return self.values.shape[0]

    @property
    def spatial_axes(self) -> Tuple[int, ...]:
        return tuple(range(1, self.dims + 1))

    def with_values(self, values: np.ndarray) -> "FieldGrid":
        return FieldGrid(self.dims, self.n, self.box, values)

    def axis(self) -> np.ndarray:
        return np.arange(self.n) * (self.box / self.n)

    def positions(self) -> np.ndarray:
        """Lattice points as (..., 3) with unused coordinates zero"""
        axis = self.axis()
        if self.dims == 1:
            return np.stack([axis, np.zeros_like(axis), np.zeros_like(axis)], axis=-1)
        return np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)

    def wavevectors(self) -> np.ndarray:
        """FFT lattice 2 pi j / L as (..., 3), matching the spatial shape"""
        k_axis = 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.box / self.n)
        if self.dims == 1:
            return np.stack([k_axis, np.zeros_like(k_axis), np.zeros_like(k_axis)], axis=-1)
        return np.stack(np.meshgrid(k_axis, k_axis, k_axis, indexing="ij"), axis=-1)

    def spectrum(self) -> np.ndarray:
        return np.fft.fftn(self.values, axes=self.spatial_axes)

    def from_spectrum(self, spectrum: np.ndarray) -> "FieldGrid":
        return self.with_values(np.fft.ifftn(spectrum, axes=self.spatial_axes))

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def max_difference(self, other: "FieldGrid") -> float:
        return float(np.max(np.abs(self.values - other.values), initial=0.0))


def _omega(grid: FieldGrid, m: float) -> np.ndarray:
    k = grid.wavevectors()
    return np.sqrt(np.sum(k * k, axis=-1) + m * m)


def _apply_symbol(grid: FieldGrid, symbol: np.ndarray) -> FieldGrid:
    """Multiply each Fourier mode by its (4, 4) matrix; symbol has shape (..., 4, 4)"""
    spectrum = grid.spectrum()
    return grid.from_spectrum(np.einsum("...ab,b...->a...", symbol, spectrum))


def _pointwise(grid: FieldGrid, op: RealLinearOperator) -> FieldGrid:
    return grid.with_values(rl_apply(op, grid.values, axis=0))


def dirac_symbol(grid: FieldGrid, m: float) -> np.ndarray:
    """H(k) = alpha.k + beta m on the lattice, shape (..., 4, 4)"""
    k = grid.wavevectors()
    return np.einsum("...l,lab->...ab", k, np.stack(alpha_matrices())) + m * beta_matrix()


def evolve_sf_grid(grid: FieldGrid, m: float, t: float) -> FieldGrid:
    """exp(-i omega-hat t), any number of components"""
    phase = np.exp(-1j * _omega(grid, m) * t)
    return grid.from_spectrum(grid.spectrum() * phase[None])


def dirac_propagator(grid: FieldGrid, m: float, t: float) -> np.ndarray:
    """cos(omega t) I - i sin(omega t)/omega H(k); the omega = 0 mode uses sin(omega t)/omega -> t"""
    omega = _omega(grid, m)
    # np.sinc(x) = sin(pi x)/(pi x)
    sin_over_omega = t * np.sinc(omega * t / np.pi)
    identity = np.eye(4)
    return (np.cos(omega * t)[..., None, None] * identity
            - 1j * sin_over_omega[..., None, None] * dirac_symbol(grid, m))


def evolve_dirac_grid(grid: FieldGrid, m: float, t: float) -> FieldGrid:
    if grid.components != 4:
        raise ValueError(f"Dirac evolution needs 4 components, got {grid.components}")
    return _apply_symbol(grid, dirac_propagator(grid, m, t))


def evolve_gen_maxwell_grid(grid: FieldGrid, t: float) -> FieldGrid:
    """U to spinors, massless Dirac evolution, U^-1 back to the packed field"""
    if grid.components != 4:
        raise ValueError(f"Generalized Maxwell evolution needs 4 components, got {grid.components}")
    spinors = _pointwise(grid, build_U())
    return _pointwise(evolve_dirac_grid(spinors, 0.0, t), build_U_inv())


def evolve_grid(grid: FieldGrid, kind: SolutionKind, m: float, t: float) -> FieldGrid:
    """Evolve lattice data of the given kind to time t; GENMAXWELL ignores m, t = 0 is the identity"""
    if t == 0:
        return grid
    if kind == SolutionKind.SF:
        return evolve_sf_grid(grid, m, t)
    if kind == SolutionKind.DIRAC:
        return evolve_dirac_grid(grid, m, t)
    return evolve_gen_maxwell_grid(grid, t)


def _fw_grid_symbol(grid: FieldGrid, m: float, direction: float) -> np.ndarray:
    """N(-direction gamma.k + omega + m); grid modes carry e^{+ik.x}"""
    if not m > 0:
        raise ValueError(f"The extended FW operator needs m > 0, got {m}")
    k = grid.wavevectors()
    omega = _omega(grid, m)
    gamma_k = np.einsum("...l,lab->...ab", k, np.stack(gamma_standard().matrices[1:]))
    norm = 1.0 / np.sqrt(2.0 * omega * (omega + m))
    return norm[..., None, None] * (-direction * gamma_k + (omega + m)[..., None, None] * np.eye(4))


def apply_V_grid(grid: FieldGrid, m: float) -> FieldGrid:
    """V on lattice data: diag(1, 1, C, C) pointwise, then the Fourier symbol"""
    return _apply_symbol(_pointwise(grid, block_conjugation()), _fw_grid_symbol(grid, m, 1.0))


def apply_V_inv_grid(grid: FieldGrid, m: float) -> FieldGrid:
    return _pointwise(_apply_symbol(grid, _fw_grid_symbol(grid, m, -1.0)), block_conjugation())


def sample_spec_on_grid(spec: SolutionSpec, dims: int, n: int, box: float, t: float = 0.0) -> FieldGrid:
    """Evaluate a spec at every lattice point at time t"""
    empty = FieldGrid(dims, n, box, np.zeros((4, *(n,) * dims)))
    positions = empty.positions().reshape(-1, 3)
    points = np.column_stack([np.full(len(positions), t), positions])
    values = evaluate(spec, points).T.reshape(4, *(n,) * dims)
    return empty.with_values(values)


def random_lattice_spec(
    rng: np.random.Generator,
    kind: SolutionKind,
    count: int,
    mass: float,
    dims: int,
    box: float,
    max_index: int = 3,
) -> SolutionSpec:
    """
    Random distinct modes on the FFT lattice, kept clear of the Nyquist row.

    Raises:
        ValueError: More modes requested than lattice points within max_index
    """
    if kind == SolutionKind.GENMAXWELL:
        mass = 0.0
    axis = np.arange(-max_index, max_index + 1)
    if dims == 1:
        lattice = np.outer(axis, (1, 0, 0))
    else:
        lattice = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    if mass == 0:
        # massless modes need k != 0
        lattice = lattice[np.any(lattice, axis=1)]
    if count > len(lattice):
        raise ValueError(f"Cannot draw {count} distinct modes from {len(lattice)} lattice points")
    modes = []
    for index in lattice[rng.choice(len(lattice), size=count, replace=False)]:
        amplitude = complex(*rng.normal(size=2)) / np.sqrt(2.0 * count)
        modes.append(ModeSpec(k=tuple(2.0 * np.pi / box * index), branch=int(rng.integers(1, 5)), amplitude=amplitude))
    return SolutionSpec(mass=mass, kind=kind, modes=modes)


@dataclass(frozen=True)
class DiagramReport:
    name: str
    residual: float


def commuting_diagram_check(spec: SolutionSpec, dims: int, n: int, box: float, t: float) -> DiagramReport:
    """
    SF specs: compare V(evolve_sf(f, t)) with evolve_dirac(V f, t).
    GENMAXWELL specs: compare U(evolve_gen_maxwell(calE, t)) with
    evolve_dirac(U calE, m=0, t), and also U calE(t) with calE(t) evaluated
    analytically; the larger residual is reported.
    Residuals are max-abs differences relative to the largest initial value.
    """
    initial = sample_spec_on_grid(spec, dims, n, box, 0.0)
    scale = float(np.max(np.abs(initial.values), initial=0.0)) or 1.0
    if spec.kind == SolutionKind.SF:
        rhs = evolve_dirac_grid(apply_V_grid(initial, spec.mass), spec.mass, t)
        legs = [apply_V_grid(evolve_sf_grid(initial, spec.mass, t), spec.mass)]
        name = "v_diagram"
    elif spec.kind == SolutionKind.GENMAXWELL:
        U = build_U()
        rhs = evolve_dirac_grid(_pointwise(initial, U), 0.0, t)
        legs = [
            _pointwise(evolve_gen_maxwell_grid(initial, t), U),
            _pointwise(sample_spec_on_grid(spec, dims, n, box, t), U),
        ]
        name = "u_diagram"
    else:
        raise ValueError(f"No commuting diagram starts from {spec.kind.value} data")
    residual = max(leg.max_difference(rhs) for leg in legs) / scale
    logger.debug(f"{name}: residual {residual:.3e} at t={t}")
    return DiagramReport(name=name, residual=residual)


@dataclass(frozen=True)
class ConvergenceReport:
    coarse_error: float
    fine_error: float

    @property
    def ratio(self) -> float:
        return self.coarse_error / self.fine_error if self.fine_error > 0 else np.inf


def time_derivative_convergence(
    grid: FieldGrid,
    evolve_fn: Callable[[FieldGrid, float], FieldGrid],
    generator_fn: Callable[[FieldGrid], FieldGrid],
    t: float,
    h: float,
) -> ConvergenceReport:
    """
    Central differences (f(t+h) - f(t-h))/2h against the spectral time
    derivative generator_fn(f(t)), at steps h and h/2.
    """
    exact = generator_fn(evolve_fn(grid, t)).values

    def error(step: float) -> float:
        forward = evolve_fn(grid, t + step).values
        backward = evolve_fn(grid, t - step).values
        return float(np.max(np.abs((forward - backward) / (2.0 * step) - exact)))

    return ConvergenceReport(coarse_error=error(h), fine_error=error(h / 2.0))


def sf_time_derivative(grid: FieldGrid, m: float) -> FieldGrid:
    """-i omega-hat f"""
    return grid.from_spectrum(-1j * _omega(grid, m)[None] * grid.spectrum())


def dirac_time_derivative(grid: FieldGrid, m: float) -> FieldGrid:
    """-i H psi"""
    return _apply_symbol(grid, -1j * dirac_symbol(grid, m))


def evolve_series(
    grid: FieldGrid,
    evolve_fn: Callable[[FieldGrid, float], FieldGrid],
    times: Sequence[float],
) -> List[Tuple[float, FieldGrid]]:
    """Snapshots of an evolution at the given times"""
    return [(float(t), evolve_fn(grid, t)) for t in times]


def write_dump(path: Union[str, Path], grid: FieldGrid, t: float) -> Path:
    """
    Header `RELWAVE1 dims n L components t`, newline, then little-endian
    float64 (re, im) pairs, component-major with x varying fastest.
    """
    path = Path(path)
    header = f"{DUMP_MAGIC} {grid.dims} {grid.n} {grid.box!r} {grid.components} {float(t)!r}\n"
    # (c, x, y, z) -> (c, z, y, x) so that x is the fastest index
    ordered = np.transpose(grid.values, (0, *reversed(grid.spatial_axes)))
    with open(path, "wb") as f:
        f.write(header.encode("ascii"))
        f.write(np.ascontiguousarray(ordered).astype("<c16").tobytes())
    return path


def read_dump(path: Union[str, Path]) -> Tuple[FieldGrid, float]:
    with open(path, "rb") as f:
        header = f.readline().decode("ascii").split()
        payload = f.read()
    if len(header) != 6 or header[0] != DUMP_MAGIC:
        raise ValueError(f"{path} is not a {DUMP_MAGIC} dump")
    dims, n, components = int(header[1]), int(header[2]), int(header[4])
    box, t = float(header[3]), float(header[5])
    data = np.frombuffer(payload, dtype="<c16")
    expected = components * n ** dims
    if data.size != expected:
        raise ValueError(f"{path}: expected {expected} values, found {data.size}")
    ordered = data.reshape(components, *(n,) * dims)
    values = np.transpose(ordered, (0, *reversed(range(1, dims + 1))))
    return FieldGrid(dims, n, box, values.astype(np.complex128)), t
