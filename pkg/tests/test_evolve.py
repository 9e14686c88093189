import numpy as np
import pytest
from scipy.linalg import expm

from relwave.evolve import (
    FieldGrid,
    apply_V_grid,
    apply_V_inv_grid,
    commuting_diagram_check,
    dirac_propagator,
    dirac_symbol,
    dirac_time_derivative,
    evolve_dirac_grid,
    evolve_gen_maxwell_grid,
    evolve_grid,
    evolve_series,
    evolve_sf_grid,
    random_lattice_spec,
    read_dump,
    sample_spec_on_grid,
    sf_time_derivative,
    time_derivative_convergence,
    write_dump,
)
from relwave.schema import SolutionKind
from relwave.solutions import ModeSpec, SolutionSpec

BOX = 2 * np.pi


@pytest.fixture
def rng():
    return np.random.default_rng(17)


def lattice_grid(rng, kind, dims=1, n=64, mass=1.0, t=0.0):
    spec = random_lattice_spec(rng, kind, 5, mass, dims, BOX)
    return spec, sample_spec_on_grid(spec, dims, n, BOX, t)


def test_grid_validation():
    with pytest.raises(ValueError):
        FieldGrid(2, 8, BOX, np.zeros((4, 8, 8)))
    with pytest.raises(ValueError):
        FieldGrid(1, 6, BOX, np.zeros((4, 6)))
    with pytest.raises(ValueError):
        FieldGrid(1, 8, BOX, np.zeros((4, 16)))
    with pytest.raises(ValueError):
        FieldGrid(1, 8, 0.0, np.zeros((4, 8)))


def test_lattice_layout():
    grid = FieldGrid(3, 4, BOX, np.zeros((4, 4, 4, 4)))
    assert grid.positions().shape == (4, 4, 4, 3)
    assert grid.wavevectors().shape == (4, 4, 4, 3)
    assert np.allclose(grid.wavevectors()[1, 0, 0], (1.0, 0.0, 0.0))
    assert np.allclose(grid.positions()[0, 2, 0], (0.0, np.pi, 0.0))


@pytest.mark.parametrize("kind", [SolutionKind.SF, SolutionKind.DIRAC, SolutionKind.GENMAXWELL])
def test_evolution_matches_analytic_solution(rng, kind):
    spec, initial = lattice_grid(rng, kind)
    evolved = evolve_grid(initial, kind, spec.mass, 1.0)
    analytic = sample_spec_on_grid(spec, 1, 64, BOX, 1.0)
    scale = np.max(np.abs(initial.values))
    assert analytic.max_difference(evolved) <= 1e-10 * scale
    assert evolved.norm_squared() == pytest.approx(initial.norm_squared(), rel=1e-11)


def test_evolution_in_three_dimensions(rng):
    spec, initial = lattice_grid(rng, SolutionKind.DIRAC, dims=3, n=16)
    evolved = evolve_dirac_grid(initial, spec.mass, 0.5)
    analytic = sample_spec_on_grid(spec, 3, 16, BOX, 0.5)
    assert analytic.max_difference(evolved) <= 1e-10 * np.max(np.abs(initial.values))


def test_zero_time_is_identity(rng):
    spec, initial = lattice_grid(rng, SolutionKind.DIRAC)
    assert evolve_dirac_grid(initial, spec.mass, 0.0).max_difference(initial) <= 1e-15
    assert evolve_sf_grid(initial, spec.mass, 0.0).max_difference(initial) <= 1e-15


def test_sf_semigroup(rng):
    spec, initial = lattice_grid(rng, SolutionKind.SF)
    once = evolve_sf_grid(initial, spec.mass, 1.0)
    twice = evolve_sf_grid(evolve_sf_grid(initial, spec.mass, 0.5), spec.mass, 0.5)
    assert once.max_difference(twice) <= 1e-13


def test_massless_zero_mode_propagator():
    grid = FieldGrid(1, 8, BOX, np.zeros((4, 8)))
    propagator = dirac_propagator(grid, 0.0, 2.0)
    assert np.allclose(propagator[0], np.eye(4))


def test_dirac_needs_four_components():
    grid = FieldGrid(1, 8, BOX, np.zeros((2, 8)))
    with pytest.raises(ValueError):
        evolve_dirac_grid(grid, 1.0, 1.0)
    with pytest.raises(ValueError):
        evolve_gen_maxwell_grid(grid, 1.0)
    assert evolve_sf_grid(grid, 1.0, 1.0).components == 2


def test_time_derivative_converges_quadratically(rng):
    spec, initial = lattice_grid(rng, SolutionKind.DIRAC)
    report = time_derivative_convergence(
        initial,
        lambda grid, t: evolve_dirac_grid(grid, spec.mass, t),
        lambda grid: dirac_time_derivative(grid, spec.mass),
        t=1.0,
        h=0.05,
    )
    assert 3.5 <= report.ratio <= 4.5

    spec, initial = lattice_grid(rng, SolutionKind.SF)
    report = time_derivative_convergence(
        initial,
        lambda grid, t: evolve_sf_grid(grid, spec.mass, t),
        lambda grid: sf_time_derivative(grid, spec.mass),
        t=1.0,
        h=0.05,
    )
    assert 3.5 <= report.ratio <= 4.5


def test_V_on_the_grid(rng):
    _, initial = lattice_grid(rng, SolutionKind.SF)
    mapped = apply_V_grid(initial, 1.0)
    assert mapped.norm_squared() == pytest.approx(initial.norm_squared(), rel=1e-12)
    assert apply_V_inv_grid(mapped, 1.0).max_difference(initial) <= 1e-13
    with pytest.raises(ValueError):
        apply_V_grid(initial, 0.0)


def test_V_grid_matches_dirac_spec():
    modes = [ModeSpec(k=(2.0, 0.0, 0.0), branch=1, amplitude=0.7), ModeSpec(k=(-1.0, 0.0, 0.0), branch=3, amplitude=0.2j)]
    sf = SolutionSpec(mass=1.0, kind=SolutionKind.SF, modes=modes)
    dirac = SolutionSpec(mass=1.0, kind=SolutionKind.DIRAC, modes=modes)
    mapped = apply_V_grid(sample_spec_on_grid(sf, 1, 32, BOX), 1.0)
    assert mapped.max_difference(sample_spec_on_grid(dirac, 1, 32, BOX)) <= 1e-13


@pytest.mark.parametrize("kind, name", [(SolutionKind.SF, "v_diagram"), (SolutionKind.GENMAXWELL, "u_diagram")])
def test_commuting_diagrams(rng, kind, name):
    spec = random_lattice_spec(rng, kind, 5, 1.0, 1, BOX)
    report = commuting_diagram_check(spec, 1, 64, BOX, 1.0)
    assert report.name == name
    assert report.residual <= 1e-10
    with pytest.raises(ValueError):
        commuting_diagram_check(random_lattice_spec(rng, SolutionKind.DIRAC, 2, 1.0, 1, BOX), 1, 64, BOX, 1.0)


def test_evolve_series(rng):
    spec, initial = lattice_grid(rng, SolutionKind.SF)
    series = evolve_series(initial, lambda grid, t: evolve_sf_grid(grid, spec.mass, t), [0.0, 0.5, 1.0])
    assert [t for t, _ in series] == [0.0, 0.5, 1.0]
    assert series[0][1].max_difference(initial) <= 1e-15


def test_dump_format(tmp_path, rng):
    _, grid = lattice_grid(rng, SolutionKind.SF, n=1024)
    path = write_dump(tmp_path / "sf.bin", grid, 1.0)
    header = path.read_bytes().split(b"\n", 1)[0].decode()
    assert header.startswith("RELWAVE1 1 1024 ")
    assert header.split()[4:] == ["4", "1.0"]
    assert path.stat().st_size == len(header) + 1 + 4 * 1024 * 16

    restored, t = read_dump(path)
    assert t == 1.0
    assert np.array_equal(restored.values, grid.values)


def test_dump_is_x_fastest(tmp_path):
    values = np.zeros((1, 2, 2, 2), dtype=complex)
    values[0, 1, 0, 0] = 1.0
    values[0, 0, 1, 0] = 2.0
    path = write_dump(tmp_path / "order.bin", FieldGrid(3, 2, 1.0, values), 0.0)
    payload = np.frombuffer(path.read_bytes().split(b"\n", 1)[1], dtype="<c16")
    assert payload[1] == 1.0
    assert payload[2] == 2.0
    restored, _ = read_dump(path)
    assert np.array_equal(restored.values, values)


def test_read_dump_rejects_other_files(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOTADUMP 1 2 3 4 5\n")
    with pytest.raises(ValueError):
        read_dump(path)
    path.write_bytes(b"RELWAVE1 1 8 1.0 4 0.0\n" + b"\0" * 16)
    with pytest.raises(ValueError):
        read_dump(path)


def test_propagator_matches_matrix_exponential():
    grid = FieldGrid(3, 4, BOX, np.zeros((4, 4, 4, 4)))
    propagator = dirac_propagator(grid, 0.7, 1.3)
    symbol = dirac_symbol(grid, 0.7)
    for index in [(0, 0, 0), (1, 2, 3), (3, 1, 0)]:
        assert np.allclose(propagator[index], expm(-1.3j * symbol[index]), atol=1e-13)


@pytest.mark.parametrize("kind", [SolutionKind.SF, SolutionKind.DIRAC, SolutionKind.GENMAXWELL])
def test_zero_time_returns_the_same_values(rng, kind):
    spec, initial = lattice_grid(rng, kind)
    assert np.array_equal(evolve_grid(initial, kind, spec.mass, 0.0).values, initial.values)


@pytest.mark.parametrize("dims, mass, lattice_points", [(1, 1.0, 7), (1, 0.0, 6), (3, 0.0, 342)])
def test_lattice_modes_are_distinct(rng, dims, mass, lattice_points):
    spec = random_lattice_spec(rng, SolutionKind.DIRAC, lattice_points, mass, dims, BOX)
    ks = {mode.k for mode in spec.modes}
    assert len(ks) == lattice_points
    if mass == 0:
        assert (0.0, 0.0, 0.0) not in ks
    with pytest.raises(ValueError):
        random_lattice_spec(rng, SolutionKind.DIRAC, lattice_points + 1, mass, dims, BOX)


def test_u_diagram_sees_a_broken_maxwell_evolution(rng, monkeypatch):
    spec = random_lattice_spec(rng, SolutionKind.GENMAXWELL, 5, 0.0, 1, BOX)
    monkeypatch.setattr("relwave.evolve.evolve_gen_maxwell_grid", lambda grid, t: grid)
    assert commuting_diagram_check(spec, 1, 64, BOX, 1.0).residual > 1e-3
