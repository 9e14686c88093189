import numpy as np
import pytest
from pydantic import ValidationError

from relwave.linalg_core import RealLinearOperator
from relwave.modes import WaveVector, dirac_spinors
from relwave.schema import SolutionKind
from relwave.solutions import (
    SF_PREFACTOR,
    EMField,
    ModeSpec,
    PlaneWaveSum,
    SolutionSpec,
    eval_dirac,
    eval_gen_maxwell,
    eval_gen_maxwell_helicity_form,
    eval_sf,
    format_spec,
    gradient_sources,
    lagrangian_density,
    levi_civita4,
    parse_spec,
    random_spec,
    dirac_residual,
    residual_dirac,
    residual_gen_maxwell,
    residual_sf,
    sample_points,
    tensor_E,
    to_plane_waves,
)


@pytest.fixture
def rng():
    return np.random.default_rng(5)


def test_empty_spec_is_zero():
    spec = SolutionSpec(mass=1.0, kind=SolutionKind.SF)
    assert np.array_equal(eval_sf(spec, 0.3, (1.0, 2.0, 3.0)), np.zeros(4))
    assert residual_sf(spec, [[0.0, 0.0, 0.0, 0.0]]) == 0.0


def test_rest_mode_phase():
    spec = SolutionSpec(mass=1.0, kind=SolutionKind.SF, modes=[ModeSpec(k=(0, 0, 0), branch=1)])
    expected = SF_PREFACTOR * np.exp(-1j * np.pi) * np.array([1, 0, 0, 0])
    assert np.allclose(eval_sf(spec, np.pi, (0.0, 0.0, 0.0)), expected)


def test_spec_validation():
    with pytest.raises(ValidationError):
        ModeSpec(k=(1.0, 0.0, 0.0), branch=5)
    with pytest.raises(ValidationError):
        ModeSpec(k=(1.0, 0.0, 0.0), branch=1, amplitude=complex(np.nan, 0))
    with pytest.raises(ValidationError):
        SolutionSpec(mass=1.0, kind=SolutionKind.GENMAXWELL)
    with pytest.raises(ValidationError):
        SolutionSpec(mass=0.0, kind=SolutionKind.DIRAC, modes=[ModeSpec(k=(0, 0, 0), branch=1)])
    with pytest.raises(ValidationError):
        SolutionSpec(mass=-1.0, kind=SolutionKind.SF)


def test_sf_residual(rng):
    for _ in range(5):
        spec = random_spec(rng, SolutionKind.SF, 10, mass=1.0)
        points = sample_points(rng, 20)
        assert residual_sf(spec, points) <= 1e-12 * to_plane_waves(spec).scale()


def test_detuned_sf_residual_is_detuning_times_amplitude():
    amplitude, detuning = 0.5 - 0.25j, 0.1
    spec = SolutionSpec(mass=1.0, kind=SolutionKind.SF, modes=[
        ModeSpec(k=(0.5, -1.0, 2.0), branch=2, amplitude=amplitude, detuning=detuning)
    ])
    expected = detuning * abs(amplitude) * SF_PREFACTOR
    assert residual_sf(spec, [[0.2, 0.1, 0.0, 0.3]]) == pytest.approx(expected, rel=1e-12)


def test_dirac_residual(rng):
    for mass in (0.0, 1.0):
        spec = random_spec(rng, SolutionKind.DIRAC, 10, mass=mass)
        points = sample_points(rng, 20)
        jet = to_plane_waves(spec).jet(points)
        assert residual_dirac(spec, points) <= 1e-12 * jet.scale()


def test_massless_dirac_single_mode():
    spec = SolutionSpec(mass=0.0, kind=SolutionKind.DIRAC, modes=[ModeSpec(k=(0, 0, 1), branch=1)])
    assert residual_dirac(spec, sample_points(np.random.default_rng(0), 10)) <= 1e-13


def test_generalized_maxwell_forms(rng):
    for _ in range(5):
        spec = random_spec(rng, SolutionKind.GENMAXWELL, 8)
        points = sample_points(rng, 20)
        scale = to_plane_waves(spec).jet(points).scale()
        report = residual_gen_maxwell(spec, points)
        assert report.max_residual <= 1e-11 * scale


def test_printed_signs_do_not_vanish(rng):
    modes = [ModeSpec(k=tuple(rng.uniform(-2, 2, size=3)), branch=branch, amplitude=0.5) for branch in (1, 2, 3, 4)]
    spec = SolutionSpec(kind=SolutionKind.GENMAXWELL, modes=modes)
    points = sample_points(rng, 10)
    scale = to_plane_waves(spec).jet(points).scale()
    report = residual_gen_maxwell(spec, points, printed_signs=True)
    assert min(report.covariant, report.tensor_scalar, report.helicity) > 1e-6 * scale
    assert residual_gen_maxwell(spec, points).max_residual <= 1e-11 * scale


def test_transverse_mode_has_no_scalars_or_sources():
    spec = SolutionSpec(kind=SolutionKind.GENMAXWELL, modes=[ModeSpec(k=(1.0, 2.0, -0.5), branch=1, amplitude=1 + 1j)])
    k = np.array(spec.modes[0].k)
    for t, x in ((0.0, (0, 0, 0)), (0.7, (0.3, -1.2, 2.0))):
        field = eval_gen_maxwell(spec, t, x)
        assert field.E @ k == pytest.approx(0.0, abs=1e-14)
        assert field.H @ k == pytest.approx(0.0, abs=1e-14)
        assert field.E0 == 0.0 and field.H0 == 0.0
        sources = gradient_sources(spec, t, x)
        assert np.allclose(sources.electric, 0) and np.allclose(sources.magnetic, 0)


def test_helicity_form_agrees(rng):
    spec = random_spec(rng, SolutionKind.GENMAXWELL, 8)
    for t, *x in sample_points(rng, 10):
        direct = eval_gen_maxwell(spec, t, x)
        expanded = eval_gen_maxwell_helicity_form(spec, t, x)
        assert np.allclose(direct.packed(), expanded.packed(), atol=1e-12)


def test_gradient_sources_match_finite_differences(rng):
    spec = SolutionSpec(kind=SolutionKind.GENMAXWELL, modes=[
        ModeSpec(k=(0.4, -0.3, 1.1), branch=3, amplitude=0.8 - 0.3j),
        ModeSpec(k=(-1.0, 0.2, 0.5), branch=4, amplitude=0.2 + 0.6j),
    ])
    point = np.array([0.3, 0.1, -0.4, 0.7])
    sources = gradient_sources(spec, point[0], point[1:])
    h = 1e-5
    for mu in range(4):
        step = np.zeros(4)
        step[mu] = h
        forward = eval_gen_maxwell(spec, (point + step)[0], (point + step)[1:])
        backward = eval_gen_maxwell(spec, (point - step)[0], (point - step)[1:])
        assert sources.electric[mu] == pytest.approx(-(forward.E0 - backward.E0) / (2 * h), abs=1e-7)
        assert sources.magnetic[mu] == pytest.approx(-(forward.H0 - backward.H0) / (2 * h), abs=1e-7)
    assert sources.rho_e == sources.electric[0]
    assert sources.rho_mag == sources.magnetic[0]


def test_em_field_packing(rng):
    packed = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    field = EMField.from_packed(packed)
    assert np.allclose(field.packed(), packed)
    assert np.allclose(field.H, -packed[:, :3].imag)
    with pytest.raises(ValueError):
        EMField.from_packed(np.zeros(3))


def test_tensor_pattern():
    tensor = tensor_E([1, 0, 0, 0])
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 1], expected[1, 0], expected[2, 3], expected[3, 2] = 1, -1, 1j, -1j
    assert np.array_equal(tensor, expected)
    assert not np.any(tensor_E(np.zeros(4)))


def test_levi_civita():
    eps = levi_civita4()
    assert eps[0, 1, 2, 3] == 1.0
    assert eps[1, 0, 2, 3] == -1.0
    assert eps[3, 2, 1, 0] == 1.0
    assert eps[0, 0, 2, 3] == 0.0


def test_lagrangian_density(rng):
    d1 = np.array([1, 0, 0, 0])
    assert lagrangian_density(d1, np.zeros((4, 4)), 1.0) == pytest.approx(-1.0)
    assert lagrangian_density(np.zeros(4), np.zeros((4, 4)), 1.0) == 0.0

    spec = random_spec(rng, SolutionKind.DIRAC, 1, mass=1.0)
    jet = to_plane_waves(spec).jet(sample_points(rng, 5))
    for p in range(5):
        density = lagrangian_density(jet.value[p], jet.grad[:, p, :], 1.0)
        assert abs(density) <= 1e-12 * jet.scale() ** 2


def test_superposition_stays_a_solution(rng):
    first = random_spec(rng, SolutionKind.DIRAC, 3, mass=1.0)
    second = random_spec(rng, SolutionKind.DIRAC, 3, mass=1.0)
    points = sample_points(rng, 10)
    both = first + second
    assert len(both.modes) == 6
    assert residual_dirac(both, points) <= residual_dirac(first, points) + residual_dirac(second, points) + 1e-15
    with pytest.raises(ValueError):
        first + random_spec(rng, SolutionKind.SF, 1, mass=1.0)


def test_plane_wave_sum_conjugation_flips_sign():
    waves = PlaneWaveSum([[1.0, 0.0, 0.0]], [-1.0], [2.0], [[1j, 0, 0, 0]])
    conjugated = waves.map_pointwise(RealLinearOperator.conjugation(4))
    points = [[0.3, 0.5, 0.0, 0.0]]
    assert np.allclose(conjugated.evaluate(points), waves.evaluate(points).conj())
    assert conjugated.sign[0] == 1.0


def test_spec_text_format(rng):
    spec = random_spec(rng, SolutionKind.DIRAC, 4, mass=1.5)
    spec = spec.with_modes([*spec.modes, ModeSpec(k=(1, 0, 0), branch=2, detuning=0.25)])
    assert parse_spec(format_spec(spec)) == spec
    with pytest.raises(ValueError):
        parse_spec("mass 1.0\n1 0 0 1 1 0\n")
    with pytest.raises(ValueError):
        parse_spec("kind SF\n1 0 0\n")


def test_sample_points_are_reproducible():
    first = sample_points(np.random.default_rng(42), 16)
    second = sample_points(np.random.default_rng(42), 16)
    assert first.shape == (16, 4)
    assert np.array_equal(first, second)
    assert np.all((first >= 0) & (first <= 1))
    with pytest.raises(ValueError):
        sample_points(np.random.default_rng(0), 0)


def test_point_evaluators_check_the_kind(rng):
    spec = random_spec(rng, SolutionKind.DIRAC, 3, mass=1.0)
    points = sample_points(rng, 3)
    t, *x = points[1]
    assert np.allclose(eval_dirac(spec, t, x), to_plane_waves(spec).evaluate(points)[1])
    with pytest.raises(ValueError):
        eval_sf(spec, t, x)
    with pytest.raises(ValueError):
        eval_gen_maxwell(spec, t, x)


def test_negative_energy_spinor_in_a_positive_frequency_mode(rng):
    wv = WaveVector((0.4, -1.2, 0.7), m=1.0)
    quad = dirac_spinors(wv)
    points = sample_points(rng, 10)
    right = PlaneWaveSum([wv.k], [-1.0], [wv.omega], [quad.vectors[0]], mass=1.0)
    swapped = PlaneWaveSum([wv.k], [-1.0], [wv.omega], [quad.vectors[2]], mass=1.0)
    assert dirac_residual(right.jet(points), 1.0) <= 1e-13
    # v3(-k) has energy -omega at k, so the residual is 2 omega |v3|
    assert dirac_residual(swapped.jet(points), 1.0) == pytest.approx(2 * wv.omega, rel=1e-10)
