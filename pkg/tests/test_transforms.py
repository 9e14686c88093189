import numpy as np
import pytest

from relwave.linalg_core import RealLinearOperator, rl_adjoint, rl_compose, rl_distance, rl_is_unitary
from relwave.schema import SolutionKind
from relwave.solutions import (
    EMField,
    ModeSpec,
    SolutionSpec,
    evaluate,
    random_spec,
    sample_points,
    to_plane_waves,
)
from relwave.transforms import (
    SALLHOFER_SWAPPED,
    MediumProfile,
    apply_V,
    apply_V_field,
    apply_V_inv,
    apply_V_inv_field,
    build_U,
    build_U_inv,
    check_identity_eq50,
    eight_spinorizations,
    map_dirac_to_maxwell,
    map_maxwell_to_dirac,
    match_to_pgi,
    medium_amplitude_equivalence,
    medium_permeabilities,
    medium_plane_wave,
    sallhofer_columns,
    sallhofer_residual,
    tilde_conjugation_residual,
)


@pytest.fixture
def rng():
    return np.random.default_rng(13)


def random_fields(rng, count=5, scalars=True):
    return [
        EMField(
            E=rng.normal(size=(3, 3)),
            H=rng.normal(size=(3, 3)),
            E0=rng.normal(size=3) if scalars else np.zeros(3),
            H0=rng.normal(size=3) if scalars else np.zeros(3),
        )
        for _ in range(count)
    ]


def transverse_spec(rng, count=4):
    spec = random_spec(rng, SolutionKind.GENMAXWELL, count)
    return spec.with_modes([mode.model_copy(update={"branch": 1 + i % 2}) for i, mode in enumerate(spec.modes)])


def test_U_is_unitary_and_inverse_is_adjoint():
    U, U_inv = build_U(), build_U_inv()
    assert rl_is_unitary(U, tol=1e-13)
    assert rl_distance(U_inv, rl_adjoint(U)) <= 1e-15
    assert rl_distance(rl_compose(U, U_inv), RealLinearOperator.identity(4)) <= 1e-15


def test_U_builds_the_first_spinorization(rng):
    field = random_fields(rng, 1)[0]
    assert np.allclose(build_U()(field.packed()), eight_spinorizations(field)[0])


def test_tilde_gammas_are_conjugated_standard_gammas():
    assert tilde_conjugation_residual() <= 1e-13


def test_maxwell_to_dirac(rng):
    for _ in range(5):
        spec = random_spec(rng, SolutionKind.GENMAXWELL, 6)
        mapped = map_maxwell_to_dirac(spec, sample_points(rng, 20))
        assert mapped.residual <= 1e-10 * mapped.jet.scale()
    with pytest.raises(ValueError):
        map_maxwell_to_dirac(random_spec(rng, SolutionKind.SF, 2), sample_points(rng, 2))


def test_dirac_to_maxwell(rng):
    for _ in range(5):
        jet = to_plane_waves(random_spec(rng, SolutionKind.DIRAC, 6, mass=0.0)).jet(sample_points(rng, 20))
        assert map_dirac_to_maxwell(jet).max_residual <= 1e-10 * jet.scale()


def test_massive_spinors_are_not_maxwell_fields(rng):
    jet = to_plane_waves(random_spec(rng, SolutionKind.DIRAC, 6, mass=1.0)).jet(sample_points(rng, 20))
    assert map_dirac_to_maxwell(jet).max_residual > 1e-6 * jet.scale()


def test_spinorizations_are_pgi_images(rng):
    matches = match_to_pgi(lambda f: eight_spinorizations(f)[0], eight_spinorizations, random_fields(rng))
    assert [m.column for m in matches] == list(range(1, 9))
    assert all(m.operator is not None for m in matches)
    assert matches[0].operator == "I" and matches[0].sign == 1.0
    assert max(m.residual for m in matches) <= 1e-12


def test_sallhofer_columns_are_pgi_images(rng):
    matches = match_to_pgi(
        lambda f: sallhofer_columns(f.E, f.H)[0],
        lambda f: sallhofer_columns(f.E, f.H),
        random_fields(rng, scalars=False),
    )
    operators = [m.operator for m in matches]
    assert None not in operators
    assert len(set(operators)) == 8
    assert operators[:4] == ["I", "i", "gamma4", "i_gamma4"]
    assert matches[6].sign == -1.0


def test_unmatched_columns_are_reported(rng):
    matches = match_to_pgi(
        lambda f: sallhofer_columns(f.E, f.H)[0],
        lambda f: eight_spinorizations(f),
        random_fields(rng),
    )
    assert any(m.operator is None for m in matches)


def test_sallhofer_columns_in_vacuum(rng):
    spec = transverse_spec(rng)
    points = sample_points(rng, 20)
    jet = to_plane_waves(spec).jet(points)
    report = sallhofer_residual(jet, (1.0, 1.0))
    assert report.max_residual <= 1e-10 * jet.scale()
    assert report.swapped == report.unswapped


def test_sallhofer_medium_needs_the_swap(rng):
    spec = transverse_spec(rng)
    points = sample_points(rng, 20)
    jet = medium_plane_wave(spec, 2.25, 1.44, points)
    report = sallhofer_residual(jet, (2.25, 1.44))
    assert report.max_residual <= 1e-10 * jet.scale()
    for column, swapped in enumerate(SALLHOFER_SWAPPED):
        wrong = report.unswapped[column] if swapped else report.swapped[column]
        assert wrong > 1e-6 * jet.scale()


def test_medium_plane_wave_rejections(rng):
    points = sample_points(rng, 2)
    spec = SolutionSpec(kind=SolutionKind.GENMAXWELL, modes=[ModeSpec(k=(0, 0, 1), branch=3)])
    with pytest.raises(ValueError):
        medium_plane_wave(spec, 2.0, 1.0, points)
    with pytest.raises(ValueError):
        medium_plane_wave(transverse_spec(rng), -1.0, 1.0, points)


def test_medium_permeabilities():
    profile = MediumProfile(Z=1.0, charge_e=1.0, m=1.0, omega_tilde=1.0)
    epsilon, mu = medium_permeabilities(profile, [[1.0, 0.0, 0.0]])
    # Phi = -1 at |x| = 1
    assert epsilon[0] == pytest.approx(3.0)
    assert mu[0] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        profile.potential([0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        MediumProfile(omega_tilde=0.0)


def test_medium_amplitude_equivalence(rng):
    profile = MediumProfile(Z=1.0, charge_e=1.0, m=1.0, omega_tilde=1.0)
    xs = rng.uniform(-1.0, 1.0, size=(100, 3))
    xs = xs[np.linalg.norm(xs, axis=1) >= 1e-3]
    ks = rng.uniform(-3.0, 3.0, size=xs.shape)
    scale = 2.0 + np.max(np.abs(profile.potential(xs)))
    assert medium_amplitude_equivalence(profile, xs, ks) <= 1e-14 * scale


def test_V_maps_sf_amplitudes_onto_dirac_amplitudes(rng):
    for _ in range(5):
        spec = random_spec(rng, SolutionKind.SF, 6, mass=1.0)
        points = sample_points(rng, 20)
        waves = to_plane_waves(spec)
        expected = evaluate(SolutionSpec(mass=1.0, kind=SolutionKind.DIRAC, modes=spec.modes), points)
        assert np.allclose(apply_V_field(waves).evaluate(points), expected, atol=1e-11 * waves.scale())
        image = apply_V(spec)
        assert image.kind == SolutionKind.DIRAC
        for mapped, original in zip(image.modes, spec.modes):
            assert mapped.branch == original.branch
            assert mapped.amplitude == pytest.approx(original.amplitude, abs=1e-12)


def test_V_roundtrip(rng):
    spec = random_spec(rng, SolutionKind.SF, 6, mass=1.0)
    points = sample_points(rng, 20)
    waves = to_plane_waves(spec)
    back = apply_V_inv_field(apply_V_field(waves))
    assert np.allclose(back.evaluate(points), waves.evaluate(points), atol=1e-13)
    restored = apply_V_inv(apply_V(spec))
    assert restored.kind == SolutionKind.SF
    for mapped, original in zip(restored.modes, spec.modes):
        assert mapped.amplitude == pytest.approx(original.amplitude, abs=1e-12)


def test_V_needs_mass(rng):
    spec = random_spec(rng, SolutionKind.SF, 2, mass=0.0)
    with pytest.raises(ValueError):
        apply_V(spec)
    with pytest.raises(ValueError):
        apply_V_field(to_plane_waves(spec))
    with pytest.raises(ValueError):
        apply_V(random_spec(rng, SolutionKind.DIRAC, 2, mass=1.0))


def test_intertwining_identity(rng):
    assert check_identity_eq50(rng, trials=50, m=1.0).relative <= 1e-11
    assert check_identity_eq50(rng, trials=10, m=1.0, rhs_mass=2.0).relative > 1e-3
