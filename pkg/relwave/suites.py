"""
Verification suites. Each suite draws every random quantity from one
generator seeded with the configured seed, so a (suite, seed, config) triple
always reproduces the same residuals.
"""
import logging
from typing import Callable, Dict, List, Union

import numpy as np

from .algebra import (
    doublet_spin_set,
    gamma4,
    gamma_standard,
    gamma_tilde,
    kg_factorization_residual,
    pauli_matrices,
    pgi_invariance_check,
    pgi_operators,
    spin1_generators,
    verify_gamma_set,
)
from .evolve import (
    FieldGrid,
    commuting_diagram_check,
    dirac_time_derivative,
    evolve_dirac_grid,
    evolve_grid,
    random_lattice_spec,
    sample_spec_on_grid,
    time_derivative_convergence,
)
from .linalg_core import RealLinearOperator, commutator, rl_adjoint, rl_chain, rl_compose, rl_distance
from .modes import (
    WaveVector,
    cartesian_orts,
    dirac_hamiltonian,
    dirac_spinors,
    helicity_basis,
    helicity_operator,
    helicity_vectors,
)
from .schema import CheckResult, RunConfig, SolutionKind, SuiteName, SuiteReport
from .solutions import (
    EMField,
    PlaneWaveSum,
    SolutionSpec,
    eval_gen_maxwell,
    eval_gen_maxwell_helicity_form,
    evaluate,
    gradient_sources,
    lagrangian_density,
    random_spec,
    residual_dirac,
    residual_gen_maxwell,
    residual_sf,
    sample_points,
    to_plane_waves,
)
from .transforms import (
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
    medium_plane_wave,
    sallhofer_columns,
    sallhofer_residual,
    tilde_conjugation_residual,
)

logger = logging.getLogger(__name__)

# negative controls must land clearly above rounding
CONTROL_THRESHOLD = 1e-6
DETUNING = 0.1
AXIS_LIMIT_STEP = 1e-6
AXIS_LIMIT_TOL = 1e-5
FD_SOURCE_STEP = 1e-5
FD_SOURCE_TOL = 1e-6
FD_TIME_STEP = 0.05
FD_RATIO_TOL = 0.5
EIGEN_SAMPLES = 100
KG_SAMPLES = 1000
MEDIUM_SAMPLES = 100
MEDIUM_MIN_RADIUS = 1e-3
EQ50_TRIALS = 50
MEDIUM_EPSILON = 2.25
MEDIUM_MU = 1.44

NO_MASS_REASON = "the extended FW operator needs mass > 0"


def _relative(value: float, scale: float) -> float:
    return float(value) / scale if scale > 0 else float(value)


def _random_fields(rng: np.random.Generator, count: int, points: int = 4, scalars: bool = True) -> List[EMField]:
    fields = []
    for _ in range(count):
        E0 = rng.normal(size=points) if scalars else np.zeros(points)
        H0 = rng.normal(size=points) if scalars else np.zeros(points)
        fields.append(EMField(E=rng.normal(size=(points, 3)), H=rng.normal(size=(points, 3)), E0=E0, H0=H0))
    return fields


def _with_branches(spec: SolutionSpec, branches) -> SolutionSpec:
    """Reassign branches cyclically so a spec is sure to contain each of them"""
    modes = [mode.model_copy(update={"branch": branches[i % len(branches)]}) for i, mode in enumerate(spec.modes)]
    return spec.with_modes(modes)


def _detuned(spec: SolutionSpec) -> SolutionSpec:
    return spec.with_modes([mode.model_copy(update={"detuning": DETUNING}) for mode in spec.modes])


def algebra_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_algebra
    checks = [
        CheckResult.measured("clifford_standard", verify_gamma_set(gamma_standard()).max_residual, tol),
        CheckResult.measured("clifford_tilde", verify_gamma_set(gamma_tilde()).max_residual, tol),
        CheckResult.measured("tilde_conjugation", tilde_conjugation_residual(), tol),
    ]

    kg = 0.0
    for _ in range(KG_SAMPLES):
        p = rng.normal(scale=3.0, size=4)
        m = rng.uniform(0.0, 3.0)
        kg = max(kg, _relative(kg_factorization_residual(p, m), 1.0 + p @ p + m * m))
    checks.append(CheckResult.measured("kg_factorization", kg, tol))

    sigmas = pauli_matrices()
    spins = spin1_generators()
    eye2, eye3 = np.eye(2), np.eye(3)
    pauli, lie = 0.0, 0.0
    for a in range(3):
        for b in range(3):
            c = 3 - a - b
            eps = 0.0 if a == b else (1.0 if (a, b) in ((0, 1), (1, 2), (2, 0)) else -1.0)
            expected = (eye2 if a == b else eps * 1j * sigmas[c])
            pauli = max(pauli, float(np.linalg.norm(sigmas[a] @ sigmas[b] - expected)))
            expected = 0.0 if a == b else eps * 1j * spins[c]
            lie = max(lie, float(np.linalg.norm(commutator(spins[a], spins[b]) - expected)))
    casimir = float(np.linalg.norm(sum(s @ s for s in spins) - 2.0 * eye3))
    checks += [
        CheckResult.measured("pauli_products", pauli, tol),
        CheckResult.measured("spin1_commutators", lie, tol),
        CheckResult.measured("spin1_casimir", casimir, tol),
    ]

    g4 = gamma4()
    gamma4_residual = max(
        float(np.linalg.norm(g4 @ g4 - np.eye(4))),
        float(np.linalg.norm(g4.conj().T - g4)),
        *(float(np.linalg.norm(g4 @ g + g @ g4)) for g in gamma_standard().matrices),
    )
    checks.append(CheckResult.measured("gamma4_properties", gamma4_residual, tol))

    doublet = doublet_spin_set(config.charge_e)
    orts = cartesian_orts()
    s3 = RealLinearOperator.linear(0.5 * np.diag([1, -1, -1, 1]))
    charge = max(
        float(np.linalg.norm(doublet.g @ orts[1] + orts[1])),
        float(np.linalg.norm(doublet.g @ orts[3] - orts[3])),
        float(np.linalg.norm(doublet.charge_operator @ orts[1] + config.charge_e * orts[1])),
    )
    checks.append(CheckResult.measured("doublet_eigen", max(charge, rl_distance(doublet.s[2], s3)), tol))

    anti_hermitian = max(
        rl_distance(rl_chain(doublet.v, RealLinearOperator.linear(1j * s_fw), doublet.v), s.scaled(1j))
        for s, s_fw in zip(doublet.s, doublet.s_fw)
    )
    hermitian = min(
        rl_distance(rl_chain(doublet.v, RealLinearOperator.linear(s_fw), doublet.v), s)
        for s, s_fw in zip(doublet.s, doublet.s_fw)
    )
    checks += [
        CheckResult.measured("doublet_fw_link", anti_hermitian, tol),
        CheckResult.expected_failure("doublet_fw_link_hermitian", hermitian, CONTROL_THRESHOLD),
    ]

    trials = config.trials_count
    invariance = pgi_invariance_check(
        pgi_operators(gamma_standard()), trials, rng, config.modes_count, config.samples_count
    )
    control = pgi_invariance_check(
        pgi_operators(gamma_standard(), chirality=gamma_standard().matrices[0]),
        trials, rng, config.modes_count, config.samples_count,
    )
    logger.debug(f"gamma0 in place of gamma4 breaks: {control.failing(CONTROL_THRESHOLD)}")
    checks += [
        CheckResult.measured("pgi_invariance", invariance.max_residual, config.tol_transforms),
        CheckResult.expected_failure("pgi_gamma0_control", control.max_residual, CONTROL_THRESHOLD),
    ]
    return checks


def modes_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_algebra
    eigen, completeness, spinor_gram, spinor_completeness, energy = 0.0, 0.0, 0.0, 0.0, 0.0
    for _ in range(EIGEN_SAMPLES):
        k = rng.uniform(-3.0, 3.0, size=3)
        helicity = helicity_operator(k)
        e1, e2, e3 = helicity_vectors(k)
        eigen = max(eigen, *(
            float(np.linalg.norm(helicity @ e - value * e)) for e, value in ((e1, -1.0), (e2, 1.0), (e3, 0.0))
        ))
        completeness = max(completeness, float(np.max(np.abs(helicity_basis(WaveVector(k)).completeness() - np.eye(4)))))

        wv = WaveVector(k, config.mass)
        quad = dirac_spinors(wv)
        spinor_gram = max(spinor_gram, float(np.max(np.abs(quad.vectors.conj() @ quad.vectors.T - np.eye(4)))))
        spinor_completeness = max(spinor_completeness, float(np.max(np.abs(quad.completeness() - np.eye(4)))))
        hamiltonian = dirac_hamiltonian(wv.k, wv.m)
        for v, sign in zip(quad.vectors, (1.0, 1.0, -1.0, -1.0)):
            energy = max(energy, _relative(np.linalg.norm(hamiltonian @ v - sign * wv.omega * v), wv.omega))

    axis_limit = 0.0
    for k3 in (1.0, -1.0):
        exact = helicity_vectors((0.0, 0.0, k3))
        nearby = helicity_vectors((AXIS_LIMIT_STEP, 0.0, k3))
        axis_limit = max(axis_limit, float(np.max(np.abs(exact - nearby))))

    # p e^{-ikx} d = k e^{-ikx} d and i d_t e^{-ikx} d = omega e^{-ikx} d
    momentum = 0.0
    points = sample_points(rng, config.samples_count)
    for d in cartesian_orts().vectors:
        k = rng.uniform(-3.0, 3.0, size=3)
        wv = WaveVector(k, config.mass)
        jet = PlaneWaveSum([k], [-1.0], [wv.omega], [d], wv.m).jet(points)
        for j in range(3):
            momentum = max(momentum, float(np.max(np.abs(-1j * jet.grad[1 + j] - k[j] * jet.value))))
        momentum = max(momentum, _relative(np.max(np.abs(1j * jet.grad[0] - wv.omega * jet.value)), wv.omega))

    return [
        CheckResult.measured("helicity_eigen", eigen, tol),
        CheckResult.measured("helicity_completeness", completeness, tol),
        CheckResult.measured("helicity_axis_limit", axis_limit, AXIS_LIMIT_TOL),
        CheckResult.measured("dirac_orthonormality", spinor_gram, tol),
        CheckResult.measured("dirac_completeness", spinor_completeness, tol),
        CheckResult.measured("dirac_energy_eigen", energy, tol),
        CheckResult.measured("cartesian_momentum_eigen", momentum, tol),
    ]


def solutions_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_solutions
    trials, count, samples = config.trials_count, config.modes_count, config.samples_count
    sf, sf_detuned, dirac, lagrangian = 0.0, np.inf, 0.0, 0.0
    forms = dict.fromkeys(("curl_div", "covariant", "tensor_scalar", "helicity", "divergence"), 0.0)
    printed, detuned, helicity_form, sources = np.inf, np.inf, 0.0, 0.0

    for _ in range(trials):
        points = sample_points(rng, samples)

        spec = random_spec(rng, SolutionKind.SF, count, mass=config.mass)
        scale = to_plane_waves(spec).scale()
        sf = max(sf, _relative(residual_sf(spec, points), scale))
        sf_detuned = min(sf_detuned, _relative(residual_sf(_detuned(spec), points), scale))

        spec = random_spec(rng, SolutionKind.DIRAC, count, mass=config.mass)
        jet = to_plane_waves(spec).jet(points)
        dirac = max(dirac, _relative(residual_dirac(spec, points), jet.scale()))
        for p in range(len(points)):
            density = lagrangian_density(jet.value[p], jet.grad[:, p, :], spec.mass)
            lagrangian = max(lagrangian, _relative(abs(density), jet.scale() ** 2))

        spec = _with_branches(random_spec(rng, SolutionKind.GENMAXWELL, max(count, 4)), (1, 2, 3, 4))
        waves = to_plane_waves(spec)
        scale = waves.jet(points).scale()
        report = residual_gen_maxwell(spec, points)
        for name, value in report.as_dict().items():
            forms[name] = max(forms[name], _relative(value, scale))
        signs = residual_gen_maxwell(spec, points, printed_signs=True)
        printed = min(printed, _relative(min(signs.covariant, signs.tensor_scalar, signs.helicity), scale))
        off_shell = residual_gen_maxwell(_detuned(spec), points)
        detuned = min(detuned, _relative(
            min(off_shell.curl_div, off_shell.covariant, off_shell.tensor_scalar, off_shell.helicity), scale
        ))

        for t, *x in points:
            direct = eval_gen_maxwell(spec, t, x).packed()
            expanded = eval_gen_maxwell_helicity_form(spec, t, x).packed()
            helicity_form = max(helicity_form, _relative(np.max(np.abs(direct - expanded)), waves.scale()))

        t, *x = points[0]
        found = gradient_sources(spec, t, x)
        centre = np.array([t, *x])
        for mu in range(4):
            step = np.zeros(4)
            step[mu] = FD_SOURCE_STEP
            forward = eval_gen_maxwell(spec, (centre + step)[0], (centre + step)[1:])
            backward = eval_gen_maxwell(spec, (centre - step)[0], (centre - step)[1:])
            d_E0 = (forward.E0 - backward.E0) / (2.0 * FD_SOURCE_STEP)
            d_H0 = (forward.H0 - backward.H0) / (2.0 * FD_SOURCE_STEP)
            error = max(abs(found.electric[mu] + d_E0), abs(found.magnetic[mu] + d_H0))
            sources = max(sources, _relative(error, waves.scale()))

    checks = [
        CheckResult.measured("sf_residual", sf, tol),
        CheckResult.expected_failure("sf_detuned_control", sf_detuned, CONTROL_THRESHOLD),
        CheckResult.measured("dirac_residual", dirac, tol),
    ]
    checks += [CheckResult.measured(f"gen_maxwell_{name}", value, tol) for name, value in forms.items()]
    checks += [
        CheckResult.expected_failure("gen_maxwell_printed_signs", printed, CONTROL_THRESHOLD),
        CheckResult.expected_failure("gen_maxwell_detuned", detuned, CONTROL_THRESHOLD),
        CheckResult.measured("helicity_form_agreement", helicity_form, tol),
        CheckResult.measured("lagrangian_on_shell", lagrangian, tol),
        CheckResult.measured("gradient_sources_fd", sources, FD_SOURCE_TOL),
    ]
    return checks


def _match_residual(matches, distinct: bool) -> float:
    if any(match.operator is None for match in matches):
        return np.inf
    if distinct and len({match.operator for match in matches}) != len(matches):
        return np.inf
    return max(match.residual for match in matches)


def _v_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_transforms
    names = ("v_solution_match", "v_roundtrip", "v_norm_preserved", "eq50_identity", "eq50_mass_control")
    if not config.mass > 0:
        logger.warning(f"Skipping V checks: {NO_MASS_REASON}")
        return [CheckResult.skipped(name, tol, NO_MASS_REASON) for name in names]

    match, roundtrip, norm = 0.0, 0.0, 0.0
    for _ in range(config.trials_count):
        spec = random_spec(rng, SolutionKind.SF, config.modes_count, mass=config.mass)
        points = sample_points(rng, config.samples_count)
        waves = to_plane_waves(spec)
        scale = waves.scale()
        largest = max(abs(mode.amplitude) for mode in spec.modes)

        # V keeps the amplitudes: a_alpha d_alpha maps onto a_alpha v_alpha
        mapped = apply_V_field(waves)
        expected = evaluate(SolutionSpec(mass=spec.mass, kind=SolutionKind.DIRAC, modes=spec.modes), points)
        image = apply_V(spec)
        amplitudes = max(abs(a.amplitude - b.amplitude) for a, b in zip(image.modes, spec.modes))
        match = max(match, _relative(np.max(np.abs(mapped.evaluate(points) - expected)), scale),
                    _relative(amplitudes, largest))

        back = apply_V_inv_field(mapped).evaluate(points)
        restored = apply_V_inv(image)
        amplitudes = max(abs(a.amplitude - b.amplitude) for a, b in zip(restored.modes, spec.modes))
        roundtrip = max(roundtrip, _relative(np.max(np.abs(back - waves.evaluate(points))), scale),
                        _relative(amplitudes, largest))

        before = float(np.sum(np.abs(waves.vectors) ** 2))
        after = float(np.sum(np.abs(mapped.vectors) ** 2))
        norm = max(norm, _relative(abs(after - before), before))

    identity = check_identity_eq50(rng, EQ50_TRIALS, m=config.mass)
    control = check_identity_eq50(rng, EQ50_TRIALS, m=config.mass, rhs_mass=config.mass + 1.0)
    return [
        CheckResult.measured("v_solution_match", match, tol),
        CheckResult.measured("v_roundtrip", roundtrip, tol),
        CheckResult.measured("v_norm_preserved", norm, tol),
        CheckResult.measured("eq50_identity", identity.relative, tol),
        CheckResult.expected_failure("eq50_mass_control", control.relative, CONTROL_THRESHOLD),
    ]


def transforms_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_transforms
    U, U_inv = build_U(), build_U_inv()
    identity = RealLinearOperator.identity(4)
    unitary = max(
        rl_distance(rl_compose(U, rl_adjoint(U)), identity),
        rl_distance(rl_compose(rl_adjoint(U), U), identity),
    )
    vectors = rng.normal(size=(config.samples_count, 4)) + 1j * rng.normal(size=(config.samples_count, 4))
    roundtrip = float(np.max(np.abs(U_inv(U(vectors)) - vectors)))
    checks = [
        CheckResult.measured("u_unitary", unitary, config.tol_algebra),
        CheckResult.measured("u_inverse_is_adjoint", rl_distance(U_inv, rl_adjoint(U)), config.tol_algebra),
        CheckResult.measured("u_roundtrip", roundtrip, tol),
    ]

    to_dirac, to_maxwell, vacuum, medium, medium_control = 0.0, 0.0, 0.0, 0.0, np.inf
    for _ in range(config.trials_count):
        points = sample_points(rng, config.samples_count)
        spec = random_spec(rng, SolutionKind.GENMAXWELL, config.modes_count)
        mapped = map_maxwell_to_dirac(spec, points)
        to_dirac = max(to_dirac, _relative(mapped.residual, mapped.jet.scale()))

        spinors = to_plane_waves(random_spec(rng, SolutionKind.DIRAC, config.modes_count, mass=0.0)).jet(points)
        to_maxwell = max(to_maxwell, _relative(map_dirac_to_maxwell(spinors).max_residual, spinors.scale()))

        transverse = _with_branches(random_spec(rng, SolutionKind.GENMAXWELL, config.modes_count), (1, 2))
        jet = to_plane_waves(transverse).jet(points)
        vacuum = max(vacuum, _relative(sallhofer_residual(jet, (1.0, 1.0)).max_residual, jet.scale()))

        jet = medium_plane_wave(transverse, MEDIUM_EPSILON, MEDIUM_MU, points)
        report = sallhofer_residual(jet, (MEDIUM_EPSILON, MEDIUM_MU))
        medium = max(medium, _relative(report.max_residual, jet.scale()))
        medium_control = min(medium_control, _relative(min(report.unswapped[2:6]), jet.scale()))

    fields = _random_fields(rng, config.trials_count)
    spinorization = match_to_pgi(lambda f: eight_spinorizations(f)[0], eight_spinorizations, fields)
    fields = _random_fields(rng, config.trials_count, scalars=False)
    sallhofer = match_to_pgi(
        lambda f: sallhofer_columns(f.E, f.H)[0], lambda f: sallhofer_columns(f.E, f.H), fields
    )
    checks += [
        CheckResult.measured("maxwell_to_dirac", to_dirac, tol),
        CheckResult.measured("dirac_to_maxwell", to_maxwell, tol),
        CheckResult.measured("spinorization_pgi_match", _match_residual(spinorization, distinct=False), tol),
        CheckResult.measured("sallhofer_pgi_match", _match_residual(sallhofer, distinct=True), tol),
        CheckResult.measured("sallhofer_vacuum", vacuum, tol),
        CheckResult.measured("sallhofer_medium_swap", medium, tol),
        CheckResult.expected_failure("sallhofer_medium_unswapped", medium_control, CONTROL_THRESHOLD),
    ]

    profile = MediumProfile(Z=config.coulomb_Z, charge_e=config.charge_e, m=config.mass, omega_tilde=config.omega_tilde)
    xs = rng.uniform(-1.0, 1.0, size=(4 * MEDIUM_SAMPLES, 3))
    xs = xs[np.linalg.norm(xs, axis=1) >= MEDIUM_MIN_RADIUS][:MEDIUM_SAMPLES]
    ks = rng.uniform(-3.0, 3.0, size=xs.shape)
    potential_scale = 1.0 + float(np.max(np.abs(profile.potential(xs)))) + config.mass
    medium_symbols = _relative(medium_amplitude_equivalence(profile, xs, ks), potential_scale)
    checks.append(CheckResult.measured("medium_amplitude", medium_symbols, tol))

    return checks + _v_checks(config, rng)


GRID_CASES = {
    "sf": SolutionKind.SF,
    "dirac": SolutionKind.DIRAC,
    "gen_maxwell": SolutionKind.GENMAXWELL,
}


def evolve_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    tol = config.tol_evolve
    dims, n, box, t, m = config.grid_dims, config.points_per_axis, config.grid_box, config.time_t, config.mass
    logger.debug(f"Evolution grid: {dims}D, n={n}, L={box}, t={t}")

    checks, norm_checks = [], []
    grids: Dict[str, FieldGrid] = {}
    for label, kind in GRID_CASES.items():
        spec = random_lattice_spec(rng, kind, config.modes_count, m, dims, box)
        initial = sample_spec_on_grid(spec, dims, n, box, 0.0)
        grids[label] = initial
        evolved = evolve_grid(initial, kind, m, t)
        before = initial.norm_squared()
        norm_checks.append(CheckResult.measured(
            f"norm_{label}", _relative(abs(evolved.norm_squared() - before), before), tol
        ))
        analytic = sample_spec_on_grid(spec, dims, n, box, t)
        scale = float(np.max(np.abs(initial.values), initial=0.0))
        checks.append(CheckResult.measured(f"grid_vs_analytic_{label}", _relative(analytic.max_difference(evolved), scale), tol))
        if kind == SolutionKind.SF:
            twice = evolve_grid(evolve_grid(initial, kind, m, t / 2.0), kind, m, t / 2.0)
            checks.append(CheckResult.measured("sf_semigroup", _relative(twice.max_difference(evolved), scale), tol))
    checks = norm_checks + checks

    convergence = time_derivative_convergence(
        grids["dirac"],
        lambda grid, time: evolve_dirac_grid(grid, m, time),
        lambda grid: dirac_time_derivative(grid, m),
        t,
        FD_TIME_STEP,
    )
    logger.debug(f"Central difference errors {convergence.coarse_error:.3e} -> {convergence.fine_error:.3e}")
    checks.append(CheckResult.measured("fd_ratio", abs(convergence.ratio - 4.0), FD_RATIO_TOL))

    return checks + diagram_checks(config, rng)


def diagram_checks(config: RunConfig, rng: np.random.Generator) -> List[CheckResult]:
    """Commuting diagrams of the grid evolution with U and V"""
    tol = config.tol_evolve
    dims, n, box, t, m = config.grid_dims, config.points_per_axis, config.grid_box, config.time_t, config.mass
    spec = random_lattice_spec(rng, SolutionKind.GENMAXWELL, config.modes_count, 0.0, dims, box)
    checks = [CheckResult.measured("u_diagram", commuting_diagram_check(spec, dims, n, box, t).residual, tol)]
    if m > 0:
        spec = random_lattice_spec(rng, SolutionKind.SF, config.modes_count, m, dims, box)
        checks.append(CheckResult.measured("v_diagram", commuting_diagram_check(spec, dims, n, box, t).residual, tol))
    else:
        checks.append(CheckResult.skipped("v_diagram", tol, NO_MASS_REASON))
    return checks


SUITES: Dict[SuiteName, Callable[[RunConfig, np.random.Generator], List[CheckResult]]] = {
    SuiteName.ALGEBRA: algebra_checks,
    SuiteName.MODES: modes_checks,
    SuiteName.SOLUTIONS: solutions_checks,
    SuiteName.TRANSFORMS: transforms_checks,
    SuiteName.EVOLVE: evolve_checks,
}


def run_suite(name: Union[SuiteName, str], config: RunConfig) -> SuiteReport:
    """
    Run one named suite, or every suite in order for `all`.

    Raises:
        ValueError: Unknown suite name
    """
    name = SuiteName(name)
    selected = list(SUITES) if name == SuiteName.ALL else [name]
    checks = []
    for suite in selected:
        # every suite restarts from the seed, so `all` is the concatenation of the single runs
        rng = np.random.default_rng(config.seed)
        results = SUITES[suite](config, rng)
        for check in results:
            logger.debug(f"[{suite.value}] {check.name}: {check.max_residual:.3e} (tol {check.tolerance:.1e}) {check.status}")
        checks.extend(results)
    tolerance = max(config.tolerance_for(suite) for suite in selected)
    return SuiteReport(suite=name.value, seed=config.seed, tolerance=tolerance, checks=checks)
