import numpy as np
import pytest

from imex_relax.errors import BlowUpError, StiffSolveError, ValidationError
from imex_relax.integrator import (
    Discretization,
    FirstOrder,
    GeneralPair,
    PhiKind,
    RecordPolicy,
    SchemeVariant,
    StageContext,
    StepperState,
    characteristic_speeds,
    equilibrium_initial,
    initial_state,
    run,
    step_baseline,
    step_implicit_diffusion,
    step_limit_explicit,
    step_limit_imex,
    step_unified,
)
from imex_relax.model import ScalingParams, equilibrium, make_linear_gt, make_ruijgrok_wu
from imex_relax.result import Result
from imex_relax.spatial import Grid1D, Periodic
from imex_relax.tableaux import ImexPair, RKTableau, builtin

SPEED = 2.0


@pytest.fixture
def disc(periodic_grid, periodic):
    return Discretization(periodic_grid, periodic, weno_order=3, diffusion_order=2)


def smooth_state(disc, model, eps=1.0):
    u = 1.0 + 0.5 * np.sin(disc.grid.centers)
    return StepperState(u, equilibrium(model, u, eps))


def test_first_order_speed_examples():
    assert characteristic_speeds(FirstOrder(), 0.1, 0.0, 1.0, 1.0) == pytest.approx((1.0, 0.0))
    assert characteristic_speeds(FirstOrder(), 0.0, 0.5, 1.0, 1.0) == pytest.approx((2.0, -2.0))
    assert characteristic_speeds(FirstOrder(), 0.1, 0.0, 0.5, -1.0) == pytest.approx((0.0, -1.0))


def test_speed_errors():
    with pytest.raises(ValidationError):
        characteristic_speeds(FirstOrder(), 0.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValidationError):
        characteristic_speeds(FirstOrder(), -0.1, 0.5, 1.0, 1.0)
    with pytest.raises(ValidationError):
        GeneralPair(builtin("BPR343"), formula="fastest")


@pytest.mark.parametrize("name", ["ARS222", "CK222", "BPR343"])
def test_pair_speeds_stay_bounded_as_eps_vanishes(name):
    kind = GeneralPair(builtin(name))
    plus, minus = characteristic_speeds(kind, 0.05, 1e-12, 1.0, 1.0)
    assert np.isfinite(plus) and np.isfinite(minus)
    assert minus <= 0.0 <= plus
    assert max(abs(plus), abs(minus)) < 100.0


def test_stage_mu_tends_to_diagonal():
    pair = builtin("BPR343")
    dt = 0.01
    ctx = StageContext.build(pair, ScalingParams.constant(1e-10, 1.0, 4), dt)
    expected = dt * np.diag(pair.implicit_part.a)
    np.testing.assert_allclose(ctx.mu[:, 0], expected, atol=1e-12)
    assert np.all(np.isfinite(ctx.Z)) and np.all(np.isfinite(ctx.P))


@pytest.mark.parametrize("name", ["ARS222", "BPR343"])
def test_stiffly_accurate_weights_match_general_formula(name):
    pair = builtin(name)
    ctx = StageContext.build(pair, ScalingParams.constant(0.3, 0.5, 3), 0.02)
    general = ctx.Z.sum(axis=2) @ pair.implicit_part.b
    np.testing.assert_allclose(ctx.weights_v, general, atol=1e-13)


def test_stage_context_rejects_bad_step():
    with pytest.raises(ValidationError):
        StageContext.build(builtin("ARS222"), ScalingParams.constant(0.5, 1.0, 2), 0.0)


AP_CELLS = 100
AP_EPSILON = 1e-10


def ap_discretization():
    grid = Grid1D(-np.pi, np.pi, AP_CELLS)
    return Discretization(grid, Periodic(), weno_order=3, diffusion_order=2)


def ap_state(data, disc, model):
    x = disc.grid.centers
    if data == "smooth":
        u = 1.0 + 0.5 * np.sin(x)
    else:
        u = np.where(np.abs(x) < 1.0, 2.0, 1.0)
    return StepperState(u, equilibrium(model, u, AP_EPSILON))


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
@pytest.mark.parametrize("data", ["smooth", "square_wave"])
@pytest.mark.parametrize("name", ["ARS222", "CK222", "BPR343"])
def test_unified_step_reduces_to_explicit_limit(name, data, alpha):
    pair = builtin(name)
    model = make_linear_gt()
    disc = ap_discretization()
    scaling = ScalingParams.constant(AP_EPSILON, alpha, AP_CELLS)
    state = ap_state(data, disc, model)
    dt = 0.2 * disc.dx**2

    stepped = step_unified(state, pair, model, scaling, disc, dt, speed=SPEED)
    limit = step_limit_explicit(
        state.u, pair, model, disc, dt, SPEED, viscosity=scaling.diffusion_weight
    )
    np.testing.assert_allclose(stepped.u, limit, atol=1e-6)

    # v no longer depends on eps once eps is below the resolution of the step
    smaller = ScalingParams.constant(1e-2 * AP_EPSILON, alpha, AP_CELLS)
    reference = step_unified(state, pair, model, smaller, disc, dt, speed=SPEED)
    assert np.all(np.isfinite(stepped.v))
    np.testing.assert_allclose(stepped.v, reference.v, atol=1e-6)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
@pytest.mark.parametrize("data", ["smooth", "square_wave"])
@pytest.mark.parametrize("name", ["ARS222", "CK222", "BPR343"])
def test_implicit_step_reduces_to_imex_limit(name, data, alpha):
    pair = builtin(name)
    model = make_linear_gt()
    disc = ap_discretization()
    scaling = ScalingParams.constant(AP_EPSILON, alpha, AP_CELLS)
    state = ap_state(data, disc, model)
    dt = 0.5 * disc.dx

    stepped = step_implicit_diffusion(state, pair, model, scaling, disc, dt, speed=SPEED)
    limit = step_limit_imex(
        state.u, pair, model, disc, dt, SPEED, viscosity=scaling.diffusion_weight
    )
    np.testing.assert_allclose(stepped.u, limit, atol=1e-6)

    smaller = ScalingParams.constant(1e-2 * AP_EPSILON, alpha, AP_CELLS)
    reference = step_implicit_diffusion(state, pair, model, smaller, disc, dt, speed=SPEED)
    assert np.all(np.isfinite(stepped.v))
    np.testing.assert_allclose(stepped.v, reference.v, atol=1e-6)


@pytest.mark.parametrize("model", [make_linear_gt(), make_ruijgrok_wu()])
@pytest.mark.parametrize("step", [step_unified, step_implicit_diffusion])
def test_constant_equilibrium_is_steady(disc, model, step):
    eps = 0.2
    scaling = ScalingParams.constant(eps, 0.5, disc.grid.n)
    u = np.full(disc.grid.n, 1.5)
    state = StepperState(u, equilibrium(model, u, eps))
    stepped = step(state, builtin("BPR343"), model, scaling, disc, 0.5 * disc.dx)
    np.testing.assert_allclose(stepped.u, state.u, atol=1e-12)
    np.testing.assert_allclose(stepped.v, state.v, atol=1e-12)
    assert stepped.t == pytest.approx(0.5 * disc.dx)


@pytest.mark.parametrize("variant", ["additive", "partitioned", "hybrid"])
def test_baseline_keeps_constant_equilibrium(disc, variant):
    model = make_ruijgrok_wu()
    scaling = ScalingParams.constant(0.5, 0.0, disc.grid.n)
    u = np.full(disc.grid.n, 2.0)
    state = StepperState(u, equilibrium(model, u, 0.5))
    stepped = step_baseline(state, variant, model, scaling, disc, 0.1 * disc.dx)
    np.testing.assert_allclose(stepped.v, state.v, atol=1e-12)


def test_hybrid_interpolates_between_baselines(disc):
    model = make_linear_gt()
    state = smooth_state(disc, model)
    dt = 0.5 * disc.dx

    def compare(eps, other):
        scaling = ScalingParams.constant(eps, 1.0, disc.grid.n)
        hybrid = step_baseline(state, "hybrid", model, scaling, disc, dt, speed=SPEED)
        expected = step_baseline(state, other, model, scaling, disc, dt, speed=SPEED)
        np.testing.assert_allclose(hybrid.v, expected.v, rtol=1e-12, atol=1e-12)

    compare(10.0, "additive")
    compare(1e-8, "partitioned")


def test_phi_kinds():
    assert PhiKind.MinEps2(0.5) == 0.25
    assert PhiKind.MinEps2(3.0) == 1.0
    assert PhiKind.TanhEps2(0.5) == pytest.approx(np.tanh(0.25))


def test_baseline_rejects_pair_variant(disc):
    model = make_linear_gt()
    with pytest.raises(ValidationError):
        step_baseline(
            smooth_state(disc, model),
            SchemeVariant.UnifiedExplicitDiffusion,
            model,
            ScalingParams.constant(0.5, 1.0, disc.grid.n),
            disc,
            0.01,
        )


def test_unified_conserves_mass(disc):
    pair = builtin("BPR343")
    model = make_ruijgrok_wu()
    scaling = ScalingParams.constant(0.5, 0.0, disc.grid.n)
    state = smooth_state(disc, model, eps=0.5)
    mass = state.u.sum()
    for _ in range(5):
        state = step_unified(state, pair, model, scaling, disc, 0.2 * disc.dx)
    assert state.u.sum() == pytest.approx(mass, rel=1e-12)


def test_implicit_diffusion_conserves_mass(disc):
    model = make_ruijgrok_wu()
    scaling = ScalingParams.constant(1e-3, 1.0, disc.grid.n)
    state = smooth_state(disc, model, eps=1e-3)
    mass = state.u.sum()
    stats = {}
    for _ in range(3):
        state = step_implicit_diffusion(
            state, builtin("ARS222"), model, scaling, disc, 0.5 * disc.dx, stats=stats
        )
    assert state.u.sum() == pytest.approx(mass, rel=1e-10)
    assert len(stats["picard_iterations"]) == 3


def test_run_without_steps_returns_initial(disc):
    model = make_linear_gt()
    state = smooth_state(disc, model)
    trajectory = run(
        state,
        "unified",
        builtin("ARS222"),
        model,
        ScalingParams.constant(0.5, 1.0, disc.grid.n),
        disc,
        0.5,
        t_final=0.0,
        progress=False,
    )
    assert len(trajectory.snapshots) == 1
    assert trajectory.diagnostics["steps"] == 0
    np.testing.assert_array_equal(trajectory.final.u, state.u)


def test_run_lands_on_snapshot_times(disc):
    model = make_linear_gt()
    scaling = ScalingParams.constant(1e-6, 1.0, disc.grid.n)
    trajectory = run(
        equilibrium_initial(model, 1.0 + 0.5 * np.sin(disc.grid.centers), scaling, disc),
        "implicit_diffusion",
        builtin("BPR343"),
        model,
        scaling,
        disc,
        0.5,
        t_final=0.1,
        record=RecordPolicy(times=[0.033]),
        progress=False,
    )
    assert trajectory.times == pytest.approx([0.0, 0.033, 0.1])
    assert trajectory.at(0.033).t == pytest.approx(0.033)
    with pytest.raises(ValidationError):
        trajectory.at(0.05)
    assert trajectory.diagnostics["pair"] == "BPR343"
    assert trajectory.diagnostics["wall_time"] >= trajectory.diagnostics["mean_step_time"] > 0.0


def test_run_limit_scheme_carries_flux(disc):
    model = make_linear_gt()
    scaling = ScalingParams.constant(1e-6, 1.0, disc.grid.n)
    u = 1.0 + 0.5 * np.sin(disc.grid.centers)
    trajectory = run(
        initial_state(u, model.g(u)),
        "limit_imex",
        builtin("ARS222"),
        model,
        scaling,
        disc,
        0.5,
        t_final=0.05,
        progress=False,
    )
    assert np.all(np.isfinite(trajectory.final.v))


def test_run_warns_for_non_stiffly_accurate_pairs(disc):
    explicit = RKTableau(a=[[0.0]], b=[1.0], c=[0.0])
    implicit = RKTableau(a=[[1.0]], b=[1.0], c=[1.0])
    pair = ImexPair("EULER1", explicit, implicit, declared_order=1)
    model = make_linear_gt()
    scaling = ScalingParams.constant(1e-8, 1.0, disc.grid.n)
    trajectory = run(
        smooth_state(disc, model),
        "unified",
        pair,
        model,
        scaling,
        disc,
        0.01,
        t_final=0.01 * disc.dx,
        progress=False,
    )
    assert any("not globally stiffly accurate" in w for w in trajectory.diagnostics["warnings"])


def test_run_validation(disc):
    model = make_linear_gt()
    state = smooth_state(disc, model)
    scaling = ScalingParams.constant(0.5, 1.0, disc.grid.n)
    with pytest.raises(ValidationError):
        run(state, "unified", None, model, scaling, disc, 0.5, 0.1, progress=False)
    with pytest.raises(ValidationError):
        run(state, "additive", builtin("ARS222"), model, scaling, disc, 0.5, 0.1, progress=False)
    with pytest.raises(ValidationError):
        run(state, "unified", builtin("ARS222"), model, scaling, disc, 0.0, 0.1, progress=False)


def test_run_reports_blow_up(disc):
    model = make_linear_gt()
    u = np.ones(disc.grid.n)
    u[3] = np.nan
    with pytest.raises(BlowUpError) as error:
        run(
            StepperState(u, u.copy()),
            "additive",
            None,
            model,
            ScalingParams.constant(0.5, 1.0, disc.grid.n),
            disc,
            0.5,
            0.1,
            progress=False,
        )
    assert error.value.step == 0
    assert error.value.exit_code == 3


def test_run_keeps_the_cfl_number_within_the_limit(disc):
    model = make_linear_gt()
    scaling = ScalingParams.constant(0.4, 1.0, disc.grid.n)
    state = smooth_state(disc, model, eps=0.4)
    arguments = (state, "additive", None, model, scaling, disc, 0.9)

    limited = run(*arguments, t_final=20 * disc.dx, progress=False)
    diagnostics = limited.diagnostics
    assert diagnostics["dt"] < 0.9 * disc.dx
    assert 0.9 < diagnostics["max_cfl_number"] <= 1.0 + 1e-6
    assert any(w.startswith("dt reduced") for w in diagnostics["warnings"])
    assert limited.final.t == pytest.approx(20 * disc.dx)

    fixed = run(*arguments, t_final=1.8 * disc.dx, progress=False, cfl_max=None)
    assert fixed.diagnostics["dt"] == pytest.approx(0.9 * disc.dx)
    assert fixed.diagnostics["max_cfl_number"] > 1.0
    assert not fixed.diagnostics["warnings"]


def test_stiff_solve_failures_exit_like_blow_ups():
    error = StiffSolveError("negative discriminant in the relaxation solve", r=-1.0, kappa=0.25)
    assert isinstance(error, ArithmeticError)
    result = Result.from_error(error)
    assert result.returncode == 3
    assert result.metadata["error_type"] == "StiffSolveError"
