"""Optimizers with exact energy-evaluation accounting.

The central method treats the parameter vector as a particle with mass m
integrated by velocity Verlet under the force F = -grad E, with a linear
velocity damping factor gamma applied once per step to the post-update
velocity:

    v_half = v + dt * F(theta) / (2 m)
    theta' = theta + dt * v_half
    v'     = gamma * (v_half + dt * F(theta') / (2 m))

By default both forces are fresh gradients (1 + 4 * n_params evaluations
per iteration including the energy log); with force reuse the opening
force is the cached closing force of the previous step (1 + 2 * n_params).
A leapfrog variant folds the two half-kicks into one full kick.

Every driver emits an iteration-0 record holding the initial energy and
then runs exactly ``max_iters`` steps unless it diverges or, for L-BFGS,
the line search fails.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

# A run is aborted as divergent beyond this energy magnitude.
ENERGY_ABORT = 1e3

# Curvature pairs with s.y below this relative threshold are skipped.
CURVATURE_EPS = 1e-12


class DivergenceError(RuntimeError):
    """Raised when an optimizer produces non-finite or runaway values."""


@dataclass
class ConvergenceRecord:
    """One logged iteration: energy, error against a reference, and the
    cumulative evaluation count at the time of logging."""

    iteration: int
    energy: float
    abs_error: float
    cumulative_evals: int
    elapsed: float = 0.0


@dataclass
class VerletState:
    """Integrator state for the Verlet family."""

    theta: np.ndarray
    velocity: np.ndarray
    dt: float
    mass: float
    damping: float
    force_cache: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.theta = np.asarray(self.theta, dtype=np.float64)
        self.velocity = np.asarray(self.velocity, dtype=np.float64)
        if self.theta.shape != self.velocity.shape:
            raise ValueError("theta and velocity must have matching shapes")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not 0.0 <= self.damping <= 1.0:
            raise ValueError(
                f"damping must lie in [0, 1], got {self.damping}"
            )


def make_verlet_state(
    theta: np.ndarray, *, dt: float, mass: float, damping: float
) -> VerletState:
    """Fresh integrator state at theta with zero initial velocity."""

    theta = np.array(theta, dtype=np.float64)
    return VerletState(theta, np.zeros_like(theta), dt, mass, damping)


def _check_finite(values: np.ndarray, label: str) -> None:
    if not np.all(np.isfinite(values)):
        raise DivergenceError(f"non-finite {label} encountered")


def _check_energy(energy: float) -> None:
    if not np.isfinite(energy) or abs(energy) > ENERGY_ABORT:
        raise DivergenceError(f"energy {energy!r} outside |E| <= {ENERGY_ABORT}")


def verlet_step(
    state: VerletState,
    obj,
    reference: float,
    iteration: int,
    *,
    reuse_force: bool = False,
) -> ConvergenceRecord:
    """One damped velocity-Verlet step; mutates ``state`` in place.

    With ``reuse_force`` the opening force comes from ``state.force_cache``
    when present (the closing force of the previous step); otherwise a
    fresh gradient is taken.  The closing force is always fresh and is
    cached on exit.  One energy evaluation logs the post-step energy.
    """

    half_kick = state.dt / (2.0 * state.mass)
    if reuse_force and state.force_cache is not None:
        force_open = state.force_cache
    else:
        force_open = -obj.gradient(state.theta)
    v_half = state.velocity + half_kick * force_open
    theta_new = state.theta + state.dt * v_half
    _check_finite(theta_new, "parameters")
    force_close = -obj.gradient(theta_new)
    velocity_new = state.damping * (v_half + half_kick * force_close)
    _check_finite(velocity_new, "velocity")
    energy = obj.energy(theta_new)
    _check_energy(energy)
    state.theta = theta_new
    state.velocity = velocity_new
    state.force_cache = force_close
    return ConvergenceRecord(
        iteration, energy, abs(energy - reference), obj.counter.energy_evals
    )


def leapfrog_step(
    state: VerletState, obj, reference: float, iteration: int
) -> ConvergenceRecord:
    """One damped leapfrog step: single force, full kick, then drift."""

    force = -obj.gradient(state.theta)
    velocity_new = state.damping * (
        state.velocity + (state.dt / state.mass) * force
    )
    theta_new = state.theta + state.dt * velocity_new
    _check_finite(theta_new, "parameters")
    energy = obj.energy(theta_new)
    _check_energy(energy)
    state.theta = theta_new
    state.velocity = velocity_new
    return ConvergenceRecord(
        iteration, energy, abs(energy - reference), obj.counter.energy_evals
    )


def heavy_ball_step(
    theta: np.ndarray,
    velocity: np.ndarray,
    obj,
    learning_rate: float,
    momentum: float,
    reference: float,
    iteration: int,
) -> tuple[np.ndarray, np.ndarray, ConvergenceRecord]:
    """Polyak heavy-ball: v' = beta v - eta grad E; theta' = theta + v'."""

    grad = obj.gradient(theta)
    velocity_new = momentum * velocity - learning_rate * grad
    theta_new = theta + velocity_new
    _check_finite(theta_new, "parameters")
    energy = obj.energy(theta_new)
    _check_energy(energy)
    record = ConvergenceRecord(
        iteration, energy, abs(energy - reference), obj.counter.energy_evals
    )
    return theta_new, velocity_new, record


def _initial_record(obj, theta0: np.ndarray, reference: float) -> tuple[float, ConvergenceRecord]:
    energy = obj.energy(theta0)
    _check_energy(energy)
    return energy, ConvergenceRecord(
        0, energy, abs(energy - reference), obj.counter.energy_evals
    )


def run_verlet(
    obj,
    theta0: np.ndarray,
    max_iters: int,
    reference: float,
    *,
    dt: float,
    mass: float,
    damping: float,
    reuse_force: bool = False,
) -> tuple[list[ConvergenceRecord], str]:
    """Velocity-Verlet driver.

    In force-reuse mode the cache is primed with one gradient at theta0
    before the iteration-0 record is emitted, so every subsequent step
    costs 1 + 2 * n_params evaluations and the trajectory is bit-identical
    to the default mode.
    """

    state = make_verlet_state(theta0, dt=dt, mass=mass, damping=damping)
    energy0 = obj.energy(state.theta)
    _check_energy(energy0)
    if reuse_force:
        state.force_cache = -obj.gradient(state.theta)
    records = [
        ConvergenceRecord(
            0, energy0, abs(energy0 - reference), obj.counter.energy_evals
        )
    ]
    status = "ok"
    for iteration in range(1, max_iters + 1):
        try:
            records.append(
                verlet_step(
                    state, obj, reference, iteration, reuse_force=reuse_force
                )
            )
        except DivergenceError:
            status = "diverged"
            break
    return records, status


def run_leapfrog(
    obj,
    theta0: np.ndarray,
    max_iters: int,
    reference: float,
    *,
    dt: float,
    mass: float,
    damping: float,
) -> tuple[list[ConvergenceRecord], str]:
    """Leapfrog driver: one force per iteration."""

    state = make_verlet_state(theta0, dt=dt, mass=mass, damping=damping)
    _, record0 = _initial_record(obj, state.theta, reference)
    records = [record0]
    status = "ok"
    for iteration in range(1, max_iters + 1):
        try:
            records.append(leapfrog_step(state, obj, reference, iteration))
        except DivergenceError:
            status = "diverged"
            break
    return records, status


def run_heavy_ball(
    obj,
    theta0: np.ndarray,
    max_iters: int,
    reference: float,
    *,
    learning_rate: float,
    momentum: float,
) -> tuple[list[ConvergenceRecord], str]:
    """Heavy-ball driver."""

    theta = np.array(theta0, dtype=np.float64)
    velocity = np.zeros_like(theta)
    _, record0 = _initial_record(obj, theta, reference)
    records = [record0]
    status = "ok"
    for iteration in range(1, max_iters + 1):
        try:
            theta, velocity, record = heavy_ball_step(
                theta, velocity, obj, learning_rate, momentum, reference,
                iteration,
            )
        except DivergenceError:
            status = "diverged"
            break
        records.append(record)
    return records, status


def _two_loop_direction(
    grad: np.ndarray, history: deque
) -> np.ndarray:
    """L-BFGS two-loop recursion for the descent direction -H grad."""

    q = grad.copy()
    alphas = []
    for s, y, rho in reversed(history):
        alpha = rho * float(s @ q)
        q -= alpha * y
        alphas.append(alpha)
    if history:
        s, y, _ = history[-1]
        q *= float(s @ y) / float(y @ y)
    for (s, y, rho), alpha in zip(history, reversed(alphas)):
        beta = rho * float(y @ q)
        q += (alpha - beta) * s
    return -q


def lbfgs_minimize(
    obj,
    theta0: np.ndarray,
    max_iters: int,
    reference: float,
    *,
    memory: int = 10,
    armijo_c1: float = 1e-4,
    max_backtracks: int = 20,
) -> tuple[list[ConvergenceRecord], str]:
    """Limited-memory BFGS with Armijo backtracking line search.

    One gradient per accepted iterate; each backtracking trial costs one
    energy evaluation and halves the step.  A failed line search emits a
    final record at the current point and stops; a vanishing gradient
    stops immediately.
    """

    if memory < 1:
        raise ValueError(f"memory must be at least 1, got {memory}")
    if max_backtracks < 1:
        raise ValueError(
            f"max_backtracks must be at least 1, got {max_backtracks}"
        )
    theta = np.array(theta0, dtype=np.float64)
    f_current, record0 = _initial_record(obj, theta, reference)
    records = [record0]
    history: deque = deque(maxlen=memory)
    status = "ok"
    step_prev: np.ndarray | None = None
    grad_prev: np.ndarray | None = None
    for iteration in range(1, max_iters + 1):
        try:
            grad = obj.gradient(theta)
            _check_finite(grad, "gradient")
        except DivergenceError:
            status = "diverged"
            break
        if step_prev is not None:
            y = grad - grad_prev
            curvature = float(step_prev @ y)
            if curvature > CURVATURE_EPS * float(
                np.linalg.norm(step_prev) * np.linalg.norm(y)
            ):
                history.append((step_prev, y, 1.0 / curvature))
        if np.linalg.norm(grad) < 1e-15:
            status = "stationary"
            break
        direction = _two_loop_direction(grad, history)
        slope = float(grad @ direction)
        if slope >= 0.0:
            direction = -grad
            slope = -float(grad @ grad)
        step_size = 1.0
        accepted = False
        for _ in range(max_backtracks):
            f_trial = obj.energy(theta + step_size * direction)
            if np.isfinite(f_trial) and f_trial <= f_current + armijo_c1 * step_size * slope:
                accepted = True
                break
            step_size *= 0.5
        if not accepted:
            records.append(
                ConvergenceRecord(
                    iteration,
                    f_current,
                    abs(f_current - reference),
                    obj.counter.energy_evals,
                )
            )
            status = "line_search_failed"
            break
        if abs(f_trial) > ENERGY_ABORT:
            status = "diverged"
            break
        step_prev = step_size * direction
        grad_prev = grad
        theta = theta + step_prev
        f_current = f_trial
        records.append(
            ConvergenceRecord(
                iteration,
                f_current,
                abs(f_current - reference),
                obj.counter.energy_evals,
            )
        )
    return records, status


def nelder_mead_minimize(
    obj,
    theta0: np.ndarray,
    max_iters: int,
    reference: float,
    *,
    initial_step: float = 0.05,
) -> tuple[list[ConvergenceRecord], str]:
    """Gradient-free Nelder-Mead simplex search.

    Standard coefficients (reflection 1, expansion 2, contraction 0.5,
    shrink 0.5); the initial simplex offsets each coordinate of theta0 by
    ``initial_step``.  Each record reports the best vertex after the
    iteration, so the trace is monotone non-increasing.
    """

    reflect, expand, contract, shrink = 1.0, 2.0, 0.5, 0.5
    theta0 = np.array(theta0, dtype=np.float64)
    n = theta0.size
    f0, record0 = _initial_record(obj, theta0, reference)
    records = [record0]
    vertices = [theta0]
    fvalues = [f0]
    status = "ok"
    try:
        for i in range(n):
            vertex = theta0.copy()
            vertex[i] += initial_step
            energy = obj.energy(vertex)
            _check_energy(energy)
            vertices.append(vertex)
            fvalues.append(energy)

        def evaluate(point: np.ndarray) -> float:
            energy = obj.energy(point)
            _check_energy(energy)
            return energy

        for iteration in range(1, max_iters + 1):
            order = np.argsort(fvalues, kind="stable")
            vertices = [vertices[k] for k in order]
            fvalues = [fvalues[k] for k in order]
            centroid = np.mean(vertices[:-1], axis=0)
            worst = vertices[-1]
            reflected = centroid + reflect * (centroid - worst)
            f_reflected = evaluate(reflected)
            if f_reflected < fvalues[0]:
                expanded = centroid + expand * (centroid - worst)
                f_expanded = evaluate(expanded)
                if f_expanded < f_reflected:
                    vertices[-1], fvalues[-1] = expanded, f_expanded
                else:
                    vertices[-1], fvalues[-1] = reflected, f_reflected
            elif f_reflected < fvalues[-2]:
                vertices[-1], fvalues[-1] = reflected, f_reflected
            else:
                if f_reflected < fvalues[-1]:
                    contracted = centroid + contract * (centroid - worst)
                    f_contracted = evaluate(contracted)
                    better = f_contracted <= f_reflected
                else:
                    contracted = centroid - contract * (centroid - worst)
                    f_contracted = evaluate(contracted)
                    better = f_contracted < fvalues[-1]
                if better:
                    vertices[-1], fvalues[-1] = contracted, f_contracted
                else:
                    best = vertices[0]
                    for k in range(1, n + 1):
                        vertices[k] = best + shrink * (vertices[k] - best)
                        fvalues[k] = evaluate(vertices[k])
            best_energy = min(fvalues)
            records.append(
                ConvergenceRecord(
                    iteration,
                    best_energy,
                    abs(best_energy - reference),
                    obj.counter.energy_evals,
                )
            )
    except DivergenceError:
        status = "diverged"
    return records, status
