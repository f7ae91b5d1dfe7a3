"""One-dimensional Yee solver.

A center-launched Gaussian pulse splits into two half-amplitude waves
that travel one cell every two steps (Courant number 1/2).  At that
Courant number the two-time-level boundary update is an exact absorber:
the outgoing wave needs exactly two steps to cross the last cell, so
replaying the neighbor's two-step-old value annihilates it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    FieldState1D,
    GridSpec,
    NumericError,
    SourceSpec,
    ValidationError,
)

# A soft source adds 0.5*g(n) per step.  With dt = dx/(2c) an additive
# injection of s(n) radiates traveling waves of amplitude s(n) on each
# side, so the 0.5 factor makes the two emitted half-pulses carry half
# the nominal source peak each -- the d'Alembert splitting of a unit
# Gaussian materializing at the source cell.
SOFT_SCALE = 0.5


@dataclass
class Scenario1D:
    """A 1D run: grid, source, and what to record."""

    grid: GridSpec
    source: SourceSpec
    probe_positions: list = field(default_factory=list)
    snapshot_steps: list = field(default_factory=list)

    def __post_init__(self):
        if self.grid.dims != 1:
            raise ValidationError("Scenario1D needs a 1D grid")
        ke = self.grid.cells_per_axis[0]
        if self.source.location is None:
            self.source.location = ke // 2
        positions = [int(self.source.location)] + [int(p) for p in self.probe_positions]
        for p in positions:
            if not (1 <= p <= ke - 2):
                raise ValidationError(
                    f"position {p} outside interior [1, {ke - 2}]"
                )


@dataclass
class Result1D:
    probes: dict
    snapshots: dict
    energy: np.ndarray


def step_e_1d(state: FieldState1D) -> FieldState1D:
    """Advance ex by a half curl: ex[k] += 0.5 (hy[k-1/2] - hy[k+1/2]).

    Sweeps the interior only; the two end cells belong to the absorbing
    boundary.
    """
    ex, hy = state.ex, state.hy
    ex[1:-1] += 0.5 * (hy[0:-2] - hy[1:-1])
    return state


def step_h_1d(state: FieldState1D) -> FieldState1D:
    """Advance hy: hy[k+1/2] += 0.5 (ex[k] - ex[k+1])."""
    ex, hy = state.ex, state.hy
    hy[:-1] += 0.5 * (ex[:-1] - ex[1:])
    return state


def apply_abc_1d(state: FieldState1D) -> FieldState1D:
    """Exact two-level absorbing boundary at both ends.

    ex[0] takes the value ex[1] had two steps ago and ex[KE-1] takes
    ex[KE-2] from two steps ago; the history then shifts forward.
    """
    ex = state.ex
    low = state.boundary_history["low"]
    high = state.boundary_history["high"]
    ex[0] = low.pop(0)
    low.append(float(ex[1]))
    ex[-1] = high.pop(0)
    high.append(float(ex[-2]))
    return state


def inject_source_1d(state: FieldState1D, source: SourceSpec, step: int,
                     dt: float) -> None:
    k = int(source.location)
    value = source.waveform(step, dt)
    if source.injection == "soft":
        state.ex[k] += SOFT_SCALE * value
    else:
        state.ex[k] = value


def energy_1d(state: FieldState1D) -> float:
    """Discrete field energy sum(ex^2) + sum(hy^2)."""
    return float(np.dot(state.ex, state.ex) + np.dot(state.hy, state.hy))


def run_1d(scenario: Scenario1D) -> Result1D:
    """Run the per-step sequence (E sweep, ABC, source, H sweep).

    Probes and snapshots are recorded at the end of each step, i.e.
    with ex at time level n + 1/2 and hy at level n + 1 for step n.
    """
    grid = scenario.grid
    ke = grid.cells_per_axis[0]
    state = FieldState1D.zeros(ke)
    probes = {int(p): np.zeros(grid.n_steps + 1) for p in scenario.probe_positions}
    snapshots = {}
    energy = np.zeros(grid.n_steps + 1)
    wanted = set(int(s) for s in scenario.snapshot_steps)

    for n in range(1, grid.n_steps + 1):
        step_e_1d(state)
        apply_abc_1d(state)
        inject_source_1d(state, scenario.source, n, grid.dt)
        step_h_1d(state)
        if not np.isfinite(state.ex).all():
            idx = int(np.argmin(np.isfinite(state.ex)))
            raise NumericError(
                f"non-finite ex at step {n}, cell {idx}", step=n, index=idx
            )
        for p in probes:
            probes[p][n] = state.ex[p]
        energy[n] = energy_1d(state)
        if n in wanted:
            snapshots[n] = (state.ex.copy(), state.hy.copy())

    return Result1D(probes=probes, snapshots=snapshots, energy=energy)
