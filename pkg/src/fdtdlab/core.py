"""Shared infrastructure for the FDTD solvers.

Grids, source waveforms, field storage, material compilation and the
time-step rule live here.  Everything downstream (the 1D/2D/3D solvers)
works in normalized field units: the electric field is scaled by
sqrt(eps0/mu0) so that E and H carry comparable magnitudes and every
update coefficient collapses to 0.5 once dt = dx/(2c).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

# Exact SI speed of light; eps0/mu0 at CODATA-2018 precision.  Golden
# values in the test suite assume these exact literals.
C0 = 299792458.0
EPS0 = 8.8541878128e-12
MU0 = 1.25663706212e-6
ETA0 = math.sqrt(MU0 / EPS0)


class ValidationError(ValueError):
    """A scenario, grid, or material description violates its contract."""


class NumericError(RuntimeError):
    """A solver produced a non-finite field value.

    Carries the first offending step and flat array index so a run can
    report where the blow-up started.
    """

    def __init__(self, message, step=None, index=None):
        super().__init__(message)
        self.step = step
        self.index = index


def courant_dt(dx: float) -> float:
    """Time step for a uniform grid of cell size ``dx`` (meters).

    Uses dt = dx / (2 c), i.e. a Courant number of one half, which is
    stable in every dimension (0.5 < 1/sqrt(3)) and makes the
    two-time-level absorbing boundary in 1D exact.
    """
    if dx <= 0.0:
        raise ValidationError(f"cell size must be positive, got dx={dx}")
    return dx / (2.0 * C0)


def gaussian_pulse(t, t0: float, spread: float):
    """Gaussian waveform exp(-(t0 - t)^2 / (2 spread^2)).

    Peaks at 1 when t == t0.  ``t`` may be a scalar or an array; t0 and
    spread are in the same units as t (typically time steps).
    """
    if spread <= 0.0:
        raise ValidationError(f"pulse spread must be positive, got {spread}")
    arg = (t0 - t) / spread
    return np.exp(-0.5 * arg * arg)


def normalize_e(e_si):
    """Scale an SI electric field (V/m) into normalized units."""
    return math.sqrt(EPS0 / MU0) * np.asarray(e_si)


def denormalize_e(e_norm):
    """Inverse of :func:`normalize_e`."""
    return math.sqrt(MU0 / EPS0) * np.asarray(e_norm)


@dataclass
class GridSpec:
    """Uniform Cartesian grid plus its derived time step.

    ``cells_per_axis`` is a tuple with one entry per dimension; ``dx`` is
    the cell size in meters (identical on all axes).  ``dt`` is always
    dx/(2c); passing anything else is rejected rather than silently
    corrected.
    """

    dims: int
    cells_per_axis: tuple
    dx: float
    n_steps: int
    dt: float = None

    def __post_init__(self):
        if self.dims not in (1, 2, 3):
            raise ValidationError(f"dims must be 1, 2 or 3, got {self.dims}")
        if isinstance(self.cells_per_axis, int):
            self.cells_per_axis = (self.cells_per_axis,)
        self.cells_per_axis = tuple(int(n) for n in self.cells_per_axis)
        if len(self.cells_per_axis) != self.dims:
            raise ValidationError(
                f"expected {self.dims} axis sizes, got {self.cells_per_axis}"
            )
        for n in self.cells_per_axis:
            if n < 10:
                raise ValidationError(
                    f"every axis needs at least 10 cells, got {self.cells_per_axis}"
                )
        if self.n_steps < 0:
            raise ValidationError(f"n_steps must be non-negative, got {self.n_steps}")
        expected = courant_dt(self.dx)
        if self.dt is None:
            self.dt = expected
        elif self.dt != expected:
            raise ValidationError(
                f"dt must equal dx/(2c) = {expected!r} exactly, got {self.dt!r}"
            )

    @property
    def shape(self):
        return self.cells_per_axis


@dataclass
class SourceSpec:
    """Excitation description shared by all solvers.

    ``t0`` and ``spread`` are in time steps.  ``location`` is a cell
    index (1D), an index tuple (2D/3D), or the string ``"tfsf"`` for
    plane-wave injection through a total-field/scattered-field box.
    A Gaussian source must satisfy t0 >= 3*spread so the waveform is
    effectively zero (below e^-4.5) at t = 0.
    """

    kind: str = "gaussian"
    t0: float = 40.0
    spread: float = 12.0
    freq: float = None
    injection: str = "soft"
    location: object = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "sinusoid"):
            raise ValidationError(f"unknown source kind {self.kind!r}")
        if self.injection not in ("soft", "hard"):
            raise ValidationError(f"unknown injection mode {self.injection!r}")
        if self.kind == "gaussian":
            if self.spread <= 0.0:
                raise ValidationError(f"spread must be positive, got {self.spread}")
            if self.t0 < 3.0 * self.spread:
                raise ValidationError(
                    f"t0={self.t0} too small: need t0 >= 3*spread = {3.0 * self.spread}"
                )
        if self.kind == "sinusoid" and (self.freq is None or self.freq <= 0.0):
            raise ValidationError("sinusoid source needs a positive freq in Hz")

    def waveform(self, step, dt: float) -> float:
        """Source value at integer time step ``step``."""
        if self.kind == "gaussian":
            return float(gaussian_pulse(step, self.t0, self.spread))
        return math.sin(2.0 * math.pi * self.freq * step * dt)


@dataclass
class MaterialMap:
    """Per-cell relative permittivity and conductivity plus compiled
    update coefficients.

    After :func:`compile_materials` the map carries ``ga`` and ``gb``
    with ga = 1/(eps_r + sigma*dt/eps0) and gb = sigma*dt/eps0, used by
    the flux-density solvers as::

        e = ga * (d - acc);  acc += gb * e

    Free-space cells compile to ga = 1, gb = 0 so the update degenerates
    to e = d there.
    """

    eps_r: np.ndarray
    sigma: np.ndarray
    ga: np.ndarray = None
    gb: np.ndarray = None

    @classmethod
    def free_space(cls, shape) -> "MaterialMap":
        return cls(eps_r=np.ones(shape), sigma=np.zeros(shape))

    @property
    def is_free_space(self) -> bool:
        return bool(np.all(self.eps_r == 1.0) and np.all(self.sigma == 0.0))


def compile_materials(materials: MaterialMap, dt: float) -> MaterialMap:
    """Fill the (ga, gb) coefficient arrays of a raw material map.

    Raises :class:`ValidationError` naming the offending cells when any
    eps_r < 1 or sigma < 0.
    """
    eps_r = np.asarray(materials.eps_r, dtype=np.float64)
    sigma = np.asarray(materials.sigma, dtype=np.float64)
    if eps_r.shape != sigma.shape:
        raise ValidationError(
            f"eps_r shape {eps_r.shape} != sigma shape {sigma.shape}"
        )
    bad = np.argwhere((eps_r < 1.0) | (sigma < 0.0))
    if bad.size:
        shown = ", ".join(str(tuple(int(v) for v in idx)) for idx in bad[:8])
        more = "" if len(bad) <= 8 else f" (+{len(bad) - 8} more)"
        raise ValidationError(
            f"invalid material cells (need eps_r >= 1 and sigma >= 0) at: {shown}{more}"
        )
    gb = sigma * (dt / EPS0)
    ga = 1.0 / (eps_r + gb)
    materials.eps_r = eps_r
    materials.sigma = sigma
    materials.ga = ga
    materials.gb = gb
    return materials


@dataclass
class FieldState1D:
    """Staggered 1D field pair: ex at integer k, hy at k + 1/2.

    ``boundary_history`` holds the two previous time levels of the
    interior cells adjacent to each end (ex[1] and ex[KE-2]); the
    absorbing boundary replays them after the two-step transit delay.
    """

    ex: np.ndarray
    hy: np.ndarray
    boundary_history: dict = field(default_factory=lambda: {"low": [0.0, 0.0],
                                                            "high": [0.0, 0.0]})

    @classmethod
    def zeros(cls, ke: int) -> "FieldState1D":
        return cls(ex=np.zeros(ke), hy=np.zeros(ke))


@dataclass
class FieldState2D:
    """TM-mode field set on a staggered 2D lattice.

    dz/ez live at integer (i, j); hx at (i, j+1/2); hy at (i+1/2, j).
    ihx/ihy are the PML curl accumulators; iez is the per-cell loss
    accumulator of the lossy-dielectric E-from-D update.  idz is the
    z-axis flux accumulator slot; the TM formulation has no z grading so
    it stays identically zero, matching the 3D field layout.
    """

    dz: np.ndarray
    ez: np.ndarray
    hx: np.ndarray
    hy: np.ndarray
    ihx: np.ndarray
    ihy: np.ndarray
    idz: np.ndarray
    iez: np.ndarray

    @classmethod
    def zeros(cls, nx: int, ny: int) -> "FieldState2D":
        mk = lambda: np.zeros((nx, ny))
        return cls(dz=mk(), ez=mk(), hx=mk(), hy=mk(),
                   ihx=mk(), ihy=mk(), idz=mk(), iez=mk())

    def arrays(self):
        return (self.dz, self.ez, self.hx, self.hy,
                self.ihx, self.ihy, self.idz, self.iez)


@dataclass
class FieldState3D:
    """Full Yee lattice in 3D, flux-density formulation.

    Component positions follow the standard staggering: ex(i+1/2,j,k),
    ey(i,j+1/2,k), ez(i,j,k+1/2), hx(i,j+1/2,k+1/2), hy(i+1/2,j,k+1/2),
    hz(i+1/2,j+1/2,k).  dx_/dy_/dz_ are the flux densities (the trailing
    underscore keeps them clear of the cell-size name), idx/idy/idz and
    ihx/ihy/ihz the PML accumulators, iex/iey/iez the loss accumulators.
    """

    dx_: np.ndarray
    dy_: np.ndarray
    dz_: np.ndarray
    ex: np.ndarray
    ey: np.ndarray
    ez: np.ndarray
    hx: np.ndarray
    hy: np.ndarray
    hz: np.ndarray
    idx: np.ndarray
    idy: np.ndarray
    idz: np.ndarray
    ihx: np.ndarray
    ihy: np.ndarray
    ihz: np.ndarray
    iex: np.ndarray
    iey: np.ndarray
    iez: np.ndarray

    @classmethod
    def zeros(cls, nx: int, ny: int, nz: int) -> "FieldState3D":
        mk = lambda: np.zeros((nx, ny, nz))
        return cls(dx_=mk(), dy_=mk(), dz_=mk(),
                   ex=mk(), ey=mk(), ez=mk(),
                   hx=mk(), hy=mk(), hz=mk(),
                   idx=mk(), idy=mk(), idz=mk(),
                   ihx=mk(), ihy=mk(), ihz=mk(),
                   iex=mk(), iey=mk(), iez=mk())

    def arrays(self):
        return (self.dx_, self.dy_, self.dz_, self.ex, self.ey, self.ez,
                self.hx, self.hy, self.hz, self.idx, self.idy, self.idz,
                self.ihx, self.ihy, self.ihz, self.iex, self.iey, self.iez)
