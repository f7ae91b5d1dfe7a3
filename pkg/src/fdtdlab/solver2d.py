"""2D TM-mode Yee solver with PML, TF/SF plane waves, and dielectric
cylinder scatterers.

The solver uses the flux-density formulation: the curl of H advances Dz,
a per-cell material map turns Dz into Ez (with a loss accumulator for
conductive cells), and the curl of Ez advances Hx/Hy.  The perfectly
matched layer enters through per-axis coefficient vectors applied
tensor-product style, plus curl accumulators on the magnetic components.

Conventions: array element (i, j) of hx sits at (i, j+1/2), of hy at
(i+1/2, j).  Coefficient vectors sampled at integer positions form the
g-families, those at half positions the f-families; each update samples
its coefficients at the geometric position of the component it advances.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    FieldState2D,
    GridSpec,
    MaterialMap,
    NumericError,
    SourceSpec,
    ValidationError,
    compile_materials,
)
from .solver1d import SOFT_SCALE

# Cubic conductivity grading with maximum sigma*dt/(2 eps0) = 0.333 at
# the outer edge; the canonical choice for this accumulator PML.
PML_PROFILE_MAX = 0.333
PML_PROFILE_POWER = 3


@dataclass
class PmlCoefficients2D:
    """Per-index PML coefficient vectors for both axes.

    For a grading profile x(d), the triple at depth d is
    g1 = x, g2 = 1/(1+x), g3 = (1-x)/(1+x); interior entries are the
    identity (0, 1, 1).  g-vectors are sampled at integer positions,
    f-vectors at half positions.
    """

    gi1: np.ndarray
    gi2: np.ndarray
    gi3: np.ndarray
    fi1: np.ndarray
    fi2: np.ndarray
    fi3: np.ndarray
    gj1: np.ndarray
    gj2: np.ndarray
    gj3: np.ndarray
    fj1: np.ndarray
    fj2: np.ndarray
    fj3: np.ndarray
    npml: int

    @property
    def is_identity(self) -> bool:
        return self.npml == 0


def _profile(depth_cells: float, npml: int) -> float:
    return PML_PROFILE_MAX * (depth_cells / npml) ** PML_PROFILE_POWER


def _axis_coefficients(n: int, npml: int):
    g1 = np.zeros(n)
    g2 = np.ones(n)
    g3 = np.ones(n)
    f1 = np.zeros(n)
    f2 = np.ones(n)
    f3 = np.ones(n)
    for idx in range(npml):
        depth = npml - idx  # depth npml at the outer edge, 1 at the inner edge
        xn = _profile(depth, npml)
        for pos in (idx, n - 1 - idx):
            g1[pos] = xn
            g2[pos] = 1.0 / (1.0 + xn)
            g3[pos] = (1.0 - xn) / (1.0 + xn)
        xnf = _profile(depth - 0.5, npml)
        for pos in (idx, n - 2 - idx):
            f1[pos] = xnf
            f2[pos] = 1.0 / (1.0 + xnf)
            f3[pos] = (1.0 - xnf) / (1.0 + xnf)
    return g1, g2, g3, f1, f2, f3


def build_pml_2d(npml: int, grid: GridSpec) -> PmlCoefficients2D:
    """Build the PML coefficient vectors for an ``npml``-cell layer.

    npml = 0 yields identity coefficients everywhere (no PML).
    """
    nx, ny = grid.cells_per_axis
    if npml < 0 or npml > min(nx, ny) // 4:
        raise ValidationError(
            f"npml={npml} outside [0, min(cells)/4 = {min(nx, ny) // 4}]"
        )
    gi = _axis_coefficients(nx, npml)
    gj = _axis_coefficients(ny, npml)
    return PmlCoefficients2D(
        gi1=gi[0], gi2=gi[1], gi3=gi[2], fi1=gi[3], fi2=gi[4], fi3=gi[5],
        gj1=gj[0], gj2=gj[1], gj3=gj[2], fj1=gj[3], fj2=gj[4], fj3=gj[5],
        npml=npml,
    )


@dataclass
class CylinderSpec:
    """Dielectric cylinder: center (x, y) in meters, radius in meters."""

    center: tuple
    radius: float
    eps_r: float = 1.0
    sigma: float = 0.0


def rasterize_cylinder(spec: CylinderSpec, grid: GridSpec,
                       npml: int = 0) -> MaterialMap:
    """Assign (eps_r, sigma) to every cell whose center lies inside the
    cylinder; everything else stays free space.

    Cell (i, j) is centered at (i*dx, j*dx).  The cylinder must sit
    strictly inside the non-PML interior.
    """
    nx, ny = grid.cells_per_axis
    dx = grid.dx
    cx, cy = spec.center
    if spec.radius < 0:
        raise ValidationError("cylinder radius must be non-negative")
    # Non-PML nodes span [npml*dx, (N-1-npml)*dx]; tangency counts as overlap.
    if spec.radius > 0 and not (
        cx - spec.radius > npml * dx and cx + spec.radius < (nx - 1 - npml) * dx
        and cy - spec.radius > npml * dx and cy + spec.radius < (ny - 1 - npml) * dx
    ):
        raise ValidationError(
            f"cylinder (center {spec.center}, radius {spec.radius}) overlaps "
            f"the PML / grid boundary"
        )
    materials = MaterialMap.free_space((nx, ny))
    if spec.radius == 0.0:
        return materials
    xs = np.arange(nx)[:, None] * dx
    ys = np.arange(ny)[None, :] * dx
    mask = (xs - cx) ** 2 + (ys - cy) ** 2 <= spec.radius ** 2
    materials.eps_r = np.where(mask, spec.eps_r, 1.0)
    materials.sigma = np.where(mask, spec.sigma, 0.0)
    return materials


@dataclass
class TfsfBox2D:
    """Total-field region [ia..ib] x [ja..jb] plus the auxiliary 1D
    incident buffer.

    The buffer is a 1D FDTD line along the j axis, hard-driven at its
    first interior cell and terminated by the exact two-level absorbing
    boundary; the plane wave enters the box at row ja and is subtracted
    at row jb.
    """

    ia: int
    ib: int
    ja: int
    jb: int
    inc_ez: np.ndarray = None
    inc_hx: np.ndarray = None
    _low: list = field(default_factory=lambda: [0.0, 0.0])
    _high: list = field(default_factory=lambda: [0.0, 0.0])

    def validate(self, grid: GridSpec, npml: int = 0) -> None:
        nx, ny = grid.cells_per_axis
        ok = (2 <= self.ia < self.ib <= nx - 3
              and 2 <= self.ja < self.jb <= ny - 3)
        if not ok:
            raise ValidationError(
                f"TF/SF bounds ({self.ia},{self.ib},{self.ja},{self.jb}) "
                f"outside [2, N-3] for grid {grid.cells_per_axis}"
            )
        if npml and (self.ia <= npml + 1 or self.ib >= nx - 2 - npml
                     or self.ja <= npml + 1 or self.jb >= ny - 2 - npml):
            raise ValidationError("TF/SF box must sit inside the non-PML interior")

    def attach(self, grid: GridSpec) -> None:
        ny = grid.cells_per_axis[1]
        if self.inc_ez is None:
            self.inc_ez = np.zeros(ny)
            self.inc_hx = np.zeros(ny)

    def step_incident(self, source: SourceSpec, step: int, dt: float) -> None:
        """Advance the incident buffer one full time step."""
        ez, hx = self.inc_ez, self.inc_hx
        ez[1:] += 0.5 * (hx[:-1] - hx[1:])
        ez[1] = source.waveform(step, dt)
        ez[0] = self._low.pop(0)
        self._low.append(float(ez[1]))
        ez[-1] = self._high.pop(0)
        self._high.append(float(ez[-2]))
        hx[:-1] += 0.5 * (ez[:-1] - ez[1:])


def _bands(n_rows: int, threads: int):
    edges = np.linspace(0, n_rows, threads + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


_POOLS = {}


def _pool(threads: int) -> ThreadPoolExecutor:
    # pools live for the process; concurrent.futures joins them at exit
    pool = _POOLS.get(threads)
    if pool is None:
        pool = _POOLS.setdefault(threads, ThreadPoolExecutor(max_workers=threads))
    return pool


def _run_banded(fn, n_rows: int, threads: int) -> None:
    """Apply ``fn(lo, hi)`` over disjoint row bands, in parallel when
    threads > 1.  Bands write disjoint rows, so the result is identical
    to the single-threaded sweep bit for bit."""
    if threads <= 1:
        fn(0, n_rows)
        return
    list(_pool(threads).map(lambda ab: fn(*ab), _bands(n_rows, threads)))


def update_dz_2d(state: FieldState2D, pml: PmlCoefficients2D,
                 threads: int = 1) -> None:
    """Advance Dz from the curl of H over the interior rows/columns."""
    dz, hx, hy = state.dz, state.hx, state.hy
    nx = dz.shape[0]

    # Rows/columns 1..N-2; both extreme node layers stay pinned (PEC),
    # which keeps the truncated lattice mirror-symmetric.
    if pml.is_identity:
        def band(lo, hi):
            lo = max(lo, 1)
            hi = min(hi, nx - 1)
            if lo >= hi:
                return
            dz[lo:hi, 1:-1] += 0.5 * (hy[lo:hi, 1:-1] - hy[lo - 1:hi - 1, 1:-1]
                                      - hx[lo:hi, 1:-1] + hx[lo:hi, :-2])
    else:
        gi2 = pml.gi2[:, None]
        gi3 = pml.gi3[:, None]
        gj2 = pml.gj2[None, 1:-1]
        gj3 = pml.gj3[None, 1:-1]

        def band(lo, hi):
            lo = max(lo, 1)
            hi = min(hi, nx - 1)
            if lo >= hi:
                return
            curl = (hy[lo:hi, 1:-1] - hy[lo - 1:hi - 1, 1:-1]
                    - hx[lo:hi, 1:-1] + hx[lo:hi, :-2])
            dz[lo:hi, 1:-1] = (gi3[lo:hi] * gj3 * dz[lo:hi, 1:-1]
                               + 0.5 * gi2[lo:hi] * gj2 * curl)

    _run_banded(band, nx, threads)


def update_e_from_d_2d(state: FieldState2D, materials: MaterialMap,
                       threads: int = 1) -> None:
    """Ez = ga (Dz - acc); acc += gb Ez."""
    dz, ez, iez = state.dz, state.ez, state.iez
    ga, gb = materials.ga, materials.gb

    def band(lo, hi):
        ez[lo:hi] = ga[lo:hi] * (dz[lo:hi] - iez[lo:hi])
        iez[lo:hi] += gb[lo:hi] * ez[lo:hi]

    _run_banded(band, dz.shape[0], threads)


def update_h_2d(state: FieldState2D, pml: PmlCoefficients2D,
                threads: int = 1) -> None:
    """Advance Hx and Hy from the curl of Ez.

    With an identity PML the curl accumulators are left untouched (they
    stay identically zero) and the update reduces exactly to the plain
    free-space stencil.
    """
    ez, hx, hy, ihx, ihy = state.ez, state.hx, state.hy, state.ihx, state.ihy
    nx = ez.shape[0]

    if pml.is_identity:
        def band_hx(lo, hi):
            hx[lo:hi, :-1] += 0.5 * (ez[lo:hi, :-1] - ez[lo:hi, 1:])

        def band_hy(lo, hi):
            hi = min(hi, nx - 1)
            if lo >= hi:
                return
            hy[lo:hi, :] += 0.5 * (ez[lo + 1:hi + 1, :] - ez[lo:hi, :])
    else:
        fj2 = pml.fj2[None, :-1]
        fj3 = pml.fj3[None, :-1]
        gi1 = pml.gi1[:, None]
        fi2 = pml.fi2[:, None]
        fi3 = pml.fi3[:, None]
        gj1 = pml.gj1[None, :]

        def band_hx(lo, hi):
            curl = ez[lo:hi, :-1] - ez[lo:hi, 1:]
            ihx[lo:hi, :-1] += curl
            hx[lo:hi, :-1] = (fj3 * hx[lo:hi, :-1]
                              + fj2 * (0.5 * curl + gi1[lo:hi] * ihx[lo:hi, :-1]))

        def band_hy(lo, hi):
            hi = min(hi, nx - 1)
            if lo >= hi:
                return
            curl = ez[lo:hi, :] - ez[lo + 1:hi + 1, :]
            ihy[lo:hi, :] += curl
            hy[lo:hi, :] = (fi3[lo:hi] * hy[lo:hi, :]
                            - fi2[lo:hi] * (0.5 * curl + gj1 * ihy[lo:hi, :]))

    _run_banded(band_hx, nx, threads)
    _run_banded(band_hy, nx, threads)


def step_tm_2d(state: FieldState2D, pml: PmlCoefficients2D,
               materials: MaterialMap, threads: int = 1) -> FieldState2D:
    """One full TM time step: Dz update, E-from-D, H updates."""
    update_dz_2d(state, pml, threads)
    update_e_from_d_2d(state, materials, threads)
    update_h_2d(state, pml, threads)
    return state


def tfsf_apply_2d(state: FieldState2D, box: TfsfBox2D, source: SourceSpec,
                  step: int, dt: float) -> FieldState2D:
    """Apply the plane-wave seam corrections for one time step.

    Order matters: the Dz seams consume the incident Hx of the previous
    half step, then the buffer advances, then the H seams consume the
    fresh incident Ez.  All six seams add/subtract 0.5 times the
    incident value just across the boundary, completing the curl
    stencils that straddle the total-field box.
    """
    ia, ib, ja, jb = box.ia, box.ib, box.ja, box.jb
    dz, hx, hy = state.dz, state.hx, state.hy
    inc_ez, inc_hx = box.inc_ez, box.inc_hx

    dz[ia:ib + 1, ja] += 0.5 * inc_hx[ja - 1]
    dz[ia:ib + 1, jb] -= 0.5 * inc_hx[jb]

    box.step_incident(source, step, dt)

    hx[ia:ib + 1, ja - 1] += 0.5 * inc_ez[ja]
    hx[ia:ib + 1, jb] -= 0.5 * inc_ez[jb]
    hy[ia - 1, ja:jb + 1] -= 0.5 * inc_ez[ja:jb + 1]
    hy[ib, ja:jb + 1] += 0.5 * inc_ez[ja:jb + 1]
    return state


@dataclass
class Scenario2D:
    """A 2D run description.

    ``source.location`` is an (i, j) tuple for a point source or the
    string "tfsf" for plane-wave injection through ``tfsf_box``
    (ia, ib, ja, jb).  ``cylinders`` holds CylinderSpec objects.
    """

    grid: GridSpec
    source: SourceSpec
    npml: int = 8
    cylinders: list = field(default_factory=list)
    tfsf_box: tuple = None
    probes: list = field(default_factory=list)
    snapshot_steps: list = field(default_factory=list)
    threads: int = 1

    def __post_init__(self):
        if self.grid.dims != 2:
            raise ValidationError("Scenario2D needs a 2D grid")
        nx, ny = self.grid.cells_per_axis
        if self.source.location is None:
            self.source.location = (nx // 2, ny // 2)
        if self.source.location == "tfsf":
            if self.tfsf_box is None:
                m = self.npml + 4
                self.tfsf_box = (m, nx - 1 - m, m, ny - 1 - m)
        else:
            si, sj = self.source.location
            if not (1 <= si <= nx - 2 and 1 <= sj <= ny - 2):
                raise ValidationError(f"source location {self.source.location} "
                                      f"outside grid interior")
        for (pi, pj) in self.probes:
            if not (0 <= pi < nx and 0 <= pj < ny):
                raise ValidationError(f"probe ({pi},{pj}) outside grid")


@dataclass
class Result2D:
    probes: dict
    snapshots: dict
    energy_interior: np.ndarray
    incident: np.ndarray = None


def interior_energy_2d(state: FieldState2D, npml: int) -> float:
    """Sum of ez^2 + hx^2 + hy^2 over the non-PML interior."""
    sl = slice(npml, state.ez.shape[0] - npml), slice(npml, state.ez.shape[1] - npml)
    ez, hx, hy = state.ez[sl], state.hx[sl], state.hy[sl]
    return float(np.sum(ez * ez) + np.sum(hx * hx) + np.sum(hy * hy))


def run_2d(scenario: Scenario2D) -> Result2D:
    """Execute a 2D scenario and collect probes/snapshots.

    Per-step sequence: Dz update, source (point injection or TF/SF
    seams + incident buffer), E-from-D, H updates.  Probes record ez at
    the end of each step.
    """
    grid = scenario.grid
    nx, ny = grid.cells_per_axis
    state = FieldState2D.zeros(nx, ny)
    pml = build_pml_2d(scenario.npml, grid)

    materials = MaterialMap.free_space((nx, ny))
    for cyl in scenario.cylinders:
        m = rasterize_cylinder(cyl, grid, scenario.npml)
        inside = (m.eps_r != 1.0) | (m.sigma != 0.0)
        materials.eps_r = np.where(inside, m.eps_r, materials.eps_r)
        materials.sigma = np.where(inside, m.sigma, materials.sigma)
    compile_materials(materials, grid.dt)

    box = None
    tfsf = scenario.source.location == "tfsf"
    if tfsf:
        box = TfsfBox2D(*scenario.tfsf_box)
        box.validate(grid, scenario.npml)
        box.attach(grid)
        for cyl in scenario.cylinders:
            cx, cy = cyl.center
            if not (box.ia * grid.dx < cx - cyl.radius
                    and cx + cyl.radius < box.ib * grid.dx
                    and box.ja * grid.dx < cy - cyl.radius
                    and cy + cyl.radius < box.jb * grid.dx):
                raise ValidationError("cylinder must sit inside the total-field box")

    probes = {tuple(p): np.zeros(grid.n_steps + 1) for p in scenario.probes}
    snapshots = {}
    wanted = set(int(s) for s in scenario.snapshot_steps)
    energy = np.zeros(grid.n_steps + 1)
    incident = np.zeros(grid.n_steps + 1) if tfsf else None

    for n in range(1, grid.n_steps + 1):
        update_dz_2d(state, pml, scenario.threads)
        if tfsf:
            tfsf_apply_2d(state, box, scenario.source, n, grid.dt)
        else:
            si, sj = scenario.source.location
            value = scenario.source.waveform(n, grid.dt)
            if scenario.source.injection == "soft":
                state.dz[si, sj] += SOFT_SCALE * value
            else:
                state.dz[si, sj] = value
        update_e_from_d_2d(state, materials, scenario.threads)
        update_h_2d(state, pml, scenario.threads)

        if not np.isfinite(state.ez).all():
            bad = tuple(int(v) for v in np.argwhere(~np.isfinite(state.ez))[0])
            raise NumericError(
                f"non-finite ez at step {n}, cell {bad}", step=n, index=bad,
            )
        for p in probes:
            probes[p][n] = state.ez[p]
        energy[n] = interior_energy_2d(state, scenario.npml)
        if tfsf:
            incident[n] = box.inc_ez[(box.ja + box.jb) // 2]
        if n in wanted:
            snapshots[n] = state.ez.copy()

    return Result2D(probes=probes, snapshots=snapshots,
                    energy_interior=energy, incident=incident)
