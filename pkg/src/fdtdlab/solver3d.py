"""3D Yee solver in the flux-density formulation with PML, TF/SF plane
waves, and dielectric sphere scatterers.

Each D component is advanced by a four-term transverse H curl, weighted
multiplicatively by the PML coefficients of its two transverse axes and
corrected by a curl accumulator along its own axis; the H components
mirror that pattern with the staggered (f) coefficient families.  The
incident plane wave travels along +y with Ez polarization, driven by the
same 1D buffer the 2D solver uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    FieldState3D,
    GridSpec,
    MaterialMap,
    NumericError,
    SourceSpec,
    ValidationError,
    compile_materials,
)
from .solver1d import SOFT_SCALE
from .solver2d import PmlCoefficients2D, TfsfBox2D, _axis_coefficients


@dataclass
class PmlCoefficients3D:
    """Coefficient vectors for the three axes; see PmlCoefficients2D."""

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
    gk1: np.ndarray
    gk2: np.ndarray
    gk3: np.ndarray
    fk1: np.ndarray
    fk2: np.ndarray
    fk3: np.ndarray
    npml: int

    @property
    def is_identity(self) -> bool:
        return self.npml == 0


def build_pml_3d(npml: int, grid: GridSpec) -> PmlCoefficients3D:
    """Tensor-product extension of the 2D PML to three index families."""
    nx, ny, nz = grid.cells_per_axis
    if npml < 0 or npml > min(nx, ny, nz) // 4:
        raise ValidationError(
            f"npml={npml} outside [0, min(cells)/4 = {min(nx, ny, nz) // 4}]"
        )
    gi = _axis_coefficients(nx, npml)
    gj = _axis_coefficients(ny, npml)
    gk = _axis_coefficients(nz, npml)
    return PmlCoefficients3D(
        gi1=gi[0], gi2=gi[1], gi3=gi[2], fi1=gi[3], fi2=gi[4], fi3=gi[5],
        gj1=gj[0], gj2=gj[1], gj3=gj[2], fj1=gj[3], fj2=gj[4], fj3=gj[5],
        gk1=gk[0], gk2=gk[1], gk3=gk[2], fk1=gk[3], fk2=gk[4], fk3=gk[5],
        npml=npml,
    )


@dataclass
class SphereSpec:
    """Dielectric sphere: center (x, y, z) in meters, radius in meters."""

    center: tuple
    radius: float
    eps_r: float = 1.0
    sigma: float = 0.0


def rasterize_sphere(spec: SphereSpec, grid: GridSpec,
                     npml: int = 0) -> MaterialMap:
    """Cell-center point-in-sphere material assignment.

    A sphere touching (tangent to) the non-PML interior boundary is
    rejected.
    """
    nx, ny, nz = grid.cells_per_axis
    dx = grid.dx
    cx, cy, cz = spec.center
    if spec.radius < 0:
        raise ValidationError("sphere radius must be non-negative")
    if spec.radius > 0:
        for c, n in ((cx, nx), (cy, ny), (cz, nz)):
            if not (c - spec.radius > npml * dx
                    and c + spec.radius < (n - 1 - npml) * dx):
                raise ValidationError(
                    f"sphere (center {spec.center}, radius {spec.radius}) "
                    f"overlaps or touches the PML / grid boundary"
                )
    materials = MaterialMap.free_space((nx, ny, nz))
    if spec.radius == 0.0:
        return materials
    xs = np.arange(nx)[:, None, None] * dx
    ys = np.arange(ny)[None, :, None] * dx
    zs = np.arange(nz)[None, None, :] * dx
    mask = (xs - cx) ** 2 + (ys - cy) ** 2 + (zs - cz) ** 2 <= spec.radius ** 2
    materials.eps_r = np.where(mask, spec.eps_r, 1.0)
    materials.sigma = np.where(mask, spec.sigma, 0.0)
    return materials


@dataclass
class TfsfBox3D:
    """Total-field cuboid [ia..ib] x [ja..jb] x [ka..kb] with the 1D
    incident buffer of the 2D scheme (plane wave along +y, Ez
    polarization)."""

    ia: int
    ib: int
    ja: int
    jb: int
    ka: int
    kb: int
    line: TfsfBox2D = None

    def validate(self, grid: GridSpec, npml: int = 0) -> None:
        nx, ny, nz = grid.cells_per_axis
        ok = (2 <= self.ia < self.ib <= nx - 3
              and 2 <= self.ja < self.jb <= ny - 3
              and 2 <= self.ka < self.kb <= nz - 3)
        if not ok:
            raise ValidationError(
                f"TF/SF bounds {(self.ia, self.ib, self.ja, self.jb, self.ka, self.kb)} "
                f"outside [2, N-3] for grid {grid.cells_per_axis}"
            )
        if npml:
            for lo, hi, n in ((self.ia, self.ib, nx), (self.ja, self.jb, ny),
                              (self.ka, self.kb, nz)):
                if lo <= npml + 1 or hi >= n - 2 - npml:
                    raise ValidationError(
                        "TF/SF box must sit inside the non-PML interior"
                    )

    def attach(self, grid: GridSpec) -> None:
        if self.line is None:
            self.line = TfsfBox2D(self.ia, self.ib, self.ja, self.jb)
            self.line.inc_ez = np.zeros(grid.cells_per_axis[1])
            self.line.inc_hx = np.zeros(grid.cells_per_axis[1])


def update_d_3d(state: FieldState3D, pml: PmlCoefficients3D) -> None:
    """Advance the three flux densities from the transverse H curls."""
    dx_, dy_, dz_ = state.dx_, state.dy_, state.dz_
    hx, hy, hz = state.hx, state.hy, state.hz

    # Interior ranges [1:-1] on the curl axes keep the lattice mirror
    # symmetric: both extreme node layers act as identical (PEC) walls.
    if pml.is_identity:
        dx_[:, 1:-1, 1:-1] += 0.5 * (hz[:, 1:-1, 1:-1] - hz[:, :-2, 1:-1]
                                     - hy[:, 1:-1, 1:-1] + hy[:, 1:-1, :-2])
        dy_[1:-1, :, 1:-1] += 0.5 * (hx[1:-1, :, 1:-1] - hx[1:-1, :, :-2]
                                     - hz[1:-1, :, 1:-1] + hz[:-2, :, 1:-1])
        dz_[1:-1, 1:-1, :] += 0.5 * (hy[1:-1, 1:-1, :] - hy[:-2, 1:-1, :]
                                     - hx[1:-1, 1:-1, :] + hx[1:-1, :-2, :])
        return

    idx, idy, idz = state.idx, state.idy, state.idz

    # Accumulator weights sample the profile at each component's own
    # (half-integer) position, hence the f families.
    curl = (hz[:, 1:-1, 1:-1] - hz[:, :-2, 1:-1]
            - hy[:, 1:-1, 1:-1] + hy[:, 1:-1, :-2])
    idx[:, 1:-1, 1:-1] += curl
    dx_[:, 1:-1, 1:-1] = (pml.gj3[None, 1:-1, None] * pml.gk3[None, None, 1:-1]
                          * dx_[:, 1:-1, 1:-1]
                          + 0.5 * pml.gj2[None, 1:-1, None]
                          * pml.gk2[None, None, 1:-1]
                          * (curl + pml.fi1[:, None, None] * idx[:, 1:-1, 1:-1]))

    curl = (hx[1:-1, :, 1:-1] - hx[1:-1, :, :-2]
            - hz[1:-1, :, 1:-1] + hz[:-2, :, 1:-1])
    idy[1:-1, :, 1:-1] += curl
    dy_[1:-1, :, 1:-1] = (pml.gi3[1:-1, None, None] * pml.gk3[None, None, 1:-1]
                          * dy_[1:-1, :, 1:-1]
                          + 0.5 * pml.gi2[1:-1, None, None]
                          * pml.gk2[None, None, 1:-1]
                          * (curl + pml.fj1[None, :, None] * idy[1:-1, :, 1:-1]))

    curl = (hy[1:-1, 1:-1, :] - hy[:-2, 1:-1, :]
            - hx[1:-1, 1:-1, :] + hx[1:-1, :-2, :])
    idz[1:-1, 1:-1, :] += curl
    dz_[1:-1, 1:-1, :] = (pml.gi3[1:-1, None, None] * pml.gj3[None, 1:-1, None]
                          * dz_[1:-1, 1:-1, :]
                          + 0.5 * pml.gi2[1:-1, None, None]
                          * pml.gj2[None, 1:-1, None]
                          * (curl + pml.fk1[None, None, :] * idz[1:-1, 1:-1, :]))


def update_e_from_d_3d(state: FieldState3D, materials: MaterialMap) -> None:
    ga, gb = materials.ga, materials.gb
    state.ex[:] = ga * (state.dx_ - state.iex)
    state.iex += gb * state.ex
    state.ey[:] = ga * (state.dy_ - state.iey)
    state.iey += gb * state.ey
    state.ez[:] = ga * (state.dz_ - state.iez)
    state.iez += gb * state.ez


def update_h_3d(state: FieldState3D, pml: PmlCoefficients3D) -> None:
    """Advance the three H components from the E curls."""
    ex, ey, ez = state.ex, state.ey, state.ez
    hx, hy, hz = state.hx, state.hy, state.hz

    if pml.is_identity:
        hx[:, :-1, :-1] += 0.5 * (ey[:, :-1, 1:] - ey[:, :-1, :-1]
                                  - ez[:, 1:, :-1] + ez[:, :-1, :-1])
        hy[:-1, :, :-1] += 0.5 * (ez[1:, :, :-1] - ez[:-1, :, :-1]
                                  - ex[:-1, :, 1:] + ex[:-1, :, :-1])
        hz[:-1, :-1, :] += 0.5 * (ex[:-1, 1:, :] - ex[:-1, :-1, :]
                                  - ey[1:, :-1, :] + ey[:-1, :-1, :])
        return

    ihx, ihy, ihz = state.ihx, state.ihy, state.ihz

    curl = (ey[:, :-1, 1:] - ey[:, :-1, :-1] - ez[:, 1:, :-1] + ez[:, :-1, :-1])
    ihx[:, :-1, :-1] += curl
    hx[:, :-1, :-1] = (pml.fj3[None, :-1, None] * pml.fk3[None, None, :-1]
                       * hx[:, :-1, :-1]
                       + 0.5 * pml.fj2[None, :-1, None] * pml.fk2[None, None, :-1]
                       * (curl + pml.gi1[:, None, None] * ihx[:, :-1, :-1]))

    curl = (ez[1:, :, :-1] - ez[:-1, :, :-1] - ex[:-1, :, 1:] + ex[:-1, :, :-1])
    ihy[:-1, :, :-1] += curl
    hy[:-1, :, :-1] = (pml.fi3[:-1, None, None] * pml.fk3[None, None, :-1]
                       * hy[:-1, :, :-1]
                       + 0.5 * pml.fi2[:-1, None, None] * pml.fk2[None, None, :-1]
                       * (curl + pml.gj1[None, :, None] * ihy[:-1, :, :-1]))

    curl = (ex[:-1, 1:, :] - ex[:-1, :-1, :] - ey[1:, :-1, :] + ey[:-1, :-1, :])
    ihz[:-1, :-1, :] += curl
    hz[:-1, :-1, :] = (pml.fi3[:-1, None, None] * pml.fj3[None, :-1, None]
                       * hz[:-1, :-1, :]
                       + 0.5 * pml.fi2[:-1, None, None] * pml.fj2[None, :-1, None]
                       * (curl + pml.gk1[None, None, :] * ihz[:-1, :-1, :]))


def step_3d(state: FieldState3D, pml: PmlCoefficients3D,
            materials: MaterialMap) -> FieldState3D:
    """One full 3D step: D updates, E-from-D, H updates."""
    update_d_3d(state, pml)
    update_e_from_d_3d(state, materials)
    update_h_3d(state, pml)
    return state


def tfsf_apply_3d(state: FieldState3D, box: TfsfBox3D, source: SourceSpec,
                  step: int, dt: float) -> FieldState3D:
    """Seam corrections on the six cuboid faces.

    The incident wave carries Ez(y) and Hx(y) only, so four field arrays
    need corrections: Dz and Hx across the j faces, Hy across the i
    faces (as in 2D, extended along z), and Dy across the k faces where
    its stencil straddles the z boundaries of the box.
    """
    ia, ib, ja, jb, ka, kb = box.ia, box.ib, box.ja, box.jb, box.ka, box.kb
    inc_ez, inc_hx = box.line.inc_ez, box.line.inc_hx
    dz_, dy_, hx, hy = state.dz_, state.dy_, state.hx, state.hy

    dz_[ia:ib + 1, ja, ka:kb + 1] += 0.5 * inc_hx[ja - 1]
    dz_[ia:ib + 1, jb, ka:kb + 1] -= 0.5 * inc_hx[jb]

    dy_[ia:ib + 1, ja:jb, ka] -= 0.5 * inc_hx[None, ja:jb]
    dy_[ia:ib + 1, ja:jb, kb + 1] += 0.5 * inc_hx[None, ja:jb]

    box.line.step_incident(source, step, dt)

    hx[ia:ib + 1, ja - 1, ka:kb + 1] += 0.5 * inc_ez[ja]
    hx[ia:ib + 1, jb, ka:kb + 1] -= 0.5 * inc_ez[jb]

    hy[ia - 1, ja:jb + 1, ka:kb + 1] -= 0.5 * inc_ez[ja:jb + 1, None]
    hy[ib, ja:jb + 1, ka:kb + 1] += 0.5 * inc_ez[ja:jb + 1, None]
    return state


@dataclass
class SliceSpec:
    """Which 2D snapshot slices to record: plane in {"xy","xz","yz"},
    offset along the remaining axis, component name, and the steps."""

    plane: str = "xy"
    offset: int = None
    component: str = "ez"
    steps: list = field(default_factory=list)

    def extract(self, state: FieldState3D) -> np.ndarray:
        name = {"dx": "dx_", "dy": "dy_", "dz": "dz_"}.get(self.component,
                                                           self.component)
        arr = getattr(state, name)
        off = self.offset
        if self.plane == "xy":
            return arr[:, :, off].copy()
        if self.plane == "xz":
            return arr[:, off, :].copy()
        if self.plane == "yz":
            return arr[off, :, :].copy()
        raise ValidationError(f"unknown slice plane {self.plane!r}")


@dataclass
class Scenario3D:
    """A 3D run: grid, source (point or tfsf), optional spheres,
    probes as (i, j, k) tuples, and slice snapshots."""

    grid: GridSpec
    source: SourceSpec
    npml: int = 8
    spheres: list = field(default_factory=list)
    tfsf_box: tuple = None
    probes: list = field(default_factory=list)
    slices: SliceSpec = None
    symmetric_source: bool = False

    def __post_init__(self):
        if self.grid.dims != 3:
            raise ValidationError("Scenario3D needs a 3D grid")
        nx, ny, nz = self.grid.cells_per_axis
        if self.source.location is None:
            self.source.location = (nx // 2, ny // 2, nz // 2)
        if self.source.location == "tfsf":
            if self.tfsf_box is None:
                m = self.npml + 4
                self.tfsf_box = (m, nx - 1 - m, m, ny - 1 - m, m, nz - 1 - m)
        if self.slices is not None and self.slices.offset is None:
            self.slices.offset = self.grid.cells_per_axis[2] // 2


@dataclass
class Result3D:
    probes: dict
    slices: dict
    max_ez: np.ndarray


def run_3d(scenario: Scenario3D) -> Result3D:
    """Execute a 3D scenario; mirrors the 2D per-step sequence.

    With ``symmetric_source`` the soft point injection is spread evenly
    over the 2x2 block of cells {i0-1,i0} x {j0-1,j0} at the source k,
    which centers the excitation exactly on the lattice mirror planes of
    an even-sized grid.
    """
    grid = scenario.grid
    nx, ny, nz = grid.cells_per_axis
    state = FieldState3D.zeros(nx, ny, nz)
    pml = build_pml_3d(scenario.npml, grid)

    materials = MaterialMap.free_space((nx, ny, nz))
    for sph in scenario.spheres:
        m = rasterize_sphere(sph, grid, scenario.npml)
        inside = (m.eps_r != 1.0) | (m.sigma != 0.0)
        materials.eps_r = np.where(inside, m.eps_r, materials.eps_r)
        materials.sigma = np.where(inside, m.sigma, materials.sigma)
    compile_materials(materials, grid.dt)

    box = None
    tfsf = scenario.source.location == "tfsf"
    if tfsf:
        box = TfsfBox3D(*scenario.tfsf_box)
        box.validate(grid, scenario.npml)
        box.attach(grid)

    probes = {tuple(p): np.zeros(grid.n_steps + 1) for p in scenario.probes}
    slices = {}
    wanted = set(int(s) for s in scenario.slices.steps) if scenario.slices else set()
    max_ez = np.zeros(grid.n_steps + 1)

    for n in range(1, grid.n_steps + 1):
        update_d_3d(state, pml)
        if tfsf:
            tfsf_apply_3d(state, box, scenario.source, n, grid.dt)
        else:
            value = scenario.source.waveform(n, grid.dt)
            si, sj, sk = scenario.source.location
            if scenario.symmetric_source:
                block = np.s_[si - 1:si + 1, sj - 1:sj + 1, sk]
                if scenario.source.injection == "soft":
                    state.dz_[block] += SOFT_SCALE * value / 4.0
                else:
                    state.dz_[block] = value
            elif scenario.source.injection == "soft":
                state.dz_[si, sj, sk] += SOFT_SCALE * value
            else:
                state.dz_[si, sj, sk] = value
        update_e_from_d_3d(state, materials)
        update_h_3d(state, pml)

        if not np.isfinite(state.ez).all():
            bad = tuple(int(v) for v in np.argwhere(~np.isfinite(state.ez))[0])
            raise NumericError(
                f"non-finite ez at step {n}, cell {bad}", step=n, index=bad,
            )
        for p in probes:
            probes[p][n] = state.ez[p]
        max_ez[n] = float(np.abs(state.ez).max())
        if n in wanted:
            slices[n] = scenario.slices.extract(state)

    return Result3D(probes=probes, slices=slices, max_ez=max_ez)
