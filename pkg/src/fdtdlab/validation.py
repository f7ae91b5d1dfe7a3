"""Oracle-comparison validation suites.

Each suite runs a fixed scenario against its independent reference
(closed-form solution, exact-arithmetic series, reference stencil, or an
enlarged-domain run) and reports measured errors against the declared
thresholds.  The acceptance test suite and the command-line ``validate``
subcommand both call these functions, so the numbers printed there are
the numbers asserted in CI.

Two checks are expected to fail by construction and are marked
``known_defect``: the two-time-level boundary leaves dispersive residue
far above 1e-10 (the interior scheme is dispersive at Courant 1/2), and
the accumulator PML at the fixed cubic 0.333 profile reflects a few
percent from its corners.  They are reported with their measured values
rather than silently loosened.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from . import analytic, antenna, oracles
from .core import C0, FieldState2D, FieldState3D, GridSpec, MaterialMap, \
    SourceSpec, compile_materials
from .solver1d import Scenario1D, run_1d
from .solver2d import (CylinderSpec, Scenario2D, build_pml_2d, run_2d,
                       step_tm_2d)
from .solver3d import Scenario3D, SliceSpec, build_pml_3d, run_3d, step_3d


@dataclass
class CheckResult:
    suite: str
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""
    known_defect: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  [{self.detail}]" if self.detail else ""
        return (f"[{status}] {self.suite}/{self.name}: "
                f"measured {self.value:.6g} vs threshold {self.threshold:g}{extra}")


def _check(suite, name, value, threshold, mode="lt", detail="",
           known_defect=False) -> CheckResult:
    passed = value < threshold if mode == "lt" else value <= threshold
    return CheckResult(suite=suite, name=name, value=float(value),
                       threshold=float(threshold), passed=bool(passed),
                       detail=detail, known_defect=known_defect)


# ---------------------------------------------------------------------------
# 1D: d'Alembert oracle agreement and boundary absorption


def suite_1d() -> list:
    grid = GridSpec(dims=1, cells_per_axis=(200,), dx=0.01, n_steps=1000)
    source = SourceSpec(kind="gaussian", t0=40, spread=12,
                        injection="soft", location=100)
    scn = Scenario1D(grid=grid, source=source, probe_positions=[150],
                     snapshot_steps=[1000])
    res = run_1d(scn)

    # E samples live at half-integer time levels: compare step n against
    # the closed form at t = (n + 1/2) dt.
    n = np.arange(0, 221)
    t = (n + 0.5) * grid.dt
    oracle = analytic.dalembert_gaussian(50 * grid.dx, t, 40 * grid.dt,
                                         12 * grid.dt)
    trace = res.probes[150][:221]
    rel_l2 = np.linalg.norm(trace - oracle) / np.linalg.norm(oracle)

    ex_final, _ = res.snapshots[1000]
    residual = float(np.abs(ex_final).max())

    return [
        _check("1d", "dalembert-rel-l2", rel_l2, 0.02),
        _check("1d", "abc-residual-step1000", residual, 1e-10,
               detail="dispersive residue of the Courant-1/2 scheme; "
                      "exact absorption holds only for dispersionless transport",
               known_defect=True),
    ]


# ---------------------------------------------------------------------------
# 2D PML efficacy and boundary-probe reflection


def suite_2d_pml() -> list:
    grid = GridSpec(dims=2, cells_per_axis=(100, 100), dx=0.01, n_steps=300)
    source = SourceSpec(kind="gaussian", t0=20, spread=6,
                        injection="soft", location=(55, 55))
    scn = Scenario2D(grid=grid, source=source, npml=8, probes=[(89, 55)])
    res = run_2d(scn)
    energy = res.energy_interior
    ratio = energy[300] / energy.max()

    big = GridSpec(dims=2, cells_per_axis=(200, 200), dx=0.01, n_steps=300)
    big_source = SourceSpec(kind="gaussian", t0=20, spread=6,
                            injection="soft", location=(105, 105))
    big_scn = Scenario2D(grid=big, source=big_source, npml=8,
                         probes=[(139, 105)])
    big_res = run_2d(big_scn)

    trace = res.probes[(89, 55)]
    ref = big_res.probes[(139, 105)]
    peak = float(np.abs(ref).max())
    deviation = float(np.abs(trace[:296] - ref[:296]).max()) / peak

    return [
        _check("2d-pml", "interior-energy-step300", ratio, 1e-4,
               detail="corner-region residue of the fixed-profile "
                      "accumulator PML; free-space wake floor is ~4.5e-5",
               known_defect=True),
        _check("2d-pml", "boundary-probe-deviation", deviation, 0.01,
               detail="fraction of incident peak at the probe; dominated "
                      "by PML corner reflection",
               known_defect=True),
    ]


def _plain_reference_2d(dz, ez, hx, hy, steps):
    for _ in range(steps):
        dz[1:-1, 1:-1] += 0.5 * (hy[1:-1, 1:-1] - hy[:-2, 1:-1]
                                 - hx[1:-1, 1:-1] + hx[1:-1, :-2])
        ez[:] = dz
        hx[:, :-1] += 0.5 * (ez[:, :-1] - ez[:, 1:])
        hy[:-1, :] += 0.5 * (ez[1:, :] - ez[:-1, :])


def suite_identity_pml() -> list:
    """Criterion: with npml = 0 the solver equals a plain accumulator-free
    stencil bitwise after 10 steps, in 2D and 3D."""
    rng = np.random.default_rng(2024)
    checks = []

    n = 40
    grid = GridSpec(dims=2, cells_per_axis=(n, n), dx=0.01, n_steps=10)
    state = FieldState2D.zeros(n, n)
    state.dz[:] = rng.uniform(-1, 1, (n, n))
    state.hx[:] = rng.uniform(-1, 1, (n, n))
    state.hy[:] = rng.uniform(-1, 1, (n, n))
    ref = [state.dz.copy(), np.zeros((n, n)), state.hx.copy(), state.hy.copy()]
    pml = build_pml_2d(0, grid)
    mats = compile_materials(MaterialMap.free_space((n, n)), grid.dt)
    for _ in range(10):
        step_tm_2d(state, pml, mats)
    _plain_reference_2d(*ref, steps=10)
    equal2d = (np.array_equal(state.ez, ref[1])
               and np.array_equal(state.hx, ref[2])
               and np.array_equal(state.hy, ref[3]))
    checks.append(_check("identity-pml", "2d-bitwise-10steps",
                         0.0 if equal2d else 1.0, 0.5,
                         detail="0 = bitwise equal"))

    m = 20
    grid3 = GridSpec(dims=3, cells_per_axis=(m, m, m), dx=0.01, n_steps=10)
    st = FieldState3D.zeros(m, m, m)
    for arr in (st.dx_, st.dy_, st.dz_, st.hx, st.hy, st.hz):
        arr[:] = rng.uniform(-1, 1, (m, m, m))
    r = {k: getattr(st, k).copy()
         for k in ("dx_", "dy_", "dz_", "hx", "hy", "hz")}
    pml3 = build_pml_3d(0, grid3)
    mats3 = compile_materials(MaterialMap.free_space((m, m, m)), grid3.dt)
    for _ in range(10):
        step_3d(st, pml3, mats3)
        r["dx_"][:, 1:-1, 1:-1] += 0.5 * (r["hz"][:, 1:-1, 1:-1] - r["hz"][:, :-2, 1:-1]
                                          - r["hy"][:, 1:-1, 1:-1] + r["hy"][:, 1:-1, :-2])
        r["dy_"][1:-1, :, 1:-1] += 0.5 * (r["hx"][1:-1, :, 1:-1] - r["hx"][1:-1, :, :-2]
                                          - r["hz"][1:-1, :, 1:-1] + r["hz"][:-2, :, 1:-1])
        r["dz_"][1:-1, 1:-1, :] += 0.5 * (r["hy"][1:-1, 1:-1, :] - r["hy"][:-2, 1:-1, :]
                                          - r["hx"][1:-1, 1:-1, :] + r["hx"][1:-1, :-2, :])
        ex, ey, ez = r["dx_"].copy(), r["dy_"].copy(), r["dz_"].copy()
        r["hx"][:, :-1, :-1] += 0.5 * (ey[:, :-1, 1:] - ey[:, :-1, :-1]
                                       - ez[:, 1:, :-1] + ez[:, :-1, :-1])
        r["hy"][:-1, :, :-1] += 0.5 * (ez[1:, :, :-1] - ez[:-1, :, :-1]
                                       - ex[:-1, :, 1:] + ex[:-1, :, :-1])
        r["hz"][:-1, :-1, :] += 0.5 * (ex[:-1, 1:, :] - ex[:-1, :-1, :]
                                       - ey[1:, :-1, :] + ey[:-1, :-1, :])
    equal3d = (np.array_equal(st.ez, r["dz_"])
               and np.array_equal(st.hx, r["hx"])
               and np.array_equal(st.hy, r["hy"])
               and np.array_equal(st.hz, r["hz"]))
    checks.append(_check("identity-pml", "3d-bitwise-10steps",
                         0.0 if equal3d else 1.0, 0.5,
                         detail="0 = bitwise equal"))
    return checks


# ---------------------------------------------------------------------------
# 2D TF/SF leakage


def suite_2d_tfsf() -> list:
    n, npml = 100, 8
    grid = GridSpec(dims=2, cells_per_axis=(n, n), dx=0.01, n_steps=400)
    source = SourceSpec(kind="gaussian", t0=20, spread=6, location="tfsf")
    scn = Scenario2D(grid=grid, source=source, npml=npml)
    ia, ib, ja, jb = scn.tfsf_box

    # track scattered-region |ez| every step
    from .solver2d import TfsfBox2D, tfsf_apply_2d, update_dz_2d, \
        update_e_from_d_2d, update_h_2d
    state = FieldState2D.zeros(n, n)
    pml = build_pml_2d(npml, grid)
    mats = compile_materials(MaterialMap.free_space((n, n)), grid.dt)
    box = TfsfBox2D(ia, ib, ja, jb)
    box.validate(grid, npml)
    box.attach(grid)

    mask = np.zeros((n, n), bool)
    mask[npml:n - npml, npml:n - npml] = True
    mask[ia - 1:ib + 2, ja - 1:jb + 2] = False  # total field + seam skin

    leak = 0.0
    inc_peak = 0.0
    on_axis_err = None
    mid = (ia + ib) // 2
    t_compare = 2 * ((ja + jb) // 2) + int(source.t0)  # pulse peak mid-box
    for t in range(1, grid.n_steps + 1):
        update_dz_2d(state, pml)
        tfsf_apply_2d(state, box, source, t, grid.dt)
        update_e_from_d_2d(state, mats)
        update_h_2d(state, pml)
        leak = max(leak, float(np.abs(state.ez[mask]).max()))
        inc_peak = max(inc_peak, float(np.abs(box.inc_ez).max()))
        if t == t_compare:
            seg = state.ez[mid, ja:jb + 1]
            ref = box.inc_ez[ja:jb + 1]
            on_axis_err = (np.linalg.norm(seg - ref)
                           / max(np.linalg.norm(ref), 1e-30))

    return [
        _check("2d-tfsf", "scattered-leakage", leak / inc_peak, 0.02,
               detail="max |ez| outside the box / incident peak"),
        _check("2d-tfsf", "on-axis-match", on_axis_err, 0.01,
               detail="rel L2 of in-box ez vs 1D incident buffer"),
    ]


# ---------------------------------------------------------------------------
# 2D cylinder vs scattering series


def cylinder_series_comparison(freq: float, a: float, dx: float, n: int,
                               eps_r: float, sigma: float,
                               periods: float = 9.5,
                               probe_count: int = 48) -> tuple:
    """Run a CW TF/SF illumination of a cylinder and compare steady-state
    |ez| on the 1.5a probe circle with the scattering series.

    Returns (relative L2 error, number of probe points, step count).
    The steady-state amplitude at each probe comes from a single-bin DFT
    over the last two drive periods, normalized by the incident buffer's
    amplitude extracted the same way.
    """
    npml = 8
    k0 = 2 * math.pi * freq / C0
    center = ((n // 2) * dx, (n // 2) * dx)
    dt = dx / (2 * C0)
    steps_per_period = 1.0 / (freq * dt)
    n_steps = int(round(periods * steps_per_period))
    window = int(round(2 * steps_per_period))

    angles = np.linspace(0.0, 2 * np.pi, probe_count, endpoint=False)
    probes = []
    for th in angles:
        # propagation axis is +y: angle measured from +y toward +x
        pi_ = int(round(n // 2 + 1.5 * a / dx * math.sin(th)))
        pj_ = int(round(n // 2 + 1.5 * a / dx * math.cos(th)))
        probes.append((pi_, pj_))
    probes = list(dict.fromkeys(probes))

    grid = GridSpec(dims=2, cells_per_axis=(n, n), dx=dx, n_steps=n_steps)
    source = SourceSpec(kind="sinusoid", freq=freq, location="tfsf")
    scn = Scenario2D(grid=grid, source=source, npml=npml,
                     cylinders=[CylinderSpec(center=center, radius=a,
                                             eps_r=eps_r, sigma=sigma)],
                     probes=probes)
    res = run_2d(scn)

    t_idx = np.arange(n_steps - window + 1, n_steps + 1)
    phase = np.exp(-2j * np.pi * freq * t_idx * dt)
    inc_amp = 2.0 * abs(res.incident[t_idx] @ phase) / window

    params = analytic.CylinderScatterParams(a=a, k=k0, eps_r=eps_r,
                                            sigma=sigma)
    got = []
    want = []
    for (pi_, pj_) in probes:
        tr = res.probes[(pi_, pj_)][t_idx] @ phase
        got.append(2.0 * abs(tr) / window / inc_amp)
        x = (pj_ - n // 2) * dx   # along propagation (+y maps to series +x)
        y = (pi_ - n // 2) * dx
        want.append(abs(analytic.cylinder_total_tm(math.hypot(x, y),
                                                   math.atan2(y, x), params)))
    got = np.array(got)
    want = np.array(want)
    rel_l2 = float(np.linalg.norm(got - want) / np.linalg.norm(want))
    return rel_l2, len(probes), n_steps


def suite_2d_cylinder() -> list:
    rel_l2, n_probes, n_steps = cylinder_series_comparison(
        freq=500e6, a=0.1, dx=0.0025, n=168, eps_r=30.0, sigma=0.3)
    return [
        _check("2d-cylinder", "series-rel-l2", rel_l2, 0.10,
               detail=f"|ez| on the 1.5a circle, {n_probes} points, "
                      f"{n_steps} steps"),
    ]


# ---------------------------------------------------------------------------
# 3D symmetry and stability


def suite_3d() -> list:
    # Hard injection: a soft source deposits charge and leaves a static
    # dipole whose PML echoes (~1e-6 relative) would mask the growth
    # measurement; the hard source releases to zero and decays cleanly.
    n = 60
    grid = GridSpec(dims=3, cells_per_axis=(n, n, n), dx=0.01, n_steps=1100)
    source = SourceSpec(kind="gaussian", t0=20, spread=6, injection="hard",
                        location=(n // 2, n // 2, n // 2))
    quiet = int(source.t0 + 8 * source.spread)  # waveform < 1.3e-14 after this
    scn = Scenario3D(grid=grid, source=source, npml=8, symmetric_source=True,
                     slices=SliceSpec(plane="xy", offset=n // 2,
                                      steps=[300, 1100]))
    res = run_3d(scn)

    sym = 0.0
    for s in (300, 1100):
        sl = res.slices[s]
        sym = max(sym,
                  float(np.abs(sl - sl[::-1, :]).max()),
                  float(np.abs(sl - sl[:, ::-1]).max()),
                  float(np.abs(sl - sl.T).max()))

    turn_off = float(res.max_ez[quiet])
    growth = float(res.max_ez[quiet:].max()) / turn_off - 1.0

    return [
        _check("3d", "mirror-and-exchange-symmetry", sym, 1e-12),
        _check("3d", "post-source-growth", growth, 1e-12,
               detail="relative growth of max|ez| over 1000+ steps "
                      "after the source is quiescent"),
    ]


# ---------------------------------------------------------------------------
# Antenna design chain


# Frozen full-precision golden values for design(5.8 GHz, eps_r=5,
# h=1.6 mm), computed independently with 40-digit arithmetic.
ANTENNA_GOLDEN = {
    "W": 0.014921142786837894486,
    "eps_reff": 4.3225717889178746981,
    "delta_L": 0.00071001261297688947944,
    "L": 0.011010560882629025088,
}


def suite_antenna() -> list:
    d = antenna.design(5.8e9, 5.0, 0.0016, 0.0028)
    worst = 0.0
    for name, ref in ANTENNA_GOLDEN.items():
        got = getattr(d, name)
        worst = max(worst, abs(got - ref) / abs(ref))
    rows = antenna.reference_comparison(d)
    w_flagged = next(r for r in rows if r[0] == "W")[4] > 0.05

    return [
        _check("antenna", "golden-chain-rel-err", worst, 1e-9),
        _check("antenna", "reference-W-discrepancy-flagged",
               0.0 if w_flagged else 1.0, 0.5,
               detail="published W=17.30 mm is inconsistent with the "
                      "closed-form chain at eps_r=5 and must be flagged, "
                      "not asserted"),
    ]


# ---------------------------------------------------------------------------
# Special functions vs the exact-rational series oracle


def suite_bessel() -> list:
    rng = np.random.default_rng(61)
    samples = [(int(rng.integers(0, 21)), float(rng.uniform(0.05, 50.0)))
               for _ in range(50)]

    ej0 = abs(analytic.bessel_j(0, 1.0) - oracles.series_bessel_j(0, 1.0))
    ey0 = abs(analytic.bessel_y(0, 1.0) - oracles.series_bessel_y(0, 1.0))
    worst = max(ej0, ey0)
    worst_at = "J0(1)/Y0(1)"

    worst_wronskian = 0.0
    for m, x in samples:
        ref_j = oracles.series_bessel_j(m, x)
        ref_y = oracles.series_bessel_y(m, x)
        # |Y_m| blows up polynomially at small x; scale the tolerance by
        # the magnitude there (a 1e-10 absolute target is representable
        # only while the value itself is O(1)).
        ej = abs(analytic.bessel_j(m, x) - ref_j) / max(1.0, abs(ref_j))
        ey = abs(analytic.bessel_y(m, x) - ref_y) / max(1.0, abs(ref_y))
        if max(ej, ey) > worst:
            worst = max(ej, ey)
            worst_at = f"m={m}, x={x:.3f}"
        wr = (analytic.bessel_j(m + 1, x) * analytic.bessel_y(m, x)
              - analytic.bessel_j(m, x) * analytic.bessel_y(m + 1, x))
        worst_wronskian = max(worst_wronskian, abs(wr - 2 / (math.pi * x)))

    return [
        _check("bessel", "series-oracle-agreement", worst, 1e-10,
               detail=f"worst at {worst_at}; 50 random points m<=20 x<=50 "
                      f"plus J0(1), Y0(1)"),
        _check("bessel", "wronskian-identity", worst_wronskian, 1e-10),
    ]


SUITES = {
    "1d": suite_1d,
    "2d-pml": suite_2d_pml,
    "2d-tfsf": suite_2d_tfsf,
    "2d-cylinder": suite_2d_cylinder,
    "3d": suite_3d,
    "antenna": suite_antenna,
    "bessel": suite_bessel,
    "identity-pml": suite_identity_pml,
}


def run_suite(name: str) -> list:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name]()
