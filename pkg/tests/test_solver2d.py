import numpy as np
import pytest

from fdtdlab.core import (
    FieldState2D,
    GridSpec,
    MaterialMap,
    SourceSpec,
    ValidationError,
    compile_materials,
)
from fdtdlab.solver2d import (
    CylinderSpec,
    Scenario2D,
    TfsfBox2D,
    build_pml_2d,
    rasterize_cylinder,
    run_2d,
    step_tm_2d,
    tfsf_apply_2d,
)


def make_grid(n=100, steps=100, dx=0.01):
    return GridSpec(dims=2, cells_per_axis=(n, n), dx=dx, n_steps=steps)


class TestPmlCoefficients:
    def test_npml_zero_is_identity(self):
        pml = build_pml_2d(0, make_grid())
        assert pml.is_identity
        for v, ident in ((pml.gi1, 0), (pml.gi2, 1), (pml.gi3, 1),
                         (pml.fi1, 0), (pml.fi2, 1), (pml.fi3, 1)):
            assert np.all(v == ident)

    def test_interior_is_identity(self):
        pml = build_pml_2d(8, make_grid())
        mid = slice(8, 92)
        assert np.all(pml.gi1[mid] == 0)
        assert np.all(pml.gi2[mid] == 1)
        assert np.all(pml.gj3[mid] == 1)

    def test_outermost_depth_values(self):
        # depth d = 8 of 8: xn = 0.333, g2 = 1/1.333, g3 = 0.667/1.333
        pml = build_pml_2d(8, make_grid())
        assert pml.gi1[0] == pytest.approx(0.333, rel=0)
        assert pml.gi2[0] == pytest.approx(1 / 1.333, rel=1e-12)
        assert pml.gi3[0] == pytest.approx(0.667 / 1.333, rel=1e-12)
        assert pml.gi2[0] == pytest.approx(0.750, abs=5e-4)
        assert pml.gi3[0] == pytest.approx(0.500, abs=5e-4)

    def test_coefficient_ranges(self):
        pml = build_pml_2d(8, make_grid())
        for g1, g2, g3 in ((pml.gi1, pml.gi2, pml.gi3),
                           (pml.fj1, pml.fj2, pml.fj3)):
            assert np.all((g1 >= 0) & (g1 < 1))
            assert np.all((g2 > 0) & (g2 <= 1))
            assert np.all((g3 > 0) & (g3 <= 1))

    def test_mirror_symmetry_exact(self):
        pml = build_pml_2d(8, make_grid())
        n = 100
        for k in range(n):
            assert pml.gi2[k] == pml.gi2[n - 1 - k]
            assert pml.gi3[k] == pml.gi3[n - 1 - k]
        for k in range(n - 1):
            assert pml.fi1[k] == pml.fi1[n - 2 - k]
            assert pml.fi2[k] == pml.fi2[n - 2 - k]

    def test_npml_too_large(self):
        with pytest.raises(ValidationError):
            build_pml_2d(26, make_grid())


class TestStep:
    def test_zero_stays_zero(self):
        grid = make_grid(40)
        state = FieldState2D.zeros(40, 40)
        pml = build_pml_2d(8, grid)
        mats = compile_materials(MaterialMap.free_space((40, 40)), grid.dt)
        for _ in range(5):
            step_tm_2d(state, pml, mats)
        assert not any(a.any() for a in state.arrays())

    def test_identity_pml_keeps_accumulators_zero(self):
        grid = make_grid(40)
        state = FieldState2D.zeros(40, 40)
        state.dz[20, 20] = 1.0
        pml = build_pml_2d(0, grid)
        mats = compile_materials(MaterialMap.free_space((40, 40)), grid.dt)
        for _ in range(10):
            step_tm_2d(state, pml, mats)
        assert not state.ihx.any() and not state.ihy.any()
        assert not state.idz.any()

    def test_ring_radius(self):
        # center soft pulse, snapshot at step 60 with t0 = 20: the ring
        # of |ez| maxima sits at (60 - 20)/2 = 20 cells, within +-2
        grid = make_grid(100, steps=60)
        scn = Scenario2D(grid=grid,
                         source=SourceSpec(t0=20, spread=6, location=(50, 50)),
                         npml=8, snapshot_steps=[60])
        ez = run_2d(scn).snapshots[60]
        ii, jj = np.meshgrid(np.arange(100), np.arange(100), indexing="ij")
        r = np.hypot(ii - 50, jj - 50)
        ang = np.arctan2(jj - 50, ii - 50)
        radii = []
        for a in np.linspace(-np.pi, np.pi, 72, endpoint=False):
            wedge = (np.abs(np.angle(np.exp(1j * (ang - a)))) < 0.12) \
                & (r > 8) & (r < 32)
            radii.append(r[wedge][np.argmax(np.abs(ez[wedge]))])
        assert abs(np.median(radii) - 20) <= 2


class TestTfsf:
    def test_zero_incident_leaves_state_unchanged(self):
        grid = make_grid(60)
        state = FieldState2D.zeros(60, 60)
        state.ez[:] = np.arange(3600).reshape(60, 60) / 3600.0
        before = {k: a.copy() for k, a in zip("dz ez hx hy".split(),
                                              (state.dz, state.ez,
                                               state.hx, state.hy))}
        box = TfsfBox2D(12, 47, 12, 47)
        box.validate(grid)
        box.attach(grid)
        # never driven: waveform below machine epsilon at step 0 is not
        # enough, so use a source whose value at this step is exactly 0
        src = SourceSpec(kind="sinusoid", freq=5e8, location="tfsf")
        tfsf_apply_2d(state, box, src, 0, grid.dt)
        assert np.array_equal(state.dz, before["dz"])
        assert np.array_equal(state.hx, before["hx"])
        assert np.array_equal(state.hy, before["hy"])

    def test_bounds_validated(self):
        grid = make_grid(60)
        with pytest.raises(ValidationError):
            TfsfBox2D(1, 47, 12, 47).validate(grid)
        with pytest.raises(ValidationError):
            TfsfBox2D(12, 58, 12, 47).validate(grid)
        with pytest.raises(ValidationError):
            TfsfBox2D(9, 47, 12, 47).validate(grid, npml=8)

    def test_empty_box_leakage_and_on_axis_match(self):
        # compact version of the acceptance TF/SF criterion
        from fdtdlab.validation import suite_2d_tfsf
        checks = {c.name: c for c in suite_2d_tfsf()}
        assert checks["scattered-leakage"].value < 0.02
        assert checks["on-axis-match"].value < 0.01


class TestRasterize:
    def test_zero_radius_assigns_nothing(self):
        m = rasterize_cylinder(CylinderSpec(center=(0.5, 0.5), radius=0.0,
                                            eps_r=30.0), make_grid())
        assert np.all(m.eps_r == 1.0) and np.all(m.sigma == 0.0)

    def test_cell_count_matches_point_scan(self):
        grid = make_grid()
        spec = CylinderSpec(center=(0.50, 0.50), radius=10 * grid.dx,
                            eps_r=30.0, sigma=0.3)
        m = rasterize_cylinder(spec, grid)
        count = int((m.eps_r != 1.0).sum())
        # independent integer-grid scan; cells exactly on the rim may
        # round either way in meter-space floats
        strict = sum(1 for i in range(100) for j in range(100)
                     if (i - 50) ** 2 + (j - 50) ** 2 < 100)
        loose = sum(1 for i in range(100) for j in range(100)
                    if (i - 50) ** 2 + (j - 50) ** 2 <= 100)
        assert strict <= count <= loose
        area = np.pi * 100
        assert area - 64 <= count <= area + 64

    def test_lossy_cylinder_material_values(self):
        grid = GridSpec(dims=2, cells_per_axis=(120, 120), dx=0.0025,
                        n_steps=1)
        spec = CylinderSpec(center=(0.15, 0.15), radius=0.1,
                            eps_r=30.0, sigma=0.3)
        m = rasterize_cylinder(spec, grid)
        inside = m.eps_r != 1.0
        assert m.eps_r[inside].max() == 30.0
        assert m.sigma[inside].max() == 0.3

    def test_overlap_with_pml_rejected(self):
        grid = make_grid()
        with pytest.raises(ValidationError):
            rasterize_cylinder(CylinderSpec(center=(0.10, 0.5), radius=0.05,
                                            eps_r=4.0), grid, npml=8)


class TestRun:
    def test_ring_amplitude_anisotropy(self):
        # Fig.15-style scenario: offset source, 8-cell PML; at T = 90 the
        # expanding ring's per-angle peak amplitude is isotropic to a few
        # percent.  Angles whose radial window would clip the PML on the
        # +x/+y sides (source is offset toward them) are excluded.
        grid = make_grid(100, steps=90)
        scn = Scenario2D(grid=grid,
                         source=SourceSpec(t0=20, spread=6, location=(55, 55)),
                         npml=8, snapshot_steps=[90])
        ez = run_2d(scn).snapshots[90]
        ii, jj = np.meshgrid(np.arange(100), np.arange(100), indexing="ij")
        r = np.hypot(ii - 55, jj - 55)
        ang = np.arctan2(jj - 55, ii - 55)
        amps = []
        for a in np.linspace(-np.pi, np.pi, 72, endpoint=False):
            rmax_needed = 55 + 42 * max(np.cos(a), np.sin(a), 0)
            if rmax_needed > 89:
                continue
            wedge = (np.abs(np.angle(np.exp(1j * (ang - a)))) < 0.12) \
                & (r > 28) & (r < 42)
            amps.append(np.abs(ez[wedge]).max())
        amps = np.array(amps)
        assert len(amps) > 30
        assert (amps.max() - amps.min()) / amps.mean() < 0.05

    def test_threads_bitwise_identical(self):
        def run(threads):
            grid = make_grid(100, steps=120)
            scn = Scenario2D(grid=grid,
                             source=SourceSpec(t0=20, spread=6,
                                               location=(55, 55)),
                             npml=8, snapshot_steps=[120], threads=threads)
            return run_2d(scn).snapshots[120]
        assert np.array_equal(run(1), run(3))

    def test_cylinder_must_fit_tfsf_box(self):
        grid = make_grid(100, steps=10)
        scn = Scenario2D(grid=grid,
                         source=SourceSpec(t0=20, spread=6, location="tfsf"),
                         npml=8,
                         cylinders=[CylinderSpec(center=(0.5, 0.13),
                                                 radius=0.04, eps_r=4.0)])
        with pytest.raises(ValidationError):
            run_2d(scn)

    def test_cylinder_scattering_second_configuration(self):
        # independent of the acceptance scenario: a weaker, larger
        # cylinder at a lower frequency must also track the series
        from fdtdlab.validation import cylinder_series_comparison
        rel_l2, _, _ = cylinder_series_comparison(
            freq=300e6, a=0.12, dx=0.004, n=150, eps_r=4.0, sigma=0.05,
            periods=8.5, probe_count=36)
        assert rel_l2 < 0.05

    def test_pml_quality_regression_guard(self):
        # The fixed-profile PML's honest quality level (the acceptance
        # thresholds sit below it; see README): boundary-probe deviation
        # ~2.5% and interior energy ratio ~3e-4 at step 300.  Guard
        # against regressions from that measured level.
        from fdtdlab.validation import suite_2d_pml
        checks = {c.name: c for c in suite_2d_pml()}
        assert checks["interior-energy-step300"].value < 5e-4
        assert checks["boundary-probe-deviation"].value < 0.03

    def test_pml_long_run_stability(self):
        # accumulator PMLs can develop late-time growth; a 1500-step run
        # must keep draining energy instead
        grid = make_grid(60, steps=1500)
        scn = Scenario2D(grid=grid,
                         source=SourceSpec(t0=20, spread=6,
                                           location=(33, 33)),
                         npml=8)
        res = run_2d(scn)
        e = res.energy_interior
        assert e[1500] < 1e-4 * e.max()
        assert e[1500] <= e[750]

    def test_nan_guard_reports_step_and_cell(self, monkeypatch):
        import fdtdlab.solver2d as mod
        from fdtdlab.core import NumericError
        real = mod.update_e_from_d_2d
        holder = {"n": 0}

        def poisoned(state, materials, threads=1):
            real(state, materials, threads)
            holder["n"] += 1
            if holder["n"] == 3:
                state.ez[3, 4] = np.nan
        monkeypatch.setattr(mod, "update_e_from_d_2d", poisoned)
        scn = Scenario2D(grid=make_grid(40, steps=10),
                         source=SourceSpec(t0=20, spread=6,
                                           location=(20, 20)))
        with pytest.raises(NumericError) as err:
            run_2d(scn)
        assert err.value.step == 3
        assert err.value.index == (3, 4)
