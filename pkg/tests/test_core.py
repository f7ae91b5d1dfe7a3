import numpy as np
import pytest

from fdtdlab.core import (
    C0,
    EPS0,
    ETA0,
    MU0,
    GridSpec,
    MaterialMap,
    SourceSpec,
    ValidationError,
    compile_materials,
    courant_dt,
    denormalize_e,
    gaussian_pulse,
    normalize_e,
)


class TestCourantDt:
    def test_unit_cell(self):
        assert courant_dt(1.0) == 1.0 / (2.0 * C0)

    def test_centimeter_cell(self):
        # 0.01 / (2 * 299792458) evaluated independently
        assert courant_dt(0.01) == pytest.approx(1.6678204759907602e-11, rel=1e-15)

    def test_cylinder_scenario_spacing(self):
        # 2.5 mm cells put a 20 cm cylinder across 80 cells
        assert courant_dt(0.0025) == pytest.approx(0.0025 / (2 * C0), rel=0)

    def test_linear_in_dx(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            dx = float(rng.uniform(1e-6, 10.0))
            a = float(rng.uniform(0.1, 100.0))
            assert courant_dt(a * dx) == pytest.approx(a * courant_dt(dx),
                                                       rel=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            courant_dt(0.0)
        with pytest.raises(ValidationError):
            courant_dt(-1.0)


class TestGaussianPulse:
    def test_peak_at_t0(self):
        assert gaussian_pulse(40.0, 40.0, 12.0) == 1.0

    def test_one_spread_off(self):
        want = np.exp(-0.5)
        assert gaussian_pulse(52.0, 40.0, 12.0) == pytest.approx(want, rel=1e-14)
        assert gaussian_pulse(28.0, 40.0, 12.0) == pytest.approx(want, rel=1e-14)

    def test_value_at_zero(self):
        # exp(-(40/12)^2 / 2), evaluated independently at 30 digits
        assert gaussian_pulse(0.0, 40.0, 12.0) \
            == pytest.approx(3.86592013947280675e-3, rel=1e-12)

    def test_symmetric_about_t0_exactly(self):
        # dyadic offsets keep 40 +- d exact in binary, so the symmetry
        # holds bitwise
        rng = np.random.default_rng(2)
        for _ in range(100):
            d = float(rng.integers(0, 640)) / 8.0
            assert gaussian_pulse(40.0 + d, 40.0, 12.0) \
                == gaussian_pulse(40.0 - d, 40.0, 12.0)

    def test_rejects_bad_spread(self):
        with pytest.raises(ValidationError):
            gaussian_pulse(0.0, 40.0, 0.0)


class TestNormalization:
    def test_zero(self):
        assert normalize_e(0.0) == 0.0

    def test_free_space_impedance_maps_to_one(self):
        assert float(normalize_e(376.730313668)) == pytest.approx(1.0, abs=1e-10)

    def test_round_trip(self):
        for x in (123.456, -7.89e6, 1e-12):
            back = float(denormalize_e(normalize_e(x)))
            assert back == pytest.approx(x, rel=1e-14)

    def test_eta0_consistent(self):
        assert ETA0 == pytest.approx(np.sqrt(MU0 / EPS0), rel=0)


class TestCompileMaterials:
    def test_free_space(self):
        m = compile_materials(MaterialMap.free_space((4, 4)), courant_dt(0.01))
        assert np.all(m.ga == 1.0)
        assert np.all(m.gb == 0.0)

    def test_plain_dielectric(self):
        m = MaterialMap(eps_r=np.full((3,), 4.0), sigma=np.zeros(3))
        compile_materials(m, courant_dt(0.01))
        assert np.all(m.ga == 0.25)
        assert np.all(m.gb == 0.0)

    def test_lossy_dielectric_values(self):
        # eps_r = 30, sigma = 0.3, dx = 0.01: evaluated independently at
        # 40-digit precision
        dt = courant_dt(0.01)
        m = MaterialMap(eps_r=np.array([30.0]), sigma=np.array([0.3]))
        compile_materials(m, dt)
        assert m.gb[0] == pytest.approx(0.3 * dt / EPS0, rel=0)
        assert m.gb[0] == pytest.approx(0.565095470500304807, rel=1e-12)
        assert m.ga[0] == pytest.approx(0.032717057957994708, rel=1e-12)

    def test_coefficient_bounds(self):
        rng = np.random.default_rng(3)
        m = MaterialMap(eps_r=rng.uniform(1, 100, (20,)),
                        sigma=rng.uniform(0, 10, (20,)))
        compile_materials(m, courant_dt(0.01))
        assert np.all(m.ga > 0) and np.all(m.ga <= 1.0)
        assert np.all(m.gb >= 0)

    def test_invalid_cells_named(self):
        m = MaterialMap(eps_r=np.array([[1.0, 0.5], [1.0, 1.0]]),
                        sigma=np.array([[0.0, 0.0], [-1.0, 0.0]]))
        with pytest.raises(ValidationError) as err:
            compile_materials(m, courant_dt(0.01))
        assert "(0, 1)" in str(err.value) and "(1, 0)" in str(err.value)


class TestGridSpec:
    def test_dt_computed(self):
        g = GridSpec(dims=1, cells_per_axis=(200,), dx=0.01, n_steps=10)
        assert g.dt == courant_dt(0.01)

    def test_explicit_dt_must_match_exactly(self):
        good = courant_dt(0.01)
        GridSpec(dims=1, cells_per_axis=(200,), dx=0.01, n_steps=1, dt=good)
        with pytest.raises(ValidationError):
            GridSpec(dims=1, cells_per_axis=(200,), dx=0.01, n_steps=1,
                     dt=good * (1 + 1e-12))

    def test_minimum_cells(self):
        with pytest.raises(ValidationError):
            GridSpec(dims=2, cells_per_axis=(100, 9), dx=0.01, n_steps=1)

    def test_axis_count(self):
        with pytest.raises(ValidationError):
            GridSpec(dims=2, cells_per_axis=(100,), dx=0.01, n_steps=1)


class TestSourceSpec:
    def test_gaussian_needs_headroom(self):
        with pytest.raises(ValidationError):
            SourceSpec(kind="gaussian", t0=20, spread=12)

    def test_sinusoid_needs_freq(self):
        with pytest.raises(ValidationError):
            SourceSpec(kind="sinusoid", freq=None)

    def test_waveforms(self):
        dt = courant_dt(0.01)
        g = SourceSpec(kind="gaussian", t0=40, spread=12)
        assert g.waveform(40, dt) == 1.0
        s = SourceSpec(kind="sinusoid", freq=5e8)
        period = 1.0 / (5e8 * dt)
        assert s.waveform(0, dt) == 0.0
        assert s.waveform(period / 4, dt) == pytest.approx(1.0, abs=1e-6)
