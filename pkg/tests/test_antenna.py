import numpy as np
import pytest

from fdtdlab.antenna import (
    DesignInfeasibleError,
    REFERENCE_DESIGN,
    design,
    effective_permittivity,
    feed_point,
    format_design_report,
    fringing_extension,
    patch_length,
    patch_width,
    reference_comparison,
)
from fdtdlab.core import C0, ValidationError

# Independently computed at 40-digit precision for
# design(5.8 GHz, eps_r = 5, h = 1.6 mm)
GOLDEN = {
    "W": 0.014921142786837894486,
    "eps_reff": 4.3225717889178746981,
    "delta_L": 0.00071001261297688947944,
    "L": 0.011010560882629025088,
}


class TestPatchWidth:
    def test_air_substrate_half_wavelength(self):
        f0 = 2.4e9
        assert patch_width(f0, 1.0) == C0 / (2 * f0)

    def test_reference_inputs(self):
        assert patch_width(5.8e9, 5.0) == pytest.approx(14.93e-3, abs=0.02e-3)

    def test_published_width_is_inconsistent(self):
        # the published table reports W = 17.30 mm, ~16% off the formula
        w = patch_width(5.8e9, 5.0)
        assert abs(w - REFERENCE_DESIGN["W"]) / REFERENCE_DESIGN["W"] > 0.1

    def test_input_validation(self):
        with pytest.raises(ValidationError):
            patch_width(0.0, 5.0)
        with pytest.raises(ValidationError):
            patch_width(1e9, 0.5)


class TestEffectivePermittivity:
    def test_air_is_identity(self):
        assert effective_permittivity(1.0, 0.0016, 0.015) == 1.0

    def test_reference_value(self):
        w = patch_width(5.8e9, 5.0)
        assert effective_permittivity(5.0, 0.0016, w) \
            == pytest.approx(4.32, abs=0.01)

    def test_thin_substrate_limit(self):
        assert effective_permittivity(5.0, 1e-9, 0.015) \
            == pytest.approx(5.0, abs=1e-3)

    def test_physical_bound_holds(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            eps = float(rng.uniform(1.0, 12.0))
            h = float(rng.uniform(1e-4, 3e-3))
            w = float(rng.uniform(h * 1.01, 0.05))
            e = effective_permittivity(eps, h, w)
            assert 1.0 <= e <= eps

    def test_printed_form_violates_bound(self):
        e = effective_permittivity(5.0, 0.0016, 0.015, printed_form=True)
        assert e > 5.0

    def test_validity_requires_wide_patch(self):
        with pytest.raises(ValidationError):
            effective_permittivity(5.0, 0.0016, 0.001)


class TestFringingExtension:
    def test_homogeneous_in_h_at_fixed_ratio(self):
        d1 = fringing_extension(4.32, 0.015, 0.0016)
        d2 = fringing_extension(4.32, 0.030, 0.0032)
        assert d2 == pytest.approx(2 * d1, rel=1e-12)

    def test_reference_value(self):
        assert fringing_extension(GOLDEN["eps_reff"], GOLDEN["W"], 0.0016) \
            == pytest.approx(0.71e-3, abs=0.005e-3)

    def test_wide_patch_asymptote(self):
        e = 4.32
        d = fringing_extension(e, 10.0, 0.0016)
        want = 0.412 * 0.0016 * (e + 0.3) / (e - 0.258)
        assert d == pytest.approx(want, rel=1e-3)

    def test_denominator_guard(self):
        with pytest.raises(ValidationError):
            fringing_extension(0.2, 0.015, 0.0016)


class TestPatchLength:
    def test_no_fringing_air(self):
        f0 = 2.4e9
        assert patch_length(f0, 1.0, 0.0) == C0 / (2 * f0)

    def test_reference_value(self):
        L = patch_length(5.8e9, GOLDEN["eps_reff"], GOLDEN["delta_L"])
        assert L == pytest.approx(11.0e-3, abs=0.02e-3)

    def test_infeasible_design_raises(self):
        with pytest.raises(DesignInfeasibleError):
            patch_length(5.8e9, 4.32, 0.01)


class TestFeedPoint:
    def test_origin(self):
        with pytest.raises(ValidationError):
            feed_point(0.015, 0.011, 0.0)

    def test_published_inputs(self):
        # with the published W = 17.30 mm, L = 10.402 mm and
        # x_feed = 2.8 mm the diagonal rule lands at 4.657 mm
        _, y = feed_point(17.30e-3, 10.402e-3, 2.8e-3)
        assert y == pytest.approx(4.6567967698519515e-3, rel=1e-12)

    def test_square_patch_true_diagonal(self):
        x, y = feed_point(0.012, 0.012, 0.004)
        assert x == y

    def test_on_diagonal_exactly(self):
        W, L, xf = 0.0149211, 0.0110105, 0.0028
        x, y = feed_point(W, L, xf)
        assert x / L == pytest.approx(y / W, rel=1e-15)


class TestDesignChain:
    def test_golden_values(self):
        d = design(5.8e9, 5.0, 0.0016, 0.0028)
        for name, want in GOLDEN.items():
            assert getattr(d, name) == pytest.approx(want, rel=1e-9)

    def test_air_consistency(self):
        f0 = 2.4e9
        d = design(f0, 1.0, 0.0016, 0.002)
        assert d.W == pytest.approx(d.L + 2 * d.delta_L, rel=1e-12)
        assert d.W == C0 / (2 * f0)

    def test_report_flags_reference_discrepancy(self):
        d = design(5.8e9, 5.0, 0.0016, 0.0028)
        rows = {name: rel for name, _, _, _, rel in reference_comparison(d)}
        assert rows["W"] > 0.1
        assert rows["L"] > 0.05
        text = format_design_report(d)
        assert "inconsistent" in text

    def test_monotonicity(self):
        f0, h = 5.8e9, 0.0016
        widths = [patch_width(f0, e) for e in (2.0, 3.0, 5.0, 8.0)]
        assert all(a > b for a, b in zip(widths, widths[1:]))
        effs = [effective_permittivity(5.0, h, w)
                for w in (0.005, 0.01, 0.02, 0.04)]
        assert all(a < b for a, b in zip(effs, effs[1:]))
        lengths = [design(f, 5.0, h).L for f in (2e9, 4e9, 8e9)]
        assert all(a > b for a, b in zip(lengths, lengths[1:]))

    def test_geometric_similarity_under_frequency_scaling(self):
        s = 2.0
        d1 = design(5.8e9, 5.0, 0.0016)
        d2 = design(5.8e9 * s, 5.0, 0.0016 / s)
        assert d2.W == pytest.approx(d1.W / s, rel=1e-12)
        assert d2.L == pytest.approx(d1.L / s, rel=1e-12)
        assert d2.eps_reff == pytest.approx(d1.eps_reff, rel=1e-12)

    def test_default_feed_point(self):
        d = design(5.8e9, 5.0, 0.0016)
        assert d.x_feed == pytest.approx(d.L / 4)
        assert d.y_feed == pytest.approx((d.W / d.L) * d.x_feed, rel=1e-15)
