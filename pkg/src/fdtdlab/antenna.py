"""Microstrip patch antenna design calculator.

Implements the closed-form resonant design chain: patch width from the
target frequency and substrate permittivity, effective permittivity of
the microstrip, fringing length extension, resonant length, and the
diagonal feed point for circular polarization.

The published reference design (5.8 GHz on an eps_r = 5, 1.6 mm
substrate) is carried along as ``REFERENCE_DESIGN`` so the comparison
report can flag where the closed-form chain and the published numbers
disagree; the published width is consistent with eps_r ~ 3.5, not 5, so
the report never asserts agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .core import C0, ValidationError


class DesignInfeasibleError(ValidationError):
    """The requested parameters produce a non-physical patch."""


# Published reference values for the 5.8 GHz design (W, L, h in meters).
REFERENCE_DESIGN = {
    "f0": 5.8e9,
    "eps_r": 5.0,
    "W": 17.30e-3,
    "L": 10.402e-3,
    "h": 1.6e-3,
    "x_feed": 2.8e-3,
}


@dataclass
class AntennaDesign:
    """Complete resonant-patch geometry derived from (f0, eps_r, h)."""

    f0: float
    eps_r: float
    h: float
    W: float
    eps_reff: float
    delta_L: float
    L: float
    x_feed: float
    y_feed: float
    bw_target: float = None

    def __post_init__(self):
        if self.W <= self.h:
            raise DesignInfeasibleError(
                f"width {self.W} must exceed substrate height {self.h}"
            )
        if not (1.0 < self.eps_reff <= self.eps_r or self.eps_r == 1.0):
            raise DesignInfeasibleError(
                f"eps_reff {self.eps_reff} outside (1, eps_r={self.eps_r}]"
            )
        if self.L <= 0 or self.delta_L <= 0:
            raise DesignInfeasibleError("non-positive patch length")


def patch_width(f0: float, eps_r: float) -> float:
    """Resonant patch width W = (c / 2 f0) * sqrt(2 / (eps_r + 1))."""
    if f0 <= 0:
        raise ValidationError(f"f0 must be positive, got {f0}")
    if eps_r < 1:
        raise ValidationError(f"eps_r must be >= 1, got {eps_r}")
    return (C0 / (2.0 * f0)) * math.sqrt(2.0 / (eps_r + 1.0))


def effective_permittivity(eps_r: float, h: float, W: float,
                           printed_form: bool = False) -> float:
    """Effective permittivity of a microstrip of width W on substrate h.

    The physical form uses the inverse square root,
    (1 + 12 h/W)^(-1/2), which keeps 1 <= eps_reff <= eps_r.  The
    ``printed_form`` flag switches to the (unphysical) positive-root
    variant that circulates in some write-ups, for comparison only.
    """
    if not (W > h > 0):
        raise ValidationError(f"validity requires W > h > 0, got W={W}, h={h}")
    root = math.sqrt(1.0 + 12.0 * h / W)
    factor = root if printed_form else 1.0 / root
    return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * factor


def fringing_extension(eps_reff: float, W: float, h: float) -> float:
    """Fringing-field length extension delta_L of each radiating edge."""
    if eps_reff <= 0.258:
        raise ValidationError(
            f"eps_reff must exceed 0.258, got {eps_reff}"
        )
    if W <= 0 or h <= 0:
        raise ValidationError("W and h must be positive")
    ratio = W / h
    return 0.412 * h * ((eps_reff + 0.3) * (ratio + 0.264)
                        / ((eps_reff - 0.258) * (ratio + 0.8)))


def patch_length(f0: float, eps_reff: float, delta_L: float) -> float:
    """Resonant length L = c / (2 f0 sqrt(eps_reff)) - 2 delta_L."""
    if f0 <= 0 or eps_reff <= 0 or delta_L < 0:
        raise ValidationError("inputs must be positive")
    L = C0 / (2.0 * f0 * math.sqrt(eps_reff)) - 2.0 * delta_L
    if L <= 0:
        raise DesignInfeasibleError(
            f"fringing extension {delta_L} exceeds the half guided wavelength"
        )
    return L


def feed_point(W: float, L: float, x_feed: float) -> tuple:
    """Feed location on the patch diagonal: y_feed = (W/L) x_feed."""
    if not (0 < x_feed < L):
        raise ValidationError(f"x_feed must lie in (0, L={L}), got {x_feed}")
    return x_feed, (W / L) * x_feed


def design(f0: float, eps_r: float, h: float, x_feed: float = None,
           bw_target: float = None) -> AntennaDesign:
    """Run the full design chain and record every intermediate.

    When x_feed is omitted it defaults to L/4 (a typical diagonal-feed
    match point).  ``bw_target`` is carried along for reporting only;
    nothing here synthesizes a bandwidth.
    """
    W = patch_width(f0, eps_r)
    eps_reff = effective_permittivity(eps_r, h, W)
    dL = fringing_extension(eps_reff, W, h)
    L = patch_length(f0, eps_reff, dL)
    if x_feed is None:
        x_feed = L / 4.0
    xf, yf = feed_point(W, L, x_feed)
    return AntennaDesign(f0=f0, eps_r=eps_r, h=h, W=W, eps_reff=eps_reff,
                         delta_L=dL, L=L, x_feed=xf, y_feed=yf,
                         bw_target=bw_target)


def reference_comparison(d: AntennaDesign) -> list:
    """Compare a design against the published reference numbers.

    Returns rows (name, designed, published, abs difference, relative
    difference).  Used for reporting only; the published W/L are known
    to be inconsistent with the closed-form chain at eps_r = 5.
    """
    rows = []
    for name, ours in (("W", d.W), ("L", d.L), ("x_feed", d.x_feed)):
        ref = REFERENCE_DESIGN[name]
        rows.append((name, ours, ref, ours - ref,
                     abs(ours - ref) / abs(ref)))
    return rows


def format_design_report(d: AntennaDesign) -> str:
    """Aligned-text design table plus the reference comparison."""
    mm = 1e3
    lines = [
        "Patch design",
        f"  f0        = {d.f0 / 1e9:.4f} GHz",
        f"  eps_r     = {d.eps_r:.4f}",
        f"  h         = {d.h * mm:.4f} mm",
        f"  W         = {d.W * mm:.4f} mm",
        f"  eps_reff  = {d.eps_reff:.6f}",
        f"  delta_L   = {d.delta_L * mm:.4f} mm",
        f"  L         = {d.L * mm:.4f} mm",
        f"  feed      = ({d.x_feed * mm:.4f}, {d.y_feed * mm:.4f}) mm on the diagonal",
        "",
        "Published-reference comparison (flagged, not asserted)",
        "  name      designed      published     rel.diff",
    ]
    for name, ours, ref, _, rel in reference_comparison(d):
        flag = "  <-- inconsistent with the closed-form chain" if rel > 0.05 else ""
        lines.append(f"  {name:<8}  {ours * mm:>9.4f} mm  {ref * mm:>9.4f} mm"
                     f"  {100 * rel:>7.2f}%{flag}")
    if d.bw_target:
        lines.append(f"  bandwidth target (informational): "
                     f"{d.bw_target / 1e6:.0f} MHz")
    lines.append("")
    lines.append("Port metrics (VSWR, |S11|, return loss, impedance, "
                 "directivity, bandwidth) come from full-wave tools and "
                 "are not computed here.")
    return "\n".join(lines)
