"""Point radiation in three dimensions, watched through 2D slices.

Volumetric dumps are hard to look at, so the solver emits mid-plane
slices instead.  The |hy| shell (the pure radiation field; ez also
carries the static near field of the source) expands at half a cell per
step.  A second run drops a lossy dielectric sphere into a plane wave
and compares probes fore and aft of it.
"""

import os

import numpy as np

from fdtdlab import (
    GridSpec,
    Scenario3D,
    SliceSpec,
    SourceSpec,
    SphereSpec,
    run_3d,
)

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

# --- free-space radiation ------------------------------------------------
n = 60
grid = GridSpec(dims=3, cells_per_axis=(n, n, n), dx=0.01, n_steps=70)
scenario = Scenario3D(grid=grid,
                      source=SourceSpec(t0=20, spread=6,
                                        location=(30, 30, 30)),
                      npml=8,
                      slices=SliceSpec(plane="xy", offset=30, component="hy",
                                       steps=[40, 50, 60, 70]))
result = run_3d(scenario)

ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
radius = np.hypot(ii - 30, jj - 30)
angle = np.arctan2(jj - 30, ii - 30)
print("shell radius of |hy| maxima in the mid-plane:")
for step, sl in sorted(result.slices.items()):
    radii = []
    for a in np.linspace(-np.pi, np.pi, 36, endpoint=False):
        wedge = (np.abs(np.angle(np.exp(1j * (angle - a)))) < 0.2) \
            & (radius > 4) & (radius < 27)
        radii.append(radius[wedge][np.argmax(np.abs(sl[wedge]))])
    print(f"  T = {step}: {np.median(radii):5.1f} cells "
          f"(group speed = half a cell per step)")

# --- plane wave on a dielectric sphere ------------------------------------
m = 50
grid2 = GridSpec(dims=3, cells_per_axis=(m, m, m), dx=0.01, n_steps=300)
sphere = SphereSpec(center=(0.25, 0.25, 0.25), radius=0.06,
                    eps_r=30.0, sigma=0.3)
scn2 = Scenario3D(grid=grid2,
                  source=SourceSpec(t0=20, spread=6, location="tfsf"),
                  npml=8, spheres=[sphere],
                  probes=[(25, 16, 25), (25, 34, 25)])
res2 = run_3d(scn2)
up = np.abs(res2.probes[(25, 16, 25)]).max()
down = np.abs(res2.probes[(25, 34, 25)]).max()
print(f"\nsphere run: upstream probe peak {up:.3f}, "
      f"downstream (shadow) {down:.3f}")

try:
    import matplotlib.pyplot as plt
    fig, axes = plt.subplots(2, 2, figsize=(9, 8))
    for ax, step in zip(axes.flat, (40, 50, 60, 70)):
        ax.imshow(result.slices[step].T, origin="lower", cmap="RdBu")
        ax.set_title(f"|hy| slice, T = {step}")
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "radiation_3d.png"), dpi=120)
    print(f"wrote {OUT}/radiation_3d.png")
except ImportError:
    pass
