"""An expanding cylindrical pulse absorbed by the perfectly matched
layer.

A Gaussian point source five cells off center launches a ring that
expands at half a cell per step.  The eight-cell PML soaks up the
outgoing wave; the interior energy trace shows how much survives, and
the per-angle ring amplitude shows the contours staying circular.
"""

import os

import numpy as np

from fdtdlab import GridSpec, Scenario2D, SourceSpec, run_2d

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

grid = GridSpec(dims=2, cells_per_axis=(100, 100), dx=0.01, n_steps=300)
source = SourceSpec(kind="gaussian", t0=20, spread=6, location=(55, 55))
scenario = Scenario2D(grid=grid, source=source, npml=8,
                      snapshot_steps=[30, 60, 90, 120])
result = run_2d(scenario)

energy = result.energy_interior
print(f"peak interior energy: {energy.max():.4f}")
for step in (100, 200, 300):
    print(f"  step {step}: {energy[step]:.3e}  "
          f"({energy[step] / energy.max():.2e} of peak)")
print("the residue above the ~4.5e-5 free-space-wake floor is what the "
      "fixed-profile PML reflects, mostly from its corners")

# ring circularity at T = 90, skipping directions whose ring already
# overlaps the PML on the near (+x/+y) sides
ez = result.snapshots[90]
ii, jj = np.meshgrid(np.arange(100), np.arange(100), indexing="ij")
radius = np.hypot(ii - 55, jj - 55)
angle = np.arctan2(jj - 55, ii - 55)
amplitudes = []
for a in np.linspace(-np.pi, np.pi, 72, endpoint=False):
    if 55 + 42 * max(np.cos(a), np.sin(a), 0) > 89:
        continue
    wedge = (np.abs(np.angle(np.exp(1j * (angle - a)))) < 0.12) \
        & (radius > 28) & (radius < 42)
    amplitudes.append(np.abs(ez[wedge]).max())
amplitudes = np.array(amplitudes)
print(f"ring amplitude anisotropy at T=90: "
      f"{(amplitudes.max() - amplitudes.min()) / amplitudes.mean():.2%} "
      f"over {len(amplitudes)} directions")

with open(os.path.join(OUT, "pml_energy.csv"), "w") as fh:
    fh.write("step,interior_energy\n")
    for n, e in enumerate(energy):
        fh.write(f"{n},{e:.17g}\n")
print(f"wrote {OUT}/pml_energy.csv")

try:
    import matplotlib.pyplot as plt
    fig, axes = plt.subplots(2, 2, figsize=(9, 8))
    for ax, step in zip(axes.flat, (30, 60, 90, 120)):
        ax.imshow(result.snapshots[step].T, origin="lower", cmap="RdBu",
                  vmin=-0.05, vmax=0.05)
        ax.set_title(f"T = {step}")
    fig.tight_layout()
    fig.savefig(os.path.join(OUT, "pml_snapshots.png"), dpi=120)
    print(f"wrote {OUT}/pml_snapshots.png")
except ImportError:
    pass
