"""fdtdlab: Yee-lattice FDTD solvers in 1D/2D/3D with absorbing
boundaries, PML, total-field/scattered-field plane waves, dielectric
scatterers, built-in analytic oracles, and a microstrip patch antenna
design calculator."""

__version__ = "0.1.0"

from .core import (
    C0,
    EPS0,
    ETA0,
    MU0,
    FieldState1D,
    FieldState2D,
    FieldState3D,
    GridSpec,
    MaterialMap,
    NumericError,
    SourceSpec,
    ValidationError,
    compile_materials,
    courant_dt,
    denormalize_e,
    gaussian_pulse,
    normalize_e,
)
from .solver1d import Scenario1D, run_1d
from .solver2d import CylinderSpec, Scenario2D, TfsfBox2D, build_pml_2d, \
    rasterize_cylinder, run_2d
from .solver3d import Scenario3D, SliceSpec, SphereSpec, TfsfBox3D, \
    build_pml_3d, rasterize_sphere, run_3d
from . import analytic, antenna, oracles, validation

__all__ = [
    "C0", "EPS0", "ETA0", "MU0",
    "FieldState1D", "FieldState2D", "FieldState3D",
    "GridSpec", "MaterialMap", "SourceSpec",
    "NumericError", "ValidationError",
    "compile_materials", "courant_dt", "gaussian_pulse",
    "normalize_e", "denormalize_e",
    "Scenario1D", "run_1d",
    "Scenario2D", "CylinderSpec", "TfsfBox2D", "build_pml_2d",
    "rasterize_cylinder", "run_2d",
    "Scenario3D", "SphereSpec", "SliceSpec", "TfsfBox3D", "build_pml_3d",
    "rasterize_sphere", "run_3d",
    "analytic", "antenna", "oracles", "validation",
]
