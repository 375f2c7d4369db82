"""Floquet free-fermion simulator for two-site correlations in a driven
transverse-field XY chain."""

__version__ = "0.1.0"

from .model import KGrid, KMode, ModelParams, finite_kgrid, thermo_kgrid

__all__ = [
    "KGrid",
    "KMode",
    "ModelParams",
    "finite_kgrid",
    "thermo_kgrid",
    "__version__",
]
