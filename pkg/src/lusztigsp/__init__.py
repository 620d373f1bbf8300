"""Nilpotent orbits, Lusztig functions and Fourier eigenfunctions on sp_2n over F_p."""

from .ffield import FieldSpec, gauss_sum, sgn, tau
from .kernels import BACKEND
from .liealg import SymplecticPartition
from .lusztig import eigen_check, fourier_transform, lusztig_function
from .orbits import OrbitLabel, classify_nilpotent, orbit_partition_oracle

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldSpec",
    "OrbitLabel",
    "SymplecticPartition",
    "classify_nilpotent",
    "eigen_check",
    "fourier_transform",
    "gauss_sum",
    "lusztig_function",
    "orbit_partition_oracle",
    "sgn",
    "tau",
]
