"""Grothendieck classes of Hilbert schemes of points on surfaces and of
moduli spaces of rank-2 sheaves, computed exactly in the E-polynomial measure."""
from .errors import HilbMotiveError, PreconditionError
from .exactalg import LPoly, TSeries, plethystic_exp, plethystic_log, positive_part_div
from .geom import SurfaceData, preset
from .hilb import hilb_class, hilb_series, punctual_class
from .partitions import Partition, enumerate_partitions

__version__ = "0.1.0"

__all__ = [
    "HilbMotiveError", "PreconditionError", "LPoly", "TSeries", "plethystic_exp", "plethystic_log",
    "positive_part_div", "SurfaceData", "preset", "hilb_class", "hilb_series", "punctual_class",
    "Partition", "enumerate_partitions",
]
