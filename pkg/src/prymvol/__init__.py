"""Exact volume polynomials for tropical Jacobians and Prym varieties of double covers."""

from .cover import DoubleCover, VoltageSpec, build_from_voltage, dilation_stats, validate
from .graph import MetricGraph, genus
from .polynomial import MultiPoly
from .volumes import (
    enumerate_ogods,
    jacobian_polynomial,
    prym_polynomial,
    prym_volume,
    prym_volume_combinatorial,
    prym_volume_homology,
    prym_volume_kernel,
)

__version__ = "0.1.0"
