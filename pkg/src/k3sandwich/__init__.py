"""Exact verification toolkit for sandwiched Shioda-Inose structures on K3 surfaces."""

__version__ = "0.1.0"

from . import exactalg, lattice, quadform  # noqa: E402
