"""Detuning-pulse composite sequences: propagators, TDSE integration and scans.

Units: hbar = 1, segment duration pi, Rabi frequency alpha, detuning in units
of the nominal Rabi frequency. Scans return ScanTable objects with ``columns``,
``data`` (numpy array), ``metadata`` and ``to_csv()``.
"""
from ._core import *  # noqa: F401,F403
from ._core import InvalidArgument, DomainError, NumericalError  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
