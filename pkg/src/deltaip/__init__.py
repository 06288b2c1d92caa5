"""Exact reductions for integer programs with bounded subdeterminants."""

from __future__ import annotations

from .colpipe import solve_two_per_column
from .model import IPInstance, IPResult
from .rowpipe import solve_two_per_row

__version__ = "0.1.0"

__all__ = ["IPInstance", "IPResult", "solve_two_per_column", "solve_two_per_row", "__version__"]
