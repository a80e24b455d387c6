"""Causal-flow measures for bivariate time series: Liang-style information
flows, structural-VAR FEVD/IRF machinery, and transient-climate-response
estimation, backed by the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
