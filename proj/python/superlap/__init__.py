"""Superposed fractional Neumann problems on an interval."""

from ._superlap import *  # noqa: F401,F403
from ._superlap import __doc__  # noqa: F401
