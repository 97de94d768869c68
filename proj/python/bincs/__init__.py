"""Deterministic binary measurement matrices for compressed sensing."""

from ._bincs import *  # noqa: F401,F403
from ._bincs import Error, MalformedAlist, __doc__  # noqa: F401

__version__ = "0.1.0"
