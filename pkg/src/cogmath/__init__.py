"""Naive inference, order relations, Peano verification, counting acquisition
and association chains.

``cogmath.backend()`` names the active kernel backend: ``"cython"`` when the
compiled extension is built, ``"python"`` otherwise.
"""

from cogmath._backend import name as backend

__all__ = ["backend"]
__version__ = "0.1.0"
