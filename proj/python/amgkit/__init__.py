"""Aggregation-based algebraic multigrid with CG/FCG solvers."""

from ._amgkit import *  # noqa: F401,F403
from ._amgkit import __version__  # noqa: F401
