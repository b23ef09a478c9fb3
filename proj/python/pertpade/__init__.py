"""Bound-state energies from a perturbation series continued by Pade approximants."""

from ._pertpade import *  # noqa: F401,F403
from ._pertpade import __version__, Error  # noqa: F401
