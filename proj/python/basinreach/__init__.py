"""Constructing initial points from which gradient descent or gradient flow
reaches a chosen local minimum or saddle."""

from ._core import *  # noqa: F401,F403
from ._core import Error, PreconditionError, ObjectiveFunction, StepSchedule  # noqa: F401
