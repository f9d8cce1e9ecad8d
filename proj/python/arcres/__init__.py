"""Maximal arcs in projective planes, their resolvable Steiner designs,
compatible resolutions, and plane reconstruction."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    ParameterError,
    ParseError,
    StageError,
    ValidationError,
)

__version__ = "0.1.0"
