"""Matrix regularizations of surfaces, discrete curvature and the
non-commutative Gauss-Bonnet theorem."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
