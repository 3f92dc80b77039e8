"""Cable waves on a bilinear elastic substrate.

Closed-form periodic traveling waves (free and uniformly loaded), an explicit
finite-difference simulator for the half-infinite cable, Floquet and
stroboscopic stability diagnostics, and the experiment layer shared with the
command-line tool.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
