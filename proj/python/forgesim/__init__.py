"""Agent-based simulator of open-source developer communities.

Thin re-export of the compiled ``_forgesim`` extension.
"""

from ._forgesim import *  # noqa: F401,F403
from ._forgesim import __version__  # noqa: F401
