"""Quality-diversity optimization over neural-network team policies."""

from ._maqd import *  # noqa: F401,F403
from ._maqd import __doc__  # noqa: F401
