"""Scaled relative graphs for nonmonotone operators and operator-splitting circuit solvers."""
from .errors import *  # noqa: F401,F403
from .operators import *  # noqa: F401,F403
from .srg import *  # noqa: F401,F403
from .elements import *  # noqa: F401,F403
from .solvers import *  # noqa: F401,F403
from .circuits import *  # noqa: F401,F403
from .config import *  # noqa: F401,F403

__version__ = "0.1.0"
