from ._mhd import *  # noqa: F401,F403
from ._mhd import __doc__  # noqa: F401
