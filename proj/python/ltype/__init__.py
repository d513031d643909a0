from _ltype import *  # noqa: F401,F403
from _ltype import __doc__  # noqa: F401
