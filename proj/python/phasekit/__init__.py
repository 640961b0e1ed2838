"""Circular-density discrimination and estimation toolkit.

The compiled extension carries all functionality; this package just
re-exports it.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # development layout: extension on sys.path, not installed
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
