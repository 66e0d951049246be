"""Retention criteria for principal components under multiple covariance estimators.

The compiled extension carries the implementation; this package re-exports it.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # in-tree builds place _core next to the package
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
