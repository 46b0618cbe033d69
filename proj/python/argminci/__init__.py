"""Argmin confidence sets via cross-validated exponential weighting."""

try:
    from ._argminci import *  # noqa: F401,F403
    from ._argminci import __doc__  # noqa: F401
except ImportError:
    # Development layout: the extension sits on sys.path instead of inside
    # the package.
    from _argminci import *  # noqa: F401,F403
    from _argminci import __doc__  # noqa: F401

__version__ = "0.1.0"
