"""Achievable error exponents for asynchronous multiple-access channels."""

try:
    from ._amacee import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _amacee import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)

__version__ = "0.1.0"
