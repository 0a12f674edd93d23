"""Quotient-geometry posterior summaries for latent space network models."""

from quotnet._core import *  # noqa: F401,F403
from quotnet._core import __doc__  # noqa: F401
