# Copyright 2026 The harmgate authors
# License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

"""Harmonic-gated speech enhancement core (thin wrapper over the C++ module)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
