# Copyright 2026 The Tempograph Authors
# SPDX-License-Identifier: Apache-2.0
"""Link prediction on continuous-time dynamic graphs."""

from tempograph._core import *  # noqa: F401,F403
from tempograph._core import __doc__  # noqa: F401

__version__ = "0.1.0"
