"""Size caps for the exponential routines.

``CHIFORB_CAP`` (environment) overrides the vertex cap of the exact oracles
(chromatic number, triangle-free chromatic number, odd-hole search).
"""
from __future__ import annotations

import os

GRAPH_CAP = 512
PATTERN_CAP = 12
EXACT_CAP_DEFAULT = 64


def exact_cap() -> int:
    raw = os.environ.get("CHIFORB_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return EXACT_CAP_DEFAULT
