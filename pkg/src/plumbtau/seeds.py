"""Deterministic seeding for the randomized property suites."""

from __future__ import annotations

import os

DEFAULT_SEED = 20260814


def property_seed() -> int:
    """Seed for randomized suites; override with the PLUMBTAU_SEED env var."""
    return int(os.environ.get("PLUMBTAU_SEED", DEFAULT_SEED))
