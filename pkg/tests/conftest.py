"""Test configuration for emunruh.

This module adjusts ``sys.path`` so that the local ``src`` layout can be
imported without requiring ``pip install -e`` during testing.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

# Add the repository's ``src`` directory to ``sys.path`` for local imports.
_REPO_ROOT = Path(__file__).resolve().parents[1]
_SRC_PATH = _REPO_ROOT / "src"
if _SRC_PATH.is_dir():
    sys.path.insert(0, str(_SRC_PATH))


@pytest.fixture
def static_rates():
    """Rates of two static z-polarized atoms at unit separation in vacuum."""
    import numpy as np

    from emunruh.spectral import RateCoefficients

    cross = 0.75 * (np.sin(1.0) - np.cos(1.0))
    return RateCoefficients(0.25, 0.25, cross, cross, 0.25, 0.25, cross, cross)
