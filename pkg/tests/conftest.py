import time

import numpy as np
import pytest

SESSION_T0 = time.time()


@pytest.fixture(scope="session")
def disk_grid():
    """Polar grid covering |z| <= 0.9, away from catalog singularities."""
    pts = []
    for rad in np.linspace(0.1, 0.9, 9):
        pts.extend(rad * np.exp(2j * np.pi * (np.arange(20) + 0.37) / 20))
    return np.array(pts)


@pytest.fixture(scope="session")
def wide_grid():
    """Polar grid reaching |z| = 0.99 for reconstruction checks."""
    pts = []
    for rad in np.linspace(0.15, 0.99, 8):
        pts.extend(rad * np.exp(2j * np.pi * np.arange(16) / 16))
    return np.array(pts)
