import os
import time

import pytest

from extremal_primes.curves import CurveQ
from extremal_primes.prime_scan import scan

WORKERS = min(os.cpu_count() or 1, 8)


@pytest.fixture(scope="session")
def e11():
    return CurveQ(1, 1, label="E11")


@pytest.fixture(scope="session")
def cm_curve():
    return CurveQ(-1, 0, label="CM")


@pytest.fixture(scope="session")
def scan_noncm_1e6(e11):
    """Full scan of [2, 10^6] for the non-CM fixture curve, with timing."""
    t0 = time.perf_counter()
    report = scan(e11, 2, 10**6 + 1, keep_records=True, workers=WORKERS)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def scan_cm_1e6(cm_curve):
    """Full scan of [2, 10^6] for the CM fixture curve, with timing."""
    t0 = time.perf_counter()
    report = scan(cm_curve, 2, 10**6 + 1, keep_records=True, workers=WORKERS)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def e11_windows(e11):
    """Scans of the doubling windows (x, 2x] for x in {1e4, 1e5, 1e6}."""
    return {
        x: scan(e11, x + 1, 2 * x + 1, keep_records=True, workers=WORKERS)
        for x in (10**4, 10**5, 10**6)
    }
