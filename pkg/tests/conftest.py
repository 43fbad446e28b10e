import time

import pytest

from pds_forge import certify
from pds_forge.arith import is_prime


@pytest.fixture(scope="session")
def certificates_to_499():
    """Certificates (with wall-clock build times) for every prime 5 <= p < 500,
    built once and shared across the acceptance criteria."""
    out = {}
    for p in range(5, 500):
        if is_prime(p):
            t0 = time.perf_counter()
            cert = certify(p)
            out[p] = (cert, time.perf_counter() - t0)
    return out
