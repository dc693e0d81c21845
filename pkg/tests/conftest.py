import math

import pytest

from morikawa import geometry, minimize

SQRT2 = math.sqrt(2.0)
ORACLE_R = (1.0, 1.21, 2.0, 4.0, 7.29, 16.0)


@pytest.fixture(scope="session")
def mu_results():
    return {r: minimize.minimize_mu(r) for r in ORACLE_R}


@pytest.fixture(scope="session")
def brute_results():
    return {r: geometry.brute_force_mu(geometry.Scene(r), 2000) for r in ORACLE_R}
