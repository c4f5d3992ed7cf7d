"""Shared fixtures.

The Weyl-group enumerations take seconds (E6) to minutes (E7); each is
computed once per session, with its wall time, and shared between the
lattice tests and the acceptance gate.
"""

from time import perf_counter

import pytest

from cyclocover.lattice import root_lattice, weyl_image_order


def _timed_weyl(name, p):
    lat = root_lattice(name, -1)
    t0 = perf_counter()
    orders = weyl_image_order(lat, p)
    return orders, perf_counter() - t0


@pytest.fixture(scope="session")
def e6_weyl():
    return _timed_weyl("E6", 3)


@pytest.fixture(scope="session")
def e7_weyl():
    return _timed_weyl("E7", 2)
