import random

import pytest

from coefficients import ring_make
from config.config import c


@pytest.fixture
def w2f2():
    """W_2(F_2), the ring behind the small multiplication table golden."""
    return ring_make(prime=2, truncation=2, kind="witt-fp")


@pytest.fixture
def w3f2():
    return ring_make(prime=2, truncation=3, kind="witt-fp")


@pytest.fixture
def w3f3():
    return ring_make(prime=3, truncation=3, kind="witt-fp")


@pytest.fixture
def w2f9():
    """W_2(F_9): coordinates in F_3[t]/(t^2 + 1), t encoded as 3."""
    return ring_make(prime=3, truncation=2, kind="witt-perfect", field_degree=2)


@pytest.fixture
def z9():
    return ring_make(prime=3, truncation=2, kind="zmod-pn")


@pytest.fixture
def formal_eta():
    return ring_make(prime=2, kind="formal-eta")


SHIPPED = {
    "W_2(F_2)": dict(prime=2, truncation=2, kind="witt-fp"),
    "W_3(F_3)": dict(prime=3, truncation=3, kind="witt-fp"),
    "W_2(F_9)": dict(prime=3, truncation=2, kind="witt-perfect", field_degree=2),
    "Z/9": dict(prime=3, truncation=2, kind="zmod-pn"),
    "formal-eta": dict(prime=2, kind="formal-eta"),
}


@pytest.fixture(params=list(SHIPPED), ids=list(SHIPPED))
def any_ring(request):
    """Every shipped coefficient instance."""
    return ring_make(**SHIPPED[request.param])


@pytest.fixture
def rng():
    return random.Random(c.DEFAULT_SEED)


@pytest.fixture
def golden():
    def read(name: str):
        return (c.GOLDEN_PATH / name).read_text().splitlines()

    return read
