import random

import pytest
from hypothesis import settings

from fillvol._rational import Q
from fillvol.chain import Z, Z2, Chain

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_chain(rng: random.Random, k: int, N: int, ring=Z, count=6, grid=3, denominator=1) -> Chain:
    terms = []
    for _ in range(count):
        verts = [tuple(Q(rng.randint(-grid, grid), denominator) for _ in range(N)) for _ in range(k + 1)]
        terms.append((verts, rng.choice([-2, -1, 1, 1, 2])))
    return Chain(k, N, terms, ring)


def random_cycle(rng: random.Random, n: int, N: int, ring=Z, count=4, grid=3) -> Chain:
    """Boundary of a random (n+1)-chain; never empty."""
    while True:
        z = random_chain(rng, n + 1, N, ring, count, grid).boundary()
        if z:
            return z


@pytest.fixture
def square():
    from fillvol.generators import square_loop

    return square_loop()


@pytest.fixture
def octa():
    from fillvol.generators import octahedron

    return octahedron()


RINGS = (Z, Z2)


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
