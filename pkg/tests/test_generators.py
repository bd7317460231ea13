import math

import pytest

from fillvol.generators import (
    GENERATORS,
    box_surface,
    generate_cycle,
    kuhn_solid,
    polygon_loop,
    random_boundary,
    subdivided_sphere,
    torus_grid,
)
from fillvol.metric import chain_volume


def test_square():
    z = generate_cycle("square-loop")
    assert z.is_cycle() and chain_volume(z) == 4.0


def test_octahedron():
    z = generate_cycle("octahedron")
    assert len(z) == 8 and chain_volume(z) == pytest.approx(4 * math.sqrt(3), rel=1e-12)


def test_random_boundary_deterministic():
    a = random_boundary(2, 10, seed=4)
    assert a == random_boundary(2, 10, seed=4) and a.is_cycle() and a.dim == 2


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_every_kind_is_cycle(kind):
    assert generate_cycle(kind).is_cycle()


def test_polygon_perimeter_approaches_circle():
    assert chain_volume(polygon_loop(64)) == pytest.approx(2 * math.pi, rel=2e-3)
    with pytest.raises(ValueError):
        polygon_loop(2)


def test_sphere_area_approaches_sphere():
    areas = [chain_volume(subdivided_sphere(d)) for d in range(4)]
    assert areas == sorted(areas) and areas[-1] == pytest.approx(4 * math.pi, rel=0.03)
    assert len(subdivided_sphere(2)) == 8 * 16


def test_torus():
    z = torus_grid(4, 4)
    assert len(z) == 32 and z.is_cycle()
    with pytest.raises(ValueError):
        torus_grid(2, 4)


def test_kuhn_solid_volume():
    assert chain_volume(kuhn_solid((1, 2, 3), (2, 2, 2))) == pytest.approx(6)
    assert chain_volume(box_surface((1, 2, 3), (1, 1, 1))) == pytest.approx(22)


def test_embedding():
    assert generate_cycle("octahedron", {"ambient": 5}).ambient == 5
    with pytest.raises(ValueError):
        generate_cycle("octahedron", {"ambient": 2})


def test_unknown_kind():
    with pytest.raises(ValueError):
        generate_cycle("klein-bottle")
