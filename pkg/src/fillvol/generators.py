"""Gallery of PL cycles with rational vertices."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from ._rational import Q, as_rational
from .chain import Z, Chain, permutation_sign
from .geometry import translate

LIMIT_DENOMINATOR = 10**6


def _rat(x: float) -> Q:
    return as_rational(Fraction(x).limit_denominator(LIMIT_DENOMINATOR))


def _embed(p, ambient: int) -> tuple:
    if len(p) > ambient:
        raise ValueError(f"cannot embed a {len(p)}-dimensional point in R^{ambient}")
    return tuple(p) + (0,) * (ambient - len(p))


def _loop(points, ambient: int, ring: str = Z) -> Chain:
    pts = [_embed(p, ambient) for p in points]
    segs = [((pts[i], pts[(i + 1) % len(pts)]), 1) for i in range(len(pts))]
    return Chain(1, ambient, segs, ring)


def square_loop(ambient: int = 2, ring: str = Z) -> Chain:
    return _loop([(0, 0), (1, 0), (1, 1), (0, 1)], ambient, ring)


def polygon_loop(m: int = 8, ambient: int = 2, radius=1, ring: str = Z) -> Chain:
    """Regular m-gon; vertices are rational approximations of the circle points."""
    if m < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    radius = as_rational(radius)
    pts = [(radius * _rat(math.cos(2 * math.pi * i / m)), radius * _rat(math.sin(2 * math.pi * i / m))) for i in range(m)]
    return _loop(pts, ambient, ring)


def random_loop(m: int = 12, ambient: int = 3, seed: int = 0, denominator: int = 64, ring: str = Z) -> Chain:
    """Closed polygon through m random points of the grid (1/denominator) Z^N in [-1, 1]^N."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < m:
        p = tuple(Q(int(c), denominator) for c in rng.integers(-denominator, denominator + 1, size=ambient))
        if not pts or p != pts[-1]:
            pts.append(p)
    if pts[0] == pts[-1]:
        pts.pop()
    return _loop(pts, ambient, ring)


def octahedron(ambient: int = 3, scale=1, ring: str = Z) -> Chain:
    """Boundary of the cross-polytope conv(±e_i) in R^3, 8 triangles."""
    scale = as_rational(scale)
    terms = []
    for s in itertools.product([1, -1], repeat=3):
        tri = tuple(_embed(tuple(scale * s[i] if j == i else 0 for j in range(3)), ambient) for i in range(3))
        terms.append((tri, s[0] * s[1] * s[2]))
    return Chain(2, ambient, terms, ring)


def subdivided_sphere(depth: int = 1, ambient: int = 3, ring: str = Z) -> Chain:
    """Octahedron with each triangle split in four ``depth`` times, vertices pushed to the unit sphere."""
    tris = [(tuple(s), c) for s, c in octahedron(3)]
    for _ in range(depth):
        nxt = []
        for (a, b, c), m in tris:
            ab = tuple((x + y) / 2 for x, y in zip(a, b))
            bc = tuple((x + y) / 2 for x, y in zip(b, c))
            ca = tuple((x + y) / 2 for x, y in zip(c, a))
            nxt += [((a, ab, ca), m), ((ab, b, bc), m), ((ca, bc, c), m), ((ab, bc, ca), m)]
        tris = nxt
    cache: dict = {}

    def push(v):
        if v not in cache:
            norm = math.sqrt(sum(float(x) ** 2 for x in v))
            cache[v] = _embed(tuple(_rat(float(x) / norm) for x in v), ambient)
        return cache[v]

    return Chain(2, ambient, [(tuple(push(v) for v in t), m) for t, m in tris], ring)


def torus_grid(p: int = 4, q: int = 4, ambient: int = 3, major=2, minor=1, ring: str = Z) -> Chain:
    """PL torus of revolution sampled on a p x q angle grid, 2pq triangles."""
    if p < 3 or q < 3:
        raise ValueError("torus grid needs p, q >= 3")
    R, r = float(major), float(minor)

    def vert(i, j):
        u = 2 * math.pi * (i % p) / p
        v = 2 * math.pi * (j % q) / q
        return _embed(
            (_rat((R + r * math.cos(v)) * math.cos(u)), _rat((R + r * math.cos(v)) * math.sin(u)), _rat(r * math.sin(v))),
            ambient,
        )

    terms = []
    for i in range(p):
        for j in range(q):
            a, b, c, d = vert(i, j), vert(i + 1, j), vert(i + 1, j + 1), vert(i, j + 1)
            terms += [((a, b, c), 1), ((a, c, d), 1)]
    return Chain(2, ambient, terms, ring)


def kuhn_solid(sizes, cells, ring: str = Z) -> Chain:
    """Fundamental chain of a box [0, sizes] cut into cells and each cell into d! Kuhn simplices."""
    d = len(sizes)
    sizes = [as_rational(s) for s in sizes]
    steps = [s / c for s, c in zip(sizes, cells)]
    terms = []
    for cell in itertools.product(*(range(c) for c in cells)):
        origin = [steps[j] * cell[j] for j in range(d)]
        for perm in itertools.permutations(range(d)):
            v = list(origin)
            verts = [tuple(v)]
            for axis in perm:
                v[axis] += steps[axis]
                verts.append(tuple(v))
            terms.append((verts, permutation_sign(perm)))
    return Chain(d, d, terms, ring)


def box_surface(sizes=(1, 1, 1), cells=(1, 1, 1), ring: str = Z) -> Chain:
    """Boundary of a triangulated box; a long box gives non-trivial decompositions."""
    return kuhn_solid(sizes, cells, ring).boundary()


def random_boundary(n: int = 2, count: int = 10, ambient: int | None = None, seed: int = 0, grid: int = 3, ring: str = Z) -> Chain:
    """Boundary of a random (n+1)-chain with vertices on a small integer grid."""
    ambient = n + 1 if ambient is None else ambient
    if ambient < n + 1:
        raise ValueError("random boundary needs N >= n+1")
    rng = np.random.default_rng(seed)
    terms = []
    for _ in range(count):
        verts = [tuple(int(c) for c in rng.integers(0, grid + 1, size=ambient)) for _ in range(n + 2)]
        terms.append((verts, int(rng.choice([-1, 1]))))
    return Chain(n + 1, ambient, terms, ring).boundary()


GENERATORS = {
    "square-loop": square_loop,
    "polygon-loop": polygon_loop,
    "random-loop": random_loop,
    "octahedron": octahedron,
    "subdivided-sphere": subdivided_sphere,
    "torus-grid": torus_grid,
    "box-surface": box_surface,
    "random-boundary": random_boundary,
}


def generate_cycle(kind: str, params: dict | None = None, seed: int = 0) -> Chain:
    """Build a gallery cycle by name; the result is checked to be a cycle."""
    params = dict(params or {})
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown cycle kind {kind!r}; choose from {sorted(GENERATORS)}") from None
    if kind in ("random-loop", "random-boundary"):
        params.setdefault("seed", seed)
    z = fn(**params)
    if not z.is_cycle():
        raise RuntimeError(f"generator {kind} produced a non-cycle")
    return z


__all__ = ["GENERATORS", "generate_cycle", "translate"] + [f.__name__ for f in GENERATORS.values()] + ["kuhn_solid"]
