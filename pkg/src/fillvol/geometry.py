"""Exact PL geometry against sup-norm balls: clipping, slicing, clamping, coning.

All cutting is done by *global stellar edge subdivision*: every edge crossing
a hyperplane is split at its crossing point in every simplex containing it,
edges being processed in lexicographic order of their endpoints. Because the
subdivision is driven by edges alone, two simplices sharing a face always cut
it the same way, the subdivision is a chain map, and boundaries of clipped
pieces cancel exactly.

Each edge split S_e comes with a chain homotopy H_e(s) = -[p, s] (p the split
point), which satisfies S_e(z) - z = boundary(H_e(z)) on cycles. These
(n+1)-simplices are flat, so they carry zero volume; the filling pipeline adds
them to keep boundary(fill) == z exact even though it works on refinements.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from ._rational import Q, as_rational
from .chain import Chain, Point, _accumulate, canonicalize, make_point


class DegenerateRadiusError(ValueError):
    """A vertex lies on a face hyperplane of the ball; retry with another radius."""

    retriable = True


@dataclass(frozen=True)
class CubeBall:
    """Closed sup-norm ball {x : max_j |x_j - center_j| <= radius}."""

    center: Point
    radius: Q

    def __post_init__(self):
        object.__setattr__(self, "center", make_point(self.center))
        object.__setattr__(self, "radius", as_rational(self.radius))
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def lo(self) -> Point:
        return tuple(c - self.radius for c in self.center)

    @property
    def hi(self) -> Point:
        return tuple(c + self.radius for c in self.center)

    @property
    def diameter(self) -> Q:
        return 2 * self.radius

    def hyperplanes(self) -> list[tuple[int, Q]]:
        planes = []
        for j, c in enumerate(self.center):
            planes.append((j, c - self.radius))
            planes.append((j, c + self.radius))
        return planes

    def contains(self, p: Point) -> bool:
        r = self.radius
        return all(abs(a - c) <= r for a, c in zip(p, self.center))

    def contains_simplex(self, s) -> bool:
        return all(self.contains(v) for v in s)

    def separates(self, s) -> bool:
        """True if some face hyperplane has all of s strictly on its far side."""
        r = self.radius
        for j, c in enumerate(self.center):
            if all(v[j] > c + r for v in s) or all(v[j] < c - r for v in s):
                return True
        return False

    def disjoint_from(self, other: "CubeBall") -> bool:
        return any(abs(a - b) > self.radius + other.radius for a, b in zip(self.center, other.center))

    def check_generic(self, c: Chain) -> None:
        faces = [(j, lo, hi) for j, (lo, hi) in enumerate(zip(self.lo, self.hi))]
        for v in c.vertices():
            for j, lo, hi in faces:
                if v[j] == lo or v[j] == hi:
                    raise DegenerateRadiusError(
                        f"vertex {tuple(str(x) for x in v)} lies on face x[{j}] = {v[j]} of {self}"
                    )


def _crossing_edges(s, axis: int, t) -> list:
    below = [v for v in s if v[axis] < t]
    if not below:
        return []
    above = [v for v in s if v[axis] > t]
    return [(a, b) if a < b else (b, a) for a in below for b in above]


def _crossing_point(a: Point, b: Point, axis: int, t) -> Point:
    lam = (t - a[axis]) / (b[axis] - a[axis])
    p = [x + lam * (y - x) for x, y in zip(a, b)]
    p[axis] = t
    return tuple(p)


def _split_edges(terms: dict, ring: str, axis: int, t, active=None, homotopy: dict | None = None) -> None:
    """Stellar-subdivide, in place, every edge crossing x[axis] == t.

    Only edges of simplices passing ``active`` are scheduled, but a scheduled
    edge is split in every simplex that contains it.
    """
    index = defaultdict(list)
    pending = set()
    for s in terms:
        edges = _crossing_edges(s, axis, t)
        if not edges:
            continue
        for e in edges:
            index[e].append(s)
        if active is None or active(s):
            pending.update(edges)
    for e in sorted(pending):
        a, b = e
        p = None
        for s in index.pop(e, ()):
            coef = terms.pop(s, 0)
            if not coef:
                continue
            if p is None:
                p = _crossing_point(a, b, axis, t)
            ia, ib = s.index(a), s.index(b)
            # replacing either endpoint by p keeps the orientation of s
            for pos in (ib, ia):
                key, c = canonicalize(s[:pos] + (p,) + s[pos + 1 :], coef, ring)
                if not c:
                    continue
                _accumulate(terms, key, c, ring)
                for ce in _crossing_edges(key, axis, t):
                    index[ce].append(key)
            if homotopy is not None:
                key, c = canonicalize((p,) + s, -coef, ring)
                _accumulate(homotopy, key, c, ring)


def _refine_by_ball(terms: dict, ring: str, ball: CubeBall, homotopy: dict | None, restrict: bool) -> None:
    active = (lambda s: not ball.separates(s)) if restrict else None
    for axis, t in ball.hyperplanes():
        _split_edges(terms, ring, axis, t, active=active, homotopy=homotopy)


@dataclass(frozen=True)
class BallSplit:
    """Refinement S(z) = sum(insides) + rest, with boundary(homotopy) = S(z) - z for cycles z."""

    insides: tuple[Chain, ...]
    rest: Chain
    homotopy: Chain


def split_by_balls(z: Chain, balls, *, check_generic: bool = True) -> BallSplit:
    """Cut z along the faces of pairwise disjoint balls and sort the pieces."""
    balls = list(balls)
    if check_generic:
        for ball in balls:
            ball.check_generic(z)
    ring = z.ring
    terms = dict(z._terms)
    htpy: dict = {}
    for ball in balls:
        _refine_by_ball(terms, ring, ball, htpy, restrict=True)
    insides = [dict() for _ in balls]
    rest = {}
    for s, c in terms.items():
        for i, ball in enumerate(balls):
            if ball.contains_simplex(s):
                insides[i][s] = c
                break
        else:
            rest[s] = c
    k, N = z.dim, z.ambient
    return BallSplit(
        tuple(Chain._trusted(k, N, ring, d) for d in insides),
        Chain._trusted(k, N, ring, rest),
        Chain._trusted(k + 1, N, ring, htpy),
    )


def restrict_to_ball(z: Chain, ball: CubeBall, *, check_generic: bool = True) -> tuple[Chain, Chain]:
    """(z ∩ B, z ∩ closure of the complement), as pieces of a common refinement."""
    split = split_by_balls(z, [ball], check_generic=check_generic)
    return split.insides[0], split.rest


def slice_at_radius(z: Chain, ball: CubeBall, *, check_generic: bool = True) -> Chain:
    """boundary(z ∩ B); for a cycle z it is the slice of z by the cube surface."""
    inside, _ = restrict_to_ball(z, ball, check_generic=check_generic)
    return inside.boundary()


def clip_simplex_to_halfspace(simplex, axis: int, threshold, side: str = "le") -> list[tuple]:
    """Triangulate simplex ∩ {x[axis] <= t} (side "le") or {x[axis] >= t} (side "ge").

    Pieces are returned as vertex tuples oriented like the input simplex.
    """
    if side not in ("le", "ge"):
        raise ValueError(f"side must be 'le' or 'ge', got {side!r}")
    simplex = tuple(make_point(v) for v in simplex)
    t = as_rational(threshold)
    key, sign = canonicalize(simplex, 1)
    if not sign:
        return []
    keep = (lambda v: v[axis] <= t) if side == "le" else (lambda v: v[axis] >= t)
    if all(keep(v) for v in simplex):
        return [simplex]
    terms = {key: sign}
    _split_edges(terms, "Z", axis, t)
    out = []
    for piece, c in terms.items():
        if not all(keep(v) for v in piece):
            continue
        if c == 1 or len(piece) < 2:
            out.append(piece)
        else:
            out.append((piece[1], piece[0]) + piece[2:])
    return sorted(out)


def clamp_point(p: Point, ball: CubeBall) -> Point:
    r = ball.radius
    return tuple(min(max(x, c - r), c + r) for x, c in zip(p, ball.center))


def clamp_to_ball(c: Chain, ball: CubeBall) -> Chain:
    """Refine c along the ball's faces (so clamping is affine on each piece), then clamp vertices."""
    terms = dict(c._terms)
    for axis, t in ball.hyperplanes():
        _split_edges(terms, c.ring, axis, t)
    refined = Chain._trusted(c.dim, c.ambient, c.ring, terms)
    return refined.map_terms(lambda s: tuple(clamp_point(v, ball) for v in s))


def cone_over_chain(apex: Point, c: Chain) -> Chain:
    """Straight-line cone: each [v0..vk] becomes [apex, v0..vk] with the same coefficient."""
    apex = make_point(apex)
    if len(apex) != c.ambient:
        raise ValueError(f"apex is not in R^{c.ambient}")
    acc: dict = {}
    for s, m in c:
        key, coef = canonicalize((apex,) + s, m, c.ring)
        _accumulate(acc, key, coef, c.ring)
    return Chain._trusted(c.dim + 1, c.ambient, c.ring, acc)


def translate(c: Chain, offset) -> Chain:
    offset = make_point(offset)
    return c.map_terms(lambda s: tuple(tuple(a + b for a, b in zip(v, offset)) for v in s))
