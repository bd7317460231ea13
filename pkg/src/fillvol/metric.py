"""Distances, diameters and Euclidean Hausdorff volume of PL chains.

Volumes come from an exact rational Gram determinant followed by a single
float square root, so degenerate simplices measure exactly zero.
"""
from __future__ import annotations

import enum
import math
from functools import lru_cache

import numpy as np

from ._rational import Q
from .chain import Z2, Chain, Point


class MetricKind(enum.Enum):
    L_INF = "linf"
    L2 = "l2"


L_INF = MetricKind.L_INF
L2 = MetricKind.L2


def distance(p: Point, q: Point, metric: MetricKind = L_INF):
    """Sup-norm distance (exact rational) or Euclidean distance (float)."""
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if metric is L_INF:
        return max((abs(a - b) for a, b in zip(p, q)), default=Q(0))
    return math.sqrt(sum((a - b) * (a - b) for a, b in zip(p, q)))


def _exact_det(M: list[list]) -> Q:
    n = len(M)
    M = [row[:] for row in M]
    det = Q(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det *= p
        for r in range(col + 1, n):
            f = M[r][col] / p
            if f:
                row, prow = M[r], M[col]
                for c in range(col + 1, n):
                    row[c] -= f * prow[c]
    return det


def gram_determinant(simplex) -> Q:
    """Exact determinant of the Gram matrix of edge vectors from vertex 0."""
    k = len(simplex) - 1
    if k == 0:
        return Q(1)
    base = simplex[0]
    edges = [[a - b for a, b in zip(v, base)] for v in simplex[1:]]
    G = [[sum(a * b for a, b in zip(edges[i], edges[j])) for j in range(k)] for i in range(k)]
    return _exact_det(G)


@lru_cache(maxsize=1 << 18)
def simplex_volume(simplex) -> float:
    """Euclidean k-volume sqrt(det G)/k! of an affine simplex (0 if degenerate)."""
    det = gram_determinant(simplex)
    if det <= 0:
        return 0.0
    return math.sqrt(det) / math.factorial(len(simplex) - 1)


def chain_volume(c: Chain) -> float:
    if c.ring == Z2:
        return math.fsum(simplex_volume(s) for s, _ in c)
    return math.fsum(abs(m) * simplex_volume(s) for s, m in c)


def chain_diameter(c: Chain, metric: MetricKind = L_INF):
    """Diameter of the support; attained at vertices for PL chains."""
    verts = c.vertices()
    if not verts:
        raise ValueError("diameter of an empty chain")
    if metric is L_INF:
        return max(max(v[j] for v in verts) - min(v[j] for v in verts) for j in range(c.ambient))
    best = 0.0
    for i, p in enumerate(verts):
        for q in verts[i + 1 :]:
            best = max(best, distance(p, q, L2))
    return best


def bounding_box(c: Chain) -> tuple[Point, Point]:
    verts = c.vertices()
    if not verts:
        raise ValueError("bounding box of an empty chain")
    lo = tuple(min(v[j] for v in verts) for j in range(c.ambient))
    hi = tuple(max(v[j] for v in verts) for j in range(c.ambient))
    return lo, hi


def containing_ball(c: Chain) -> tuple[Point, Q]:
    """Center of the bounding box and half its longest side: an l-inf ball holding spt c."""
    lo, hi = bounding_box(c)
    center = tuple((a + b) / 2 for a, b in zip(lo, hi))
    radius = max(b - a for a, b in zip(lo, hi)) / 2
    return center, radius


def max_distance_to(c: Chain, x: Point, metric: MetricKind = L_INF):
    """Largest distance from x to a vertex of spt c (0 for the empty chain)."""
    verts = c.vertices()
    if not verts:
        return Q(0) if metric is L_INF else 0.0
    return max(distance(x, v, metric) for v in verts)


def as_float_array(c: Chain) -> tuple[np.ndarray, np.ndarray]:
    """(m, k+1, N) float array of simplices and |coefficient| weights."""
    simplices = [s for s, _ in c]
    arr = np.array([[[float(x) for x in v] for v in s] for s in simplices], dtype=np.float64)
    if not simplices:
        arr = np.zeros((0, c.dim + 1, c.ambient), dtype=np.float64)
    if c.ring == Z2:
        weights = np.ones(len(simplices))
    else:
        weights = np.array([abs(m) for _, m in c], dtype=np.float64)
    return arr, weights
