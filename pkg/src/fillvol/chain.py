"""Exact PL chains: formal Z or Z/2 sums of affine simplices with rational vertices.

A simplex is stored as a tuple of points, a point as a tuple of rationals.
Inside a :class:`Chain` every simplex key is canonical: vertices sorted
lexicographically, with the sign of the sorting permutation folded into the
coefficient. Simplices with a repeated vertex are the zero chain (they equal
their own negation under a vertex swap), which keeps ``boundary`` well defined
on canonical keys.
"""
from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from ._rational import Q, as_rational

Z = "Z"
Z2 = "Z2"
RINGS = (Z, Z2)

Point = tuple
Simplex = tuple


def make_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def permutation_sign(order) -> int:
    """Sign of a permutation given as a sequence of distinct indices."""
    sign = 1
    n = len(order)
    for i in range(n):
        oi = order[i]
        for j in range(i + 1, n):
            if oi > order[j]:
                sign = -sign
    return sign


def canonicalize(vertices, coefficient: int, ring: str = Z) -> tuple[Simplex, int]:
    """Sort vertices lexicographically and fold the permutation parity into the
    coefficient (ignored over Z2). A repeated vertex yields coefficient 0."""
    verts = tuple(vertices)
    order = sorted(range(len(verts)), key=verts.__getitem__)
    key = tuple(verts[i] for i in order)
    for a, b in zip(key, key[1:]):
        if a == b:
            return key, 0
    if ring == Z2:
        return key, coefficient % 2
    return key, coefficient * permutation_sign(order)


def _accumulate(terms: dict, key, coef: int, ring: str) -> None:
    if not coef:
        return
    value = terms.get(key, 0) + coef
    if ring == Z2:
        value %= 2
    if value:
        terms[key] = value
    else:
        terms.pop(key, None)


class Chain:
    """Immutable formal sum of oriented affine simplices.

    Construct with an iterable of ``(vertices, coefficient)`` pairs; keys are
    canonicalized and equal simplices are merged.
    """

    __slots__ = ("dim", "ambient", "ring", "_terms")

    def __init__(self, dim: int, ambient: int, terms: Iterable = (), ring: str = Z):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        if dim < 0 or ambient < 1:
            raise ValueError(f"invalid dimensions k={dim}, N={ambient}")
        self.dim = dim
        self.ambient = ambient
        self.ring = ring
        acc: dict = {}
        if isinstance(terms, Mapping):
            terms = terms.items()
        for verts, coef in terms:
            verts = tuple(make_point(v) for v in verts)
            if len(verts) != dim + 1:
                raise ValueError(f"expected {dim + 1} vertices, got {len(verts)}")
            for v in verts:
                if len(v) != ambient:
                    raise ValueError(f"vertex {v} is not in R^{ambient}")
            key, c = canonicalize(verts, int(coef), ring)
            _accumulate(acc, key, c, ring)
        self._terms = acc

    @classmethod
    def _trusted(cls, dim: int, ambient: int, ring: str, terms: dict) -> "Chain":
        # terms must already be canonical with nonzero coefficients
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.ambient = ambient
        obj.ring = ring
        obj._terms = terms
        return obj

    @classmethod
    def empty(cls, dim: int, ambient: int, ring: str = Z) -> "Chain":
        return cls._trusted(dim, ambient, ring, {})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Simplex, int]]:
        return iter(self._terms.items())

    def __repr__(self) -> str:
        return f"Chain(k={self.dim}, N={self.ambient}, ring={self.ring}, terms={len(self._terms)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.dim, self.ambient, self.ring) == (other.dim, other.ambient, other.ring) and (
            self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.ambient, self.ring, frozenset(self._terms.items())))

    def _check_compatible(self, other: "Chain") -> None:
        if not isinstance(other, Chain):
            raise TypeError(f"cannot combine Chain with {type(other).__name__}")
        if (self.dim, self.ambient, self.ring) != (other.dim, other.ambient, other.ring):
            raise ValueError(
                f"incompatible chains: (k={self.dim}, N={self.ambient}, {self.ring}) vs "
                f"(k={other.dim}, N={other.ambient}, {other.ring})"
            )

    def __add__(self, other: "Chain") -> "Chain":
        self._check_compatible(other)
        acc = dict(self._terms)
        for key, coef in other._terms.items():
            _accumulate(acc, key, coef, self.ring)
        return Chain._trusted(self.dim, self.ambient, self.ring, acc)

    def __neg__(self) -> "Chain":
        if self.ring == Z2:
            return self
        return Chain._trusted(self.dim, self.ambient, self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar: int) -> "Chain":
        scalar = int(scalar)
        acc: dict = {}
        for key, coef in self._terms.items():
            _accumulate(acc, key, coef * scalar, self.ring)
        return Chain._trusted(self.dim, self.ambient, self.ring, acc)

    __rmul__ = __mul__

    def boundary(self) -> "Chain":
        if self.dim == 0:
            raise ValueError("boundary of a 0-chain is not defined")
        ring = self.ring
        acc: dict = {}
        for simplex, coef in self._terms.items():
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                # a face of a sorted tuple is still sorted, so no re-canonicalization
                _accumulate(acc, face, coef if (i % 2 == 0 or ring == Z2) else -coef, ring)
        return Chain._trusted(self.dim - 1, self.ambient, ring, acc)

    def is_cycle(self) -> bool:
        if self.dim == 0:
            # a 0-chain is a cycle in the augmented sense iff its coefficients sum to zero
            total = sum(self._terms.values())
            return total % 2 == 0 if self.ring == Z2 else total == 0
        return not self.boundary()

    def support(self) -> list[Simplex]:
        return list(self._terms)

    def vertices(self) -> list[Point]:
        seen = set()
        for simplex in self._terms:
            seen.update(simplex)
        return sorted(seen)

    def map_terms(self, fn) -> "Chain":
        """Apply ``fn(vertices) -> vertices`` to every simplex, keeping coefficients."""
        acc: dict = {}
        for simplex, coef in self._terms.items():
            key, c = canonicalize(fn(simplex), coef, self.ring)
            _accumulate(acc, key, c, self.ring)
        return Chain._trusted(self.dim, self.ambient, self.ring, acc)


def add(a: Chain, b: Chain) -> Chain:
    return a + b


def negate(a: Chain) -> Chain:
    return -a


def boundary(c: Chain) -> Chain:
    return c.boundary()


def is_cycle(c: Chain) -> bool:
    return c.is_cycle()


def support(c: Chain) -> list[Simplex]:
    return c.support()


__all__ = [
    "Z",
    "Z2",
    "Q",
    "Chain",
    "Point",
    "Simplex",
    "make_point",
    "canonicalize",
    "permutation_sign",
    "add",
    "negate",
    "boundary",
    "is_cycle",
    "support",
]
