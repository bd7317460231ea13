"""Disjoint-ball decomposition of an n-cycle with certified volume bounds.

For a cycle z and density threshold a = A_n * eps the decomposition picks
disjoint sup-norm balls B_i such that

  (i)   Vol(z ∩ B_i) >= 4^-n a diam(B_i)^n
  (ii)  Vol(boundary(z ∩ B_i)) <= E_n a^(1/n) n Vol(z ∩ B_i)^((n-1)/n)
  (iii) sum_i Vol(z ∩ B_i) >= 5^-n Vol(z)

Centers are sampled on the support, each gets the last radius r0 where the
volume growth V(x, r) still exceeds a r^n, a greedy Vitali pass keeps
disjoint B(x, 2 r0), and each survivor gets a slice radius in (r0, 2 r0)
with a short slice. All three bounds are re-measured on the output; the
search is repeated with denser sampling when they fail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rational import Q
from .chain import Chain, Point
from .constants import ConstantsTable
from .geometry import CubeBall, DegenerateRadiusError, restrict_to_ball, split_by_balls
from .kernels import growth_profile
from .metric import as_float_array, chain_volume, simplex_volume
from .report import Report, leq

BARYCENTRIC_BITS = 16
RADIUS_BITS = 16


class DecompositionError(RuntimeError):
    """No decomposition passing all certificates was found within the retry cap."""

    def __init__(self, message: str, best_coverage: float, best=None):
        super().__init__(message)
        self.best_coverage = best_coverage
        self.best = best


class VolumeGrowth:
    """r -> Vol(z ∩ B(x, r)) for a fixed chain and center.

    Calls evaluate the float kernel; :meth:`exact` clips with rational
    arithmetic. Use :meth:`at` to reuse the float arrays for another center.
    """

    def __init__(self, z: Chain, center: Point, _arrays=None):
        self.z = z
        self.center = tuple(center)
        if _arrays is None:
            arr, w = as_float_array(z)
            _arrays = (arr, w, chain_volume(z))
        self._arrays = _arrays
        self._fcenter = np.array([float(c) for c in self.center])

    @property
    def total(self) -> float:
        return self._arrays[2]

    def at(self, center: Point) -> "VolumeGrowth":
        return VolumeGrowth(self.z, center, self._arrays)

    def profile(self, radii) -> np.ndarray:
        arr, w, _ = self._arrays
        return growth_profile(arr, w, self._fcenter, np.asarray([float(r) for r in radii], dtype=np.float64))

    def __call__(self, r) -> float:
        return float(self.profile([r])[0])

    def exact(self, r) -> float:
        if r <= 0:
            return 0.0
        inside, _ = restrict_to_ball(self.z, CubeBall(self.center, r))
        return chain_volume(inside)


def volume_growth(z: Chain, x: Point, r) -> float:
    """V(x, r) = Vol(z ∩ B(x, r)) from an exact clip."""
    return VolumeGrowth(z, x).exact(r)


def _dyadic(x: float, bits: int = 20, up: bool = True) -> Q:
    shift = bits - math.floor(math.log2(x))
    scaled = x * 2.0**shift
    num = math.ceil(scaled) if up else math.floor(scaled)
    return Q(num) / Q(2) ** shift if shift >= 0 else Q(num) * Q(2) ** (-shift)


def compute_r0(
    z: Chain,
    x: Point,
    constants: ConstantsTable,
    *,
    epsilon: float | None = None,
    growth: VolumeGrowth | None = None,
    grid: int = 64,
    rel_tol: float = 2.0**-24,
):
    """Approximate last radius with V(x, r) >= A_n eps r^n, or None if there is none.

    Grid scan over (0, R] with R = (Vol(z) / (A_n eps))^(1/n) (beyond R the
    condition fails since V <= Vol(z)), bisection on the last sign change,
    then a refinement grid over (r0, 5 r0] to catch later crossings.
    """
    n = z.dim
    row = constants[n]
    density = row.A * (row.epsilon if epsilon is None else epsilon)
    growth = growth.at(x) if growth is not None else VolumeGrowth(z, x)
    total = growth.total
    if total <= 0:
        return None

    def holds(radii):
        vals = growth.profile(radii)
        return [v >= density * float(r) ** n for r, v in zip(radii, vals)]

    top = _dyadic((total / density) ** (1.0 / n))
    radii = [top * j / grid for j in range(1, grid + 1)]
    flags = holds(radii)
    hits = [j for j, f in enumerate(flags) if f]
    if hits:
        j = hits[-1]
        if j == grid - 1:
            return top
        lo, hi = radii[j], radii[j + 1]
    else:
        lo = None
        r = radii[0]
        for _ in range(60):
            r = r / 2
            if holds([r])[0]:
                lo, hi = r, 2 * r
                break
        if lo is None:
            return None

    for _ in range(4):
        while hi - lo > rel_tol * lo:
            mid = (lo + hi) / 2
            if holds([mid])[0]:
                lo = mid
            else:
                hi = mid
        upper = min(5 * lo, top)
        if upper <= hi:
            break
        probe = [hi + (upper - hi) * j / grid for j in range(1, grid + 1)]
        later = [j for j, f in enumerate(holds(probe)) if f]
        if not later:
            break
        j = later[-1]
        if j == grid - 1:
            return probe[-1]
        lo, hi = probe[j], probe[j + 1]
    return lo


def vitali_select(candidates) -> list[int]:
    """Greedy 5r-covering selection over (center, r0) pairs.

    Largest r0 first (ties by input order); a candidate is kept iff its cube
    B(x, 2 r0) is disjoint from every kept one. A rejected candidate's
    B(x, r0) then lies in B(x_j, 5 r0_j) for the kept j that blocked it.
    """
    order = sorted(range(len(candidates)), key=lambda i: -candidates[i][1])
    kept: list[int] = []
    for i in order:
        x, r = candidates[i]
        if all(
            any(abs(a - b) > 2 * r + 2 * candidates[j][1] for a, b in zip(x, candidates[j][0]))
            for j in kept
        ):
            kept.append(i)
    return kept


def slice_bound(n: int, density: float, E: float, volume: float) -> float:
    """E_n (A_n eps)^(1/n) n V^((n-1)/n), the largest admissible slice volume."""
    return E * density ** (1.0 / n) * n * volume ** ((n - 1) / n)


@dataclass
class SliceChoice:
    radius: Q
    slice: Chain
    bound_ok: bool
    volume: float
    slice_volume: float
    bound: float
    tried: int = 0


def choose_slice_radius(
    z: Chain,
    x: Point,
    r_hat,
    constants: ConstantsTable,
    *,
    samples: int = 64,
    seed: int = 0,
    epsilon: float | None = None,
) -> SliceChoice:
    """First sampled radius in (r_hat, 2 r_hat) whose slice satisfies the coarea bound,
    else the sample with the smallest slice/bound ratio (``bound_ok`` False)."""
    n = z.dim
    row = constants[n]
    density = row.A * (row.epsilon if epsilon is None else epsilon)
    rng = np.random.default_rng(seed)
    scale = 2**RADIUS_BITS
    best = None
    best_ratio = math.inf
    tried = 0
    for u in rng.integers(1, scale, size=samples):
        r = r_hat * (1 + Q(int(u), scale))
        ball = CubeBall(x, r)
        try:
            inside, _ = restrict_to_ball(z, ball)
        except DegenerateRadiusError:
            continue
        tried += 1
        V = chain_volume(inside)
        sl = inside.boundary()
        sv = chain_volume(sl)
        bound = slice_bound(n, density, row.E, V)
        if sv < bound:
            return SliceChoice(r, sl, True, V, sv, bound, tried)
        ratio = sv / bound if bound > 0 else math.inf
        if ratio < best_ratio:
            best_ratio = ratio
            best = SliceChoice(r, sl, False, V, sv, bound, tried)
    if best is None:
        raise DegenerateRadiusError(f"all {samples} sampled radii around {x} were degenerate")
    best.tried = tried
    return best


@dataclass
class BallCertificate:
    ball: CubeBall
    r0: Q
    inside: Chain
    slice: Chain
    volume: float
    slice_volume: float
    lower_bound: float  # right-hand side of (i)
    slice_bound: float  # right-hand side of (ii)

    @property
    def ok_lower(self) -> bool:
        return leq(self.lower_bound, self.volume)

    @property
    def ok_slice(self) -> bool:
        return leq(self.slice_volume, self.slice_bound)


@dataclass
class BallDecomposition:
    n: int
    epsilon: float
    density: float
    pieces: list[BallCertificate]
    rest: Chain
    homotopy: Chain  # boundary(homotopy) = sum(insides) + rest - z
    total_volume: float
    covered_volume: float
    attempts: int = 1
    candidates: int = 0
    report: Report = field(default_factory=Report)

    @property
    def balls(self) -> list[CubeBall]:
        return [p.ball for p in self.pieces]

    @property
    def coverage(self) -> float:
        return self.covered_volume / self.total_volume if self.total_volume else 0.0

    @property
    def ok(self) -> bool:
        return self.report.ok

    def summary(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "density": self.density,
            "balls": [
                {
                    "center": [str(c) for c in p.ball.center],
                    "radius": str(p.ball.radius),
                    "r0": str(p.r0),
                    "volume": p.volume,
                    "slice_volume": p.slice_volume,
                    "bound_i": p.lower_bound,
                    "bound_ii": p.slice_bound,
                    "ok_i": p.ok_lower,
                    "ok_ii": p.ok_slice,
                }
                for p in self.pieces
            ],
            "total_volume": self.total_volume,
            "coverage": self.coverage,
            "coverage_bound": 5.0**-self.n,
            "attempts": self.attempts,
            "candidates": self.candidates,
            "certificates": self.report.as_dict(),
            "ok": self.ok,
        }


def _certify(z: Chain, balls, r0s, n: int, density: float, E: float, total: float, epsilon: float) -> BallDecomposition:
    split = split_by_balls(z, balls)
    pieces = []
    for ball, r0, inside in zip(balls, r0s, split.insides):
        V = chain_volume(inside)
        sv = chain_volume(inside.boundary())
        pieces.append(
            BallCertificate(
                ball,
                r0,
                inside,
                inside.boundary(),
                V,
                sv,
                4.0**-n * density * float(ball.diameter) ** n,
                slice_bound(n, density, E, V),
            )
        )
    covered = math.fsum(p.volume for p in pieces)
    dec = BallDecomposition(n, epsilon, density, pieces, split.rest, split.homotopy, total, covered)
    rep = dec.report
    rep.add(
        "disjoint",
        all(a.disjoint_from(b) for i, a in enumerate(balls) for b in balls[i + 1 :]),
    )
    rep.add("(i) volume lower bound", all(p.ok_lower for p in pieces), f"{len(pieces)} balls")
    rep.add(
        "(ii) slice upper bound",
        all(p.ok_slice for p in pieces),
        f"max ratio {max((p.slice_volume / p.slice_bound for p in pieces if p.slice_bound > 0), default=0.0):.4g}",
    )
    rep.add("(iii) coverage", leq(5.0**-n * total, covered), f"{dec.coverage:.4g} >= {5.0**-n:.4g}")
    return dec


def candidate_centers(z: Chain, n_random: int, seed: int, max_barycenters: int = 64) -> list[Point]:
    """Barycenters of positive-volume simplices plus volume-weighted random support points."""
    simplices = [s for s, _ in z if simplex_volume(s) > 0]
    if not simplices:
        return []
    weights = np.array(
        [simplex_volume(s) * (1 if z.ring == "Z2" else abs(z.terms[s])) for s in simplices], dtype=np.float64
    )
    picked = simplices
    if len(simplices) > max_barycenters:
        step = len(simplices) / max_barycenters
        picked = [simplices[int(i * step)] for i in range(max_barycenters)]
    k1 = z.dim + 1
    centers = [tuple(sum(v[j] for v in s) / k1 for j in range(z.ambient)) for s in picked]
    rng = np.random.default_rng(seed)
    scale = 2**BARYCENTRIC_BITS
    for idx in rng.choice(len(simplices), size=n_random, p=weights / weights.sum()):
        s = simplices[idx]
        w = np.floor(rng.dirichlet(np.ones(k1)) * scale).astype(np.int64)
        w[-1] = scale - w[:-1].sum()
        centers.append(tuple(sum(int(wi) * v[j] for wi, v in zip(w, s)) / scale for j in range(z.ambient)))
    seen = set()
    unique = []
    for c in centers:
        if c not in seen:
            seen.add(c)
            unique.append(c)
    return unique


def decompose(
    z: Chain,
    constants: ConstantsTable,
    *,
    seed: int = 0,
    epsilon: float | None = None,
    n_random: int = 32,
    max_barycenters: int = 64,
    slice_samples: int = 64,
    max_slice_samples: int = 4096,
    max_retries: int = 4,
) -> BallDecomposition:
    n = z.dim
    if n < 2:
        raise ValueError("decomposition needs a cycle of dimension >= 2")
    if not z.is_cycle():
        raise ValueError("decompose expects a cycle")
    total = chain_volume(z)
    if total <= 0:
        raise ValueError("decompose expects a cycle of positive volume")
    row = constants[n]
    eps = row.epsilon if epsilon is None else epsilon
    density = row.A * eps
    growth = VolumeGrowth(z, (Q(0),) * z.ambient)

    best = None
    for attempt in range(max_retries + 1):
        centers = candidate_centers(z, n_random * 2**attempt, seed + 7919 * attempt, max_barycenters)
        cands = []
        for x in centers:
            r0 = compute_r0(z, x, constants, epsilon=eps, growth=growth)
            if r0 is not None:
                cands.append((x, r0))
        if not cands:
            continue
        chosen = vitali_select(cands)
        balls, r0s = [], []
        for rank, i in enumerate(chosen):
            x, r0 = cands[i]
            m = slice_samples
            while True:
                try:
                    choice = choose_slice_radius(
                        z, x, r0, constants, samples=m, seed=seed + 104729 * attempt + rank, epsilon=eps
                    )
                except DegenerateRadiusError:
                    choice = None
                if (choice is not None and choice.bound_ok) or 2 * m > max_slice_samples:
                    break
                m *= 2
            if choice is None:
                continue
            balls.append(CubeBall(x, choice.radius))
            r0s.append(r0)
        if not balls:
            continue
        dec = _certify(z, balls, r0s, n, density, row.E, total, eps)
        dec.attempts = attempt + 1
        dec.candidates = len(cands)
        if dec.ok:
            return dec
        if best is None or dec.coverage > best.coverage:
            best = dec
    raise DecompositionError(
        f"no certified decomposition after {max_retries + 1} attempts",
        best.coverage if best is not None else 0.0,
        best,
    )


def verify_decomposition(z: Chain, dec: BallDecomposition, constants: ConstantsTable) -> Report:
    """Re-derive every claim of a decomposition from z and the ball list alone."""
    n = z.dim
    row = constants[n]
    density = row.A * dec.epsilon
    total = chain_volume(z)
    fresh = _certify(z, dec.balls, [p.r0 for p in dec.pieces], n, density, row.E, total, dec.epsilon)
    rep = Report(list(fresh.report.checks))
    refined = fresh.rest
    for piece in fresh.pieces:
        refined = refined + piece.inside
    rep.add("refinement homotopy", fresh.homotopy.boundary() == refined - z)
    rep.add("homotopy is flat", chain_volume(fresh.homotopy) == 0.0)
    rep.add(
        "slices are cycles", all(p.slice.is_cycle() for p in fresh.pieces)
    )
    rep.add(
        "matches producer",
        all(
            leq(abs(a.volume - b.volume), 1e-9 * max(1.0, a.volume))
            and leq(abs(a.slice_volume - b.slice_volume), 1e-9 * max(1.0, a.slice_volume))
            for a, b in zip(fresh.pieces, dec.pieces)
        )
        and len(fresh.pieces) == len(dec.pieces),
    )
    return rep
