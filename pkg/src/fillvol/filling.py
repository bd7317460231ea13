"""Constructive fillings with per-stage certificates.

1-cycles are filled by coning from their lexicographically smallest vertex.
For n >= 2 each round decomposes the current cycle into balls, fills every
slice one dimension down, clamps that filling into its ball, cones the
resulting small cycles from the ball centers and continues with the residual.
The last residual is coned from the center of its bounding cube.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .chain import Chain
from .constants import ConstantsTable, build_constants, reference_bound
from .decomposition import decompose
from .geometry import clamp_to_ball, cone_over_chain
from .metric import L_INF, chain_diameter, chain_volume, containing_ball, max_distance_to
from .report import Report, leq


class FillError(RuntimeError):
    def __init__(self, message: str, stages=None, data=None):
        super().__init__(message)
        self.stages = stages or []
        self.data = data


@dataclass
class BallRecord:
    volume: float  # Vol(z ∩ B_i)
    slice_volume: float
    inner_fill_volume: float  # Vol(c_i) after clamping
    zhat_volume: float
    zhat_diameter: float
    ball_diameter: float
    cone_volume: float
    report: Report


@dataclass
class StageRecord:
    round: int
    volume: float
    residual_volume: float
    decomposition: dict
    balls: list[BallRecord]
    report: Report


@dataclass
class FillResult:
    z_volume: float
    n: int
    fill: Chain
    boundary_exact: bool
    total_volume: float
    ratio: float
    certified_bound: float
    reference_bound: float
    stages: list[StageRecord] = field(default_factory=list)
    report: Report = field(default_factory=Report)

    @property
    def certificates_ok(self) -> bool:
        return self.report.ok and all(s.report.ok for s in self.stages)

    def flags(self) -> dict[str, bool]:
        """Certificate outcomes aggregated over all rounds and balls (vacuously true if absent)."""

        def every(name):
            return all(c.ok for s in self.stages for b in s.balls for c in b.report.checks if c.name == name)

        def stage(name):
            return all(s.report[name] for s in self.stages)

        return {
            "boundary_exact": self.boundary_exact,
            "decomposition": stage("decomposition (i)-(iii)"),
            "inner_fill_mass": every("inner fill mass"),
            "mass_ball": every("mass-ball"),
            "round": every("round"),
            "cone_inequality": every("cone inequality") and all(
                c.ok for c in self.report.checks if c.name == "cone inequality"
            ),
            "volume_sum": stage("volume-sum"),
            "residual_decay": stage("residual decay"),
            "subadditivity": stage("subadditivity"),
            "ratio_within_bound": self.report["ratio <= C_1" if self.n == 1 else "ratio <= C_n"],
            "all": self.certificates_ok,
        }

    def summary(self) -> dict:
        return {
            "n": self.n,
            "volume": self.z_volume,
            "fill_volume": self.total_volume,
            "ratio": self.ratio,
            "certified_bound": self.certified_bound,
            "reference_bound": self.reference_bound,
            "boundary_exact": self.boundary_exact,
            "rounds": len(self.stages),
            "certificates_ok": self.certificates_ok,
            "certificates": self.report.as_dict(),
            "stages": [
                {
                    "round": s.round,
                    "volume": s.volume,
                    "residual_volume": s.residual_volume,
                    "balls": len(s.balls),
                    "coverage": s.decomposition.get("coverage"),
                    "certificates": s.report.as_dict(),
                }
                for s in self.stages
            ],
        }


def _ratio(fill_volume: float, volume: float, n: int) -> float:
    return fill_volume / volume ** (1 + 1 / n) if volume > 0 else 0.0


def _table_for(z: Chain, constants: ConstantsTable | None) -> ConstantsTable:
    if constants is None:
        return build_constants(z.dim, z.ambient)
    if constants.n < z.dim or constants.ambient != z.ambient:
        raise ValueError(f"constants for n={constants.n}, N={constants.ambient} do not cover this {z!r}")
    return constants


def fill_base_case(z: Chain, constants: ConstantsTable | None = None) -> FillResult:
    """Cone a 1-cycle from its lexicographically smallest vertex."""
    if z.dim != 1:
        raise ValueError("base case fills 1-cycles")
    if not z.is_cycle():
        raise ValueError("input is not a cycle")
    constants = _table_for(z, constants)
    row = constants[1]
    volume = chain_volume(z)
    if not z:
        fill = Chain.empty(2, z.ambient, z.ring)
        return FillResult(0.0, 1, fill, True, 0.0, 0.0, row.C, reference_bound(1))
    apex = z.vertices()[0]
    fill = cone_over_chain(apex, z)
    fill_volume = chain_volume(fill)
    R = float(max_distance_to(z, apex))
    res = FillResult(
        volume, 1, fill, fill.boundary() == z, fill_volume, _ratio(fill_volume, volume, 1), row.C, reference_bound(1)
    )
    res.report.add("boundary exact", res.boundary_exact)
    res.report.add("cone inequality", leq(fill_volume, row.D * R * volume), f"{fill_volume:.6g} <= D1 R Vol")
    res.report.add("ratio <= C_1", leq(res.ratio, row.C), f"{res.ratio:.6g} <= {row.C:.6g}")
    return res


def default_max_rounds(n: int, theta: float) -> int:
    return math.ceil(math.log(theta) / math.log(1 - 0.75 * 5.0**-n)) + 8


def fill_cycle(z: Chain, constants: ConstantsTable | None = None, **kwargs) -> FillResult:
    """Fill a cycle of any dimension >= 1."""
    if z.dim == 1:
        return fill_base_case(z, constants)
    return fill_inductive(z, constants, **kwargs)


def fill_inductive(
    z: Chain,
    constants: ConstantsTable | None = None,
    *,
    theta: float = 1e-2,
    max_rounds: int | None = None,
    seed: int = 0,
    epsilon: float | None = None,
    **decompose_kwargs,
) -> FillResult:
    n = z.dim
    if n < 2:
        raise ValueError("inductive filling needs dimension >= 2")
    if not z.is_cycle():
        raise ValueError("input is not a cycle")
    constants = _table_for(z, constants)
    row, prev = constants[n], constants[n - 1]
    if max_rounds is None:
        max_rounds = default_max_rounds(n, theta)
    N, ring = z.ambient, z.ring
    volume = chain_volume(z)
    decay = 1 - 0.75 * 5.0**-n
    density = row.A * (row.epsilon if epsilon is None else epsilon)
    round_bound = (4.0 ** (n + 1) / (3 * density)) ** (1 / n)

    fill = Chain.empty(n + 1, N, ring)
    stages: list[StageRecord] = []
    current = z
    for rnd in range(1, max_rounds + 1):
        vol_round = chain_volume(current)
        if not current or vol_round <= theta * volume:
            break
        dec = decompose(current, constants, seed=seed + rnd, epsilon=epsilon, **decompose_kwargs)
        fill = fill - dec.homotopy
        residual = dec.rest
        balls: list[BallRecord] = []
        stage_rep = Report()
        stage_rep.add("decomposition (i)-(iii)", dec.ok)
        for piece in dec.pieces:
            ball = piece.ball
            brep = Report()
            inner = fill_cycle(piece.slice, constants, theta=theta, seed=seed, **decompose_kwargs) if piece.slice else None
            if inner is None:
                c_i = Chain.empty(n, N, ring)
            else:
                if not inner.boundary_exact:
                    raise FillError("inner filling lost boundary exactness", stages, piece.slice)
                brep.add("inner fill certificates", inner.certificates_ok)
                c_i = clamp_to_ball(inner.fill, ball)
            if c_i.boundary() != piece.slice:
                raise FillError("clamped inner filling does not bound the slice", stages, (piece.slice, c_i))
            zhat = piece.inside - c_i
            if not zhat.is_cycle():
                raise FillError("rounded piece is not a cycle", stages, zhat)
            cone = cone_over_chain(ball.center, zhat)
            fill = fill + cone
            residual = residual + c_i

            V = piece.volume
            c_vol = chain_volume(c_i)
            zhat_vol = chain_volume(zhat)
            zhat_diam = float(chain_diameter(zhat, L_INF)) if zhat else 0.0
            cone_vol = chain_volume(cone)
            sv = piece.slice_volume
            brep.add("inner fill in ball", all(ball.contains(v) for v in c_i.vertices()))
            brep.add("cone in ball", all(ball.contains(v) for v in cone.vertices()))
            brep.add(
                "inner fill mass",
                leq(c_vol, prev.C * sv ** (n / (n - 1))) and leq(prev.C * sv ** (n / (n - 1)), V / 4),
                f"{c_vol:.6g} <= C_(n-1) slice^(n/(n-1)) <= {V / 4:.6g}",
            )
            brep.add("mass-ball", leq(0.75 * V, zhat_vol) and leq(zhat_vol, 1.25 * V), f"{zhat_vol:.6g} vs V={V:.6g}")
            brep.add(
                "round",
                leq(zhat_diam, float(ball.diameter))
                and leq(float(ball.diameter), 4 / density ** (1 / n) * V ** (1 / n))
                and leq(zhat_diam, round_bound * zhat_vol ** (1 / n)),
                f"diam {zhat_diam:.6g} <= {round_bound * zhat_vol ** (1 / n):.6g}",
            )
            R = float(max_distance_to(zhat, ball.center))
            brep.add("cone inequality", leq(cone_vol, row.D * R * zhat_vol))
            balls.append(BallRecord(V, sv, c_vol, zhat_vol, zhat_diam, float(ball.diameter), cone_vol, brep))
            stage_rep.add(f"ball {len(balls)}", brep.ok, "; ".join(c.name for c in brep.failures()))

        if not residual.is_cycle():
            raise FillError("residual is not a cycle", stages, residual)
        res_vol = chain_volume(residual)
        zhat_vols = [b.zhat_volume for b in balls]
        stage_rep.add(
            "volume-sum", leq(0.6 * math.fsum(zhat_vols) + res_vol, vol_round), f"residual {res_vol:.6g}"
        )
        stage_rep.add("residual decay", leq(res_vol, decay * vol_round), f"{res_vol / vol_round:.6g} <= {decay:.6g}")
        alpha = (n + 1) / n
        stage_rep.add(
            "subadditivity",
            leq(math.fsum(v**alpha for v in zhat_vols), math.fsum(zhat_vols) ** alpha),
        )
        stages.append(StageRecord(rnd, vol_round, res_vol, dec.summary(), balls, stage_rep))
        current = residual

    if current:
        center, _ = containing_ball(current)
        last = cone_over_chain(center, current)
        fill = fill + last
    exact = fill.boundary() == z
    fill_volume = chain_volume(fill)
    res = FillResult(
        volume,
        n,
        fill,
        exact,
        fill_volume,
        _ratio(fill_volume, volume, n),
        row.C,
        reference_bound(n),
        stages,
    )
    res.report.add("boundary exact", exact)
    res.report.add(
        "residual below threshold",
        not current or leq(chain_volume(current), theta * volume),
        f"{len(stages)} rounds",
    )
    res.report.add("ratio <= C_n", leq(res.ratio, row.C), f"{res.ratio:.6g} <= {row.C:.6g}")
    return res


def verify_fill(z: Chain, result, constants: ConstantsTable | None = None, rtol: float = 1e-9) -> Report:
    """Independent re-check of a filling: boundary, volume, ratio, bound.

    ``result`` is a :class:`FillResult` (its claimed volume and ratio are
    re-derived too) or a bare fill chain.
    """
    rep = Report()
    claimed = result if isinstance(result, FillResult) else None
    fill = claimed.fill if claimed else result
    same_space = fill.dim == z.dim + 1 and fill.ambient == z.ambient and fill.ring == z.ring
    rep.add("dimension", same_space, f"fill k={fill.dim}, N={fill.ambient}, {fill.ring}")
    if same_space:
        rep.add("boundary", fill.boundary() == z)
    volume = chain_volume(fill)
    zvol = chain_volume(z)
    ratio = _ratio(volume, zvol, z.dim)
    if claimed:
        rep.add(
            "volume",
            abs(volume - claimed.total_volume) <= rtol * max(volume, claimed.total_volume),
            f"recomputed {volume!r}, claimed {claimed.total_volume!r}",
        )
        rep.add("ratio", abs(ratio - claimed.ratio) <= rtol * max(ratio, claimed.ratio))
    bound = _table_for(z, constants)[z.dim].C
    rep.add("ratio <= C_n", leq(ratio, bound), f"{ratio:.6g} <= {bound:.6g}")
    return rep
