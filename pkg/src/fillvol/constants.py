"""Dimension constants driving the decomposition and the certified bound.

Volume is Euclidean Hausdorff measure and balls are sup-norm cubes, so the
cone constant picks up the factor sqrt(N) between the two norms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


def unit_ball_volume(m: int) -> float:
    """Volume of the Euclidean unit ball in R^m."""
    return math.pi ** (m / 2) / math.gamma(m / 2 + 1)


def density_constant(m: int) -> float:
    """Lower density constant A_m = omega_m / (2 m^{m/2})."""
    return 0.5 * m ** (-m / 2) * unit_ball_volume(m)


def cone_constant(m: int, ambient: int) -> float:
    """D_m = sqrt(N)/(m+1): Euclidean cone height is at most sqrt(N) times the sup-norm radius."""
    return math.sqrt(ambient) / (m + 1)


def epsilon_for(m: int, A: float, E: float, C_prev: float) -> float:
    return min(1.0 / (4 ** (m - 1) * C_prev ** (m - 1) * A * E**m * m**m), 0.5)


def isoperimetric_step(m: int, D: float, E: float, C_prev: float) -> float:
    """C_m = 27 m D_m E_m C_{m-1}^{(m-1)/m}."""
    return 27 * m * D * E * C_prev ** ((m - 1) / m)


def reference_bound(n: int) -> int:
    """27^n n!, the isoperimetric constant for mass* volume."""
    return 27**n * math.factorial(n)


@dataclass(frozen=True)
class DimensionConstants:
    m: int
    omega: float
    A: float
    D: float
    E: float
    epsilon: float
    C: float


@dataclass(frozen=True)
class ConstantsTable:
    n: int
    ambient: int
    rows: tuple[DimensionConstants, ...]

    def __getitem__(self, m: int) -> DimensionConstants:
        if not 1 <= m <= self.n:
            raise KeyError(f"no constants for dimension {m} (table covers 1..{self.n})")
        return self.rows[m - 1]

    @property
    def C(self) -> float:
        return self[self.n].C

    @property
    def reference(self) -> int:
        return reference_bound(self.n)

    def with_epsilon(self, m: int, epsilon: float) -> "ConstantsTable":
        """Copy with epsilon_m overridden (C values are left as derived)."""
        if not 0 < epsilon:
            raise ValueError("epsilon must be positive")
        rows = list(self.rows)
        r = rows[m - 1]
        rows[m - 1] = DimensionConstants(r.m, r.omega, r.A, r.D, r.E, epsilon, r.C)
        return ConstantsTable(self.n, self.ambient, tuple(rows))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "N": self.ambient,
            "reference_27n_nfact": self.reference,
            "rows": [r.__dict__.copy() for r in self.rows],
        }


def build_constants(n: int, ambient: int) -> ConstantsTable:
    if n < 1 or ambient < n + 1:
        raise ValueError(f"need 1 <= n and N >= n+1, got n={n}, N={ambient}")
    rows = []
    C_prev = 1.0  # only enters through C_0^0
    for m in range(1, n + 1):
        omega = unit_ball_volume(m)
        A = density_constant(m)
        D = cone_constant(m, ambient)
        E = 1.0
        eps = epsilon_for(m, A, E, C_prev)
        if m == 1:
            # closed curve of length L has diameter <= L/2; cone over it from a point on it
            C = D / 2
        else:
            C = isoperimetric_step(m, D, E, C_prev)
        rows.append(DimensionConstants(m, omega, A, D, E, eps, C))
        C_prev = C
    return ConstantsTable(n, ambient, tuple(rows))
