"""Gaussian broadcast-channel secrecy bounds, frontiers and gap scans.

All bounds are parameterized by the fraction alpha of the transmit power
assigned to the satellite layer (the remainder feeds the cloud layer that
serves the weak receiver).  Rates are in bits; every bound is clamped at
zero after evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import HypothesisError

__all__ = [
    "GaussianBcParams",
    "cfun",
    "SweepPoint",
    "inner_bound",
    "loose_outer_bound",
    "outer_bound",
    "cloud_eavesdropper_rate",
    "capacity_condition",
    "capacity_region",
    "alpha0",
    "gap_scan",
    "gap_scan_detail",
    "sweep_point",
    "cell_corners",
    "Frontier2D",
    "pareto_filter",
    "trace_frontier",
    "uniform_grid",
    "FRONTIER_KINDS",
    "GAUSSIAN_PRESETS",
]


@dataclass(frozen=True)
class GaussianBcParams:
    """Transmit power and the three noise variances (receiver 1, 2, eve)."""

    power: object
    s1: object
    s2: object
    se: object

    def __post_init__(self):
        for name in ("power", "s1", "s2", "se"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def degraded_ordering(self) -> bool:
        """True when the eavesdropper is noisiest and receiver 1 strongest."""
        return self.s1 <= self.s2 <= self.se


def _require_ordering(params: GaussianBcParams) -> None:
    if not params.degraded_ordering:
        raise HypothesisError(
            f"bounds require noise ordering s1 <= s2 <= se, got "
            f"({params.s1}, {params.s2}, {params.se})"
        )


def _check_unit(value, name) -> None:
    if not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def cfun(x) -> float:
    """Gaussian capacity function 0.5 * log2(1 + x) in bits."""
    if x < 0:
        raise ValueError(f"cfun requires a nonnegative argument, got {x}")
    return 0.5 * math.log2(1 + x)


@dataclass(frozen=True)
class SweepPoint:
    """Per-alpha rate bounds; sum_bound is +inf when no sum constraint applies."""

    alpha: float
    r1_bound: float
    r2_bound: float
    sum_bound: float
    gamma: Optional[float] = None


def _clamp(x: float) -> float:
    return x if x > 0 else 0.0


def inner_bound(params: GaussianBcParams, alpha) -> SweepPoint:
    """Achievable region slice: padded satellite to rx 1 over a shared cloud."""
    _require_ordering(params)
    _check_unit(alpha, "alpha")
    p, s1, s2, se = params.power, params.s1, params.s2, params.se
    sat = cfun(alpha * p / s1) - cfun(alpha * p / se)
    cloud = cfun((1 - alpha) * p / (alpha * p + s2))
    cloud_leak = cfun((1 - alpha) * p / (alpha * p + se))
    return SweepPoint(
        alpha=float(alpha),
        r1_bound=_clamp(sat + cloud - cloud_leak),
        r2_bound=_clamp(cloud - cloud_leak),
        sum_bound=_clamp(sat + cloud),
    )


def loose_outer_bound(params: GaussianBcParams, alpha) -> SweepPoint:
    """Single-parameter outer bound; differs from the inner slice only in sum."""
    _require_ordering(params)
    _check_unit(alpha, "alpha")
    p, s1, s2, se = params.power, params.s1, params.s2, params.se
    sat = cfun(alpha * p / s1) - cfun(alpha * p / se)
    cloud = cfun((1 - alpha) * p / (alpha * p + s2))
    cloud_leak = cfun((1 - alpha) * p / (alpha * p + se))
    return SweepPoint(
        alpha=float(alpha),
        r1_bound=_clamp(sat + cloud - cloud_leak),
        r2_bound=_clamp(cloud - cloud_leak),
        sum_bound=_clamp(cfun(alpha * p / s1) + cloud),
    )


def outer_bound(params: GaussianBcParams, alpha, gamma, r2) -> float:
    """Two-parameter outer bound on R1 given an R2 operating point."""
    _require_ordering(params)
    _check_unit(alpha, "alpha")
    _check_unit(gamma, "gamma")
    if r2 < 0:
        raise ValueError(f"r2 must be nonnegative, got {r2}")
    p, s1, se = params.power, params.s1, params.se
    ga = gamma * alpha
    head = cfun(alpha * (1 - gamma) * p / (ga * p + s1)) - cfun(
        alpha * (1 - gamma) * p / (ga * p + se)
    )
    tail = min(r2, cfun((1 - ga) * p / (ga * p + se)))
    return _clamp(head + tail)


def cloud_eavesdropper_rate(params: GaussianBcParams, alpha) -> float:
    """What the eavesdropper learns about the cloud layer at this power split."""
    _require_ordering(params)
    _check_unit(alpha, "alpha")
    p = params.power
    return cfun((1 - alpha) * p / (alpha * p + params.se))


def capacity_condition(params: GaussianBcParams) -> bool:
    """Power threshold above which the inner bound is tight for every alpha.

    Always true for a comparable eavesdropper (se <= 2 * s2); exact when the
    parameters are Fractions.
    """
    _require_ordering(params)
    return params.power >= params.se * (params.se - 2 * params.s2) / params.s2


def capacity_region(params: GaussianBcParams, alpha) -> Optional[SweepPoint]:
    """Capacity slice (no sum constraint) or None when not applicable."""
    _require_ordering(params)
    if not capacity_condition(params):
        return None
    inner = inner_bound(params, alpha)
    return SweepPoint(inner.alpha, inner.r1_bound, inner.r2_bound, math.inf)


def alpha0(params: GaussianBcParams):
    """Power-split threshold above which the sum constraint goes redundant.

    Exact when the parameters are exact; a value <= 0 means the inner bound
    is tight at every power split.
    """
    _require_ordering(params)
    p, s2, se = params.power, params.s2, params.se
    return (se - s2) ** 2 / (p * (p + s2)) - s2 / p


def gap_scan(params: GaussianBcParams, alphas: Sequence[float]) -> float:
    """Max sum-bound gap (loose outer minus inner) over an alpha grid.

    Verifies the pointwise identity gap = cfun(alpha*P/se) to 1e-9, and
    that the gap stays within 0.5 bits wherever the sum constraint can
    actually bind (everywhere when se >= P + 2*s2, else below alpha0).
    """
    return gap_scan_detail(params, alphas)["max_gap_bits"]


def gap_scan_detail(params: GaussianBcParams, alphas: Sequence[float]) -> dict:
    """Like :func:`gap_scan` but also reports the max over binding splits.

    Where the sum constraint is redundant the regions coincide even though
    the raw bound expressions differ, so ``max_gap_where_binding`` is the
    figure that measures actual region mismatch (0.0 in the capacity
    regime).
    """
    _require_ordering(params)
    p, se = params.power, params.se
    a0 = alpha0(params)
    sum_always_binds = se >= p + 2 * params.s2
    max_gap = 0.0
    max_binding = 0.0
    for a in alphas:
        gap = loose_outer_bound(params, a).sum_bound - inner_bound(params, a).sum_bound
        expected = cfun(a * p / se)
        if abs(gap - expected) > 1e-9:
            raise AssertionError(
                f"gap identity violated at alpha={a}: {gap} vs {expected}"
            )
        if sum_always_binds or a < a0:
            if gap > 0.5 + 1e-9:
                raise AssertionError(f"gap {gap} exceeds 0.5 bits at alpha={a}")
            max_binding = max(max_binding, gap)
        max_gap = max(max_gap, gap)
    return {"max_gap_bits": max_gap, "max_gap_where_binding": max_binding}


FRONTIER_KINDS = ("inner", "looseOuter", "capacity", "noSecrecy", "joint")


def sweep_point(params: GaussianBcParams, kind: str, alpha) -> SweepPoint:
    """Per-alpha bounds for one region kind.

    noSecrecy keeps the printed pairing of rates with power-split
    expressions (R1 with the cloud expression, R2 with the satellite one);
    the opposite pairing is this region mirrored across the diagonal.
    """
    if kind == "inner":
        return inner_bound(params, alpha)
    if kind == "looseOuter":
        return loose_outer_bound(params, alpha)
    if kind == "capacity":
        point = capacity_region(params, alpha)
        if point is None:
            raise ValueError(
                "capacity characterization does not apply: power below "
                "se*(se - 2*s2)/s2"
            )
        return point
    _require_ordering(params)
    _check_unit(alpha, "alpha")
    p, s1, s2, se = params.power, params.s1, params.s2, params.se
    if kind == "noSecrecy":
        return SweepPoint(
            alpha=float(alpha),
            r1_bound=cfun((1 - alpha) * p / (alpha * p + s2)),
            r2_bound=cfun(alpha * p / s1),
            sum_bound=math.inf,
        )
    if kind == "joint":
        return SweepPoint(
            alpha=float(alpha),
            r1_bound=_clamp(cfun(alpha * p / s1) - cfun(alpha * p / se)),
            r2_bound=_clamp(
                cfun((1 - alpha) * p / (alpha * p + s2))
                - cfun((1 - alpha) * p / (alpha * p + se))
            ),
            sum_bound=math.inf,
        )
    raise ValueError(f"unknown region kind {kind!r}; expected one of {FRONTIER_KINDS}")


def cell_corners(point: SweepPoint):
    """Pareto corners of {R1 <= r1b, R2 <= r2b, R1+R2 <= sumb} over R+^2."""
    r1b, r2b, sumb = point.r1_bound, point.r2_bound, point.sum_bound
    if r1b + r2b <= sumb:
        return [(r1b, r2b)]
    x_hi = min(r1b, sumb)
    y_hi = min(r2b, sumb)
    corners = [(min(r1b, sumb - y_hi), y_hi), (x_hi, min(r2b, sumb - x_hi))]
    return corners if corners[0] != corners[1] else corners[:1]


def pareto_filter(points):
    """Dominance filter; returns points with R1 strictly increasing."""
    best_r2 = -math.inf
    kept = []
    for r1, r2 in sorted(set(points), key=lambda q: (-q[0], -q[1])):
        if r2 > best_r2:
            kept.append((r1, r2))
            best_r2 = r2
    kept.reverse()
    return kept


@dataclass(frozen=True)
class Frontier2D:
    """Pareto staircase: R1 strictly increasing, R2 strictly decreasing."""

    points: tuple

    def __post_init__(self):
        for (a1, b1), (a2, b2) in zip(self.points, self.points[1:]):
            if not (a1 < a2 and b1 > b2):
                raise ValueError("frontier points must be strictly Pareto-ordered")

    @classmethod
    def from_points(cls, points) -> "Frontier2D":
        return cls(tuple(pareto_filter(points)))

    def max_r1(self) -> float:
        return self.points[-1][0] if self.points else 0.0

    def max_r2(self) -> float:
        return self.points[0][1] if self.points else 0.0


def uniform_grid(n: int):
    """n evenly spaced points covering [0, 1] inclusive."""
    if n < 2:
        raise ValueError("grid needs at least 2 points")
    return [i / (n - 1) for i in range(n)]


def trace_frontier(params: GaussianBcParams, kind: str, grid_size: int = 1024) -> Frontier2D:
    """Sweep alpha on a uniform grid and keep the dominant corner points."""
    corners = []
    for a in uniform_grid(grid_size):
        corners.extend(cell_corners(sweep_point(params, kind, a)))
    return Frontier2D.from_points(corners)


GAUSSIAN_PRESETS = {
    "fig5a": GaussianBcParams(Fraction(1), Fraction(1, 3), Fraction(1, 3), Fraction(1, 2)),
    "fig5b": GaussianBcParams(Fraction(1), Fraction(3, 80), Fraction(1, 8), Fraction(1, 2)),
    "fig5c": GaussianBcParams(Fraction(1), Fraction(1, 10), Fraction(1, 3), Fraction(4, 3)),
    "fig5d": GaussianBcParams(Fraction(1), Fraction(1, 10), Fraction(1, 3), Fraction(2)),
}
