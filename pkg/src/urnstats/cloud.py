"""Cloud and compressed-cloud diagrams.

A cloud diagram plots one point per station at (turnout, party share).  The
compressed cloud applies (u, v) = (x, x*y); with shares computed against
ballots cast, v is exactly the party's share of all registered electors, and
every compressed point lies in the triangle v <= u.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import pearsonr, spearmanr

from .ingest import Dataset, RegionInfo, flagged_stations

__all__ = [
    "CloudPoint",
    "CompressedPoint",
    "Cloud",
    "ModeEstimate",
    "build_cloud",
    "compress",
    "estimate_modes",
    "slope_between_modes",
    "turnout_share_association",
]


@dataclass(frozen=True)
class CloudPoint:
    x: float  # turnout
    y: float  # party share
    weight: float = 1.0
    station_id: str | None = None

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ValueError(f"cloud point ({self.x}, {self.y}) outside the unit square")
        if self.weight <= 0:
            raise ValueError("point weight must be positive")

    @property
    def coords(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class CompressedPoint:
    u: float
    v: float
    weight: float = 1.0
    station_id: str | None = None

    def __post_init__(self):
        if not (0.0 <= self.v <= self.u + 1e-12 and self.u <= 1.0):
            raise ValueError(f"compressed point ({self.u}, {self.v}) outside the triangle")

    @property
    def coords(self) -> tuple[float, float]:
        return (self.u, self.v)


@dataclass
class Cloud:
    points: list[CloudPoint]
    party: str
    denominator: str
    excluded: dict[str, int] = field(
        default_factory=lambda: {
            "zero_denominator": 0,
            "region_filtered": 0,
            "validation_flagged": 0,
        }
    )

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["station_id", "x", "y", "weight"])
        for pt in self.points:
            writer.writerow([pt.station_id or "", repr(pt.x), repr(pt.y), repr(pt.weight)])
        return out.getvalue()


def build_cloud(
    ds: Dataset,
    party: str,
    denominator: str = "ballots_cast",
    weight_by_registered: bool = False,
    region_filter: Callable[[RegionInfo], bool] | None = None,
    include_flagged: bool = False,
) -> Cloud:
    """One (turnout, share) point per included station.

    Stations whose turnout or share denominator is zero are excluded and
    counted, as are region-filtered and validation-flagged stations.
    """
    if party not in ds.parties:
        raise ValueError(f"unknown party {party!r}")
    if denominator not in ("ballots_cast", "valid_ballots"):
        raise ValueError(f"unknown denominator {denominator!r}")
    cloud = Cloud(points=[], party=party, denominator=denominator)
    flagged = frozenset() if include_flagged else flagged_stations(ds)
    for rec in ds.records:
        if region_filter is not None and not region_filter(ds.regions[rec.region_id]):
            cloud.excluded["region_filtered"] += 1
            continue
        if rec.station_id in flagged:
            cloud.excluded["validation_flagged"] += 1
            continue
        x = rec.turnout()
        y = rec.share(party, denominator)
        if x is None or y is None:
            cloud.excluded["zero_denominator"] += 1
            continue
        cloud.points.append(
            CloudPoint(
                x=x,
                y=y,
                weight=float(rec.registered) if weight_by_registered else 1.0,
                station_id=rec.station_id,
            )
        )
    return cloud


def compress(points: Cloud | Sequence[CloudPoint]) -> list[CompressedPoint]:
    """Map each cloud point (x, y) to (u, v) = (x, x*y)."""
    return [
        CompressedPoint(u=pt.x, v=pt.x * pt.y, weight=pt.weight, station_id=pt.station_id)
        for pt in points
    ]


def compressed_csv(points: Sequence[CompressedPoint]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["station_id", "u", "v", "weight"])
    for pt in points:
        writer.writerow([pt.station_id or "", repr(pt.u), repr(pt.v), repr(pt.weight)])
    return out.getvalue()


@dataclass(frozen=True)
class ModeEstimate:
    location: tuple[float, float]  # cell center
    density: float
    cell: tuple[int, int]

    @property
    def x(self) -> float:
        return self.location[0]

    @property
    def y(self) -> float:
        return self.location[1]


def estimate_modes(
    points: Cloud | Sequence[CloudPoint] | Sequence[CompressedPoint],
    cell: float = 0.025,
    top_k: int = 4,
) -> list[ModeEstimate]:
    """Local maxima of a weighted 2-D cell histogram over the unit square.

    A mode cell's density strictly exceeds all 8 neighbors (missing neighbors
    count as empty).  Up to top_k modes are returned by descending density;
    ties break toward the lower-x, then lower-y cell corner.
    """
    pts = list(points)
    if not pts:
        raise ValueError("cannot estimate modes of an empty point set")
    if not (0.0 < cell <= 0.25):
        raise ValueError("cell size must lie in (0, 0.25]")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    n = math.ceil(1.0 / cell - 1e-9)
    grid = np.zeros((n, n))
    for pt in pts:
        px, py = pt.coords
        i = min(int(math.floor(px / cell + 1e-9)), n - 1)
        j = min(int(math.floor(py / cell + 1e-9)), n - 1)
        grid[i, j] += pt.weight

    padded = np.zeros((n + 2, n + 2))
    padded[1:-1, 1:-1] = grid
    modes: list[ModeEstimate] = []
    for i in range(n):
        for j in range(n):
            w = grid[i, j]
            if w <= 0:
                continue
            block = padded[i : i + 3, j : j + 3]
            if np.count_nonzero(block >= w) == 1:  # only the center itself
                modes.append(
                    ModeEstimate(
                        location=((i + 0.5) * cell, (j + 0.5) * cell),
                        density=float(w),
                        cell=(i, j),
                    )
                )
    modes.sort(key=lambda m: (-m.density, m.cell[0], m.cell[1]))
    return modes[:top_k]


def slope_between_modes(m1, m2) -> float:
    """Signed slope (y2 - y1) / (x2 - x1) between two modes or (x, y) pairs."""
    x1, y1 = (m1.x, m1.y) if isinstance(m1, ModeEstimate) else (m1[0], m1[1])
    x2, y2 = (m2.x, m2.y) if isinstance(m2, ModeEstimate) else (m2[0], m2[1])
    if x1 == x2:
        raise ValueError("modes share the same x; slope is vertical")
    return (y2 - y1) / (x2 - x1)


def turnout_share_association(
    ds: Dataset,
    party: str,
    denominator: str = "ballots_cast",
    include_flagged: bool = False,
) -> tuple[float, float, int]:
    """(pearson_r, spearman_rho, n) between turnout and party share."""
    cloud = build_cloud(ds, party, denominator=denominator, include_flagged=include_flagged)
    if len(cloud) < 3:
        raise ValueError("association needs at least 3 included stations")
    xs = np.array([pt.x for pt in cloud])
    ys = np.array([pt.y for pt in cloud])
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise ValueError("association undefined: zero variance in a coordinate")
    r = pearsonr(xs, ys).statistic
    rho = spearmanr(xs, ys).statistic
    return float(r), float(rho), len(cloud)
