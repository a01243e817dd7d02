"""Station-voting diagrams and turnout distributions.

A station-voting histogram bins each station by a party's vote share and
accumulates a chosen weight: 1 per station, its registered electors, or its
votes for the party.  Bins are half-open [lo, hi) with the final bin closed
at 1.0; a value landing exactly on an interior edge goes to the right bin.

Two edge alignments are supported: left edges starting at 0, or edges shifted
so that a chosen fraction is a bin center (required by the dent detector so a
candidate fraction never straddles two bins).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .ingest import Dataset, RegionInfo, flagged_stations

__all__ = [
    "HistogramSpec",
    "Histogram",
    "WEIGHT_MODES",
    "station_voting_histogram",
    "turnout_histogram",
    "rebin",
]

WEIGHT_MODES = ("stations", "electors", "party_votes")
SHARE_DENOMINATORS = ("ballots_cast", "valid_ballots")

# Absolute slack when mapping a value to its bin: a value this close below an
# edge is treated as sitting on the edge (and therefore falls right).  Real
# shares are ratios of counts <= a few thousand, so their true distance to a
# decimal bin edge is either zero or >> 1e-9.
EDGE_EPS = 1e-9


@dataclass(frozen=True)
class HistogramSpec:
    bin_width: float = 0.005
    weight_mode: str = "stations"
    min_station_size: int = 0
    share_denominator: str = "ballots_cast"
    region_filter: Callable[[RegionInfo], bool] | None = None
    align_center: float | None = None  # None = left edges at zero
    include_flagged: bool = False

    def __post_init__(self):
        if not (0.0 < self.bin_width <= 0.5):
            raise ValueError("bin_width must divide [0,1] into at least 2 bins")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"unknown weight mode {self.weight_mode!r}")
        if self.share_denominator not in SHARE_DENOMINATORS:
            raise ValueError(f"unknown share denominator {self.share_denominator!r}")
        if self.min_station_size < 0:
            raise ValueError("min_station_size must be nonnegative")
        if self.align_center is not None and not (0.0 <= self.align_center <= 1.0):
            raise ValueError("align_center must lie in [0, 1]")

    def edges(self) -> np.ndarray:
        """Ascending bin boundaries covering [0, 1]."""
        w = self.bin_width
        if self.align_center is None:
            n = math.ceil(1.0 / w - EDGE_EPS)
            return np.arange(n + 1) * w
        # shift the grid so align_center is a bin center
        first = self.align_center - w / 2.0
        k0 = math.ceil(first / w - EDGE_EPS)
        e0 = first - k0 * w  # largest grid edge <= 0
        n = math.ceil((1.0 - e0) / w - EDGE_EPS)
        return e0 + np.arange(n + 1) * w


@dataclass
class Histogram:
    spec: HistogramSpec
    edges: np.ndarray
    weights: np.ndarray
    excluded: dict[str, float] = field(
        default_factory=lambda: {
            "zero_denominator": 0.0,
            "below_min_size": 0.0,
            "region_filtered": 0.0,
            "validation_flagged": 0.0,
        }
    )
    party: str | None = None

    @property
    def centers(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0

    def total_weight(self) -> float:
        return float(self.weights.sum())

    def excluded_weight(self) -> float:
        return float(sum(self.excluded.values()))

    def bin_index(self, x: float) -> int:
        """Index of the bin containing x; exact edges fall right, 1.0 clamps to the last bin."""
        i = int(math.floor((x - self.edges[0]) / self.spec.bin_width + EDGE_EPS))
        return min(max(i, 0), len(self.weights) - 1)

    def add(self, x: float, weight: float) -> None:
        self.weights[self.bin_index(x)] += weight

    def center_index(self, f: float) -> int:
        """Index of the bin whose center equals f, or -1."""
        i = self.bin_index(f)
        if abs(self.centers[i] - f) <= self.spec.bin_width * 1e-6:
            return i
        return -1

    def spec_dict(self) -> dict:
        alignment = (
            "left_edges_at_zero"
            if self.spec.align_center is None
            else {"centered_on": self.spec.align_center}
        )
        return {
            "bin_width": self.spec.bin_width,
            "weight_mode": self.spec.weight_mode,
            "min_station_size": self.spec.min_station_size,
            "share_denominator": self.spec.share_denominator,
            "alignment": alignment,
            "region_filter": None if self.spec.region_filter is None else "custom",
            "include_flagged": self.spec.include_flagged,
            "party": self.party,
        }

    def to_json(self) -> str:
        return json.dumps(
            {
                "spec": self.spec_dict(),
                "bins": [
                    {"lo": float(lo), "hi": float(hi), "weight": float(w)}
                    for lo, hi, w in zip(self.edges[:-1], self.edges[1:], self.weights)
                ],
                "excluded": self.excluded,
            },
            indent=2,
            sort_keys=True,
        )

    def to_csv(self) -> str:
        lines = ["lo,hi,weight"]
        for lo, hi, w in zip(self.edges[:-1], self.edges[1:], self.weights):
            lines.append(f"{lo!r},{hi!r},{w!r}")
        return "\n".join(lines) + "\n"


def _station_weight(rec, spec: HistogramSpec, party: str | None) -> float:
    if spec.weight_mode == "stations":
        return 1.0
    if spec.weight_mode == "electors":
        return float(rec.registered)
    return float(rec.votes.get(party, 0))


def _fill(
    ds: Dataset,
    spec: HistogramSpec,
    party: str | None,
    value_of,
) -> Histogram:
    edges = spec.edges()
    hist = Histogram(spec=spec, edges=edges, weights=np.zeros(len(edges) - 1), party=party)
    flagged = frozenset() if spec.include_flagged else flagged_stations(ds)
    for rec in ds.records:
        w = _station_weight(rec, spec, party)
        if spec.region_filter is not None and not spec.region_filter(ds.regions[rec.region_id]):
            hist.excluded["region_filtered"] += w
            continue
        if rec.station_id in flagged:
            hist.excluded["validation_flagged"] += w
            continue
        if rec.registered < max(spec.min_station_size, 1):
            key = "zero_denominator" if rec.registered == 0 else "below_min_size"
            hist.excluded[key] += w
            continue
        x = value_of(rec)
        if x is None:
            hist.excluded["zero_denominator"] += w
            continue
        hist.add(x, w)
    return hist


def station_voting_histogram(ds: Dataset, party: str, spec: HistogramSpec) -> Histogram:
    """Histogram of a party's vote share across stations.

    Each included station contributes its weight (per spec.weight_mode) to the
    bin containing votes/denominator.
    """
    if party not in ds.parties:
        raise ValueError(f"unknown party {party!r}")
    return _fill(ds, spec, party, lambda rec: rec.share(party, spec.share_denominator))


def turnout_histogram(ds: Dataset, spec: HistogramSpec) -> Histogram:
    """Histogram of turnout (ballots_cast / registered) across stations."""
    if spec.weight_mode == "party_votes":
        raise ValueError("turnout histograms support stations or electors weighting only")
    return _fill(ds, spec, None, lambda rec: rec.turnout())


def rebin(hist: Histogram, factor: int) -> Histogram:
    """Aggregate a left-aligned histogram to bin width factor * bin_width.

    Equals the histogram computed directly at the coarser width (trailing
    partial group folds into the final coarse bin, matching the closed-at-1
    convention).
    """
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    if hist.spec.align_center is not None:
        raise ValueError("rebin is defined for left-aligned histograms only")
    coarse_spec = replace(hist.spec, bin_width=hist.spec.bin_width * factor)
    edges = coarse_spec.edges()
    n = len(edges) - 1
    weights = np.zeros(n)
    for i, w in enumerate(hist.weights):
        weights[min(i // factor, n - 1)] += w
    return Histogram(
        spec=coarse_spec,
        edges=edges,
        weights=weights,
        excluded=dict(hist.excluded),
        party=hist.party,
    )
