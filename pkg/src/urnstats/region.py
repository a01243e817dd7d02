"""Regional aggregation and decomposition arithmetic.

Per-region integer sums, shares of valid ballots / of all electors, and the
contribution of a region subset to a party's national total: how many votes
the subset supplied, what fraction of the total that is, and what the party's
share would be with the subset removed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping

from .ingest import Dataset

__all__ = ["RegionSummary", "Decomposition", "summarize_regions", "decompose", "region_report_csv"]


@dataclass(frozen=True)
class RegionSummary:
    region_id: str
    electors: int
    ballots_cast: int
    valid_ballots: int
    votes: Mapping[str, int]
    party_share: float | None  # votes / valid_ballots
    turnout: float | None  # ballots_cast / electors
    share_of_electors: float | None  # votes / electors


@dataclass(frozen=True)
class Decomposition:
    party_id: str
    total_votes: int
    subset_votes: int
    subset_fraction: float
    overall_share: float
    share_excluding_subset: float
    relative_loss: float


def summarize_regions(ds: Dataset, party: str) -> list[RegionSummary]:
    """Exact integer aggregation per region, sorted descending by party share.

    Regions with no valid ballots report shares as None and sort last; ties
    break by region_id.
    """
    if party not in ds.parties:
        raise ValueError(f"unknown party {party!r}")
    totals: dict[str, dict] = {
        rid: {"electors": 0, "cast": 0, "valid": 0, "votes": {p: 0 for p in ds.parties}}
        for rid in ds.regions
    }
    for rec in ds.records:
        t = totals[rec.region_id]
        t["electors"] += rec.registered
        t["cast"] += rec.ballots_cast
        t["valid"] += rec.valid_ballots
        for p, v in rec.votes.items():
            t["votes"][p] += v

    summaries = []
    for rid, t in totals.items():
        v = t["votes"][party]
        summaries.append(
            RegionSummary(
                region_id=rid,
                electors=t["electors"],
                ballots_cast=t["cast"],
                valid_ballots=t["valid"],
                votes=dict(t["votes"]),
                party_share=v / t["valid"] if t["valid"] else None,
                turnout=t["cast"] / t["electors"] if t["electors"] else None,
                share_of_electors=v / t["electors"] if t["electors"] else None,
            )
        )
    summaries.sort(
        key=lambda s: (s.party_share is None, -(s.party_share or 0.0), s.region_id)
    )
    return summaries


def decompose(ds: Dataset, party: str, region_set: Iterable[str]) -> Decomposition:
    """Split a party's national total into a region subset and its complement."""
    if party not in ds.parties:
        raise ValueError(f"unknown party {party!r}")
    region_set = set(region_set)
    unknown = region_set - set(ds.regions)
    if unknown:
        raise ValueError(f"unknown regions in subset: {sorted(unknown)}")

    total_votes = total_valid = subset_votes = subset_valid = 0
    for rec in ds.records:
        v = rec.votes.get(party, 0)
        total_votes += v
        total_valid += rec.valid_ballots
        if rec.region_id in region_set:
            subset_votes += v
            subset_valid += rec.valid_ballots

    if total_valid == 0:
        raise ValueError("dataset has no valid ballots")
    rest_valid = total_valid - subset_valid
    if rest_valid == 0:
        raise ValueError("region subset covers all valid ballots; complement share undefined")

    overall = total_votes / total_valid
    excluding = (total_votes - subset_votes) / rest_valid
    return Decomposition(
        party_id=party,
        total_votes=total_votes,
        subset_votes=subset_votes,
        subset_fraction=subset_votes / total_votes if total_votes else 0.0,
        overall_share=overall,
        share_excluding_subset=excluding,
        relative_loss=(overall - excluding) / overall if overall else 0.0,
    )


def region_report_csv(ds: Dataset, party: str) -> str:
    """Region report mirroring the reference table layout, percentages to 0.1."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "region_id",
            "name",
            "electors_millions",
            "party_share_pct",
            "turnout_pct",
            "share_of_electors_pct",
            "status",
            "geo_tag",
        ]
    )

    def pct(x: float | None) -> str:
        return "" if x is None else f"{100.0 * x:.1f}"

    for s in summarize_regions(ds, party):
        info = ds.regions[s.region_id]
        writer.writerow(
            [
                s.region_id,
                info.name,
                f"{s.electors / 1e6:.1f}",
                pct(s.party_share),
                pct(s.turnout),
                pct(s.share_of_electors),
                info.status,
                info.geo_tag or "",
            ]
        )
    return out.getvalue()
