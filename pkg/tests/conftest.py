"""Shared fixtures: small hand-built datasets and synthetic model builders."""

from __future__ import annotations

import pytest

from urnstats.ingest import Dataset, PrecinctRecord, RegionInfo
from urnstats.synth import HonestModel, RegionModel


def heterogeneous_model(stations_per_region: int = 5000) -> HonestModel:
    """Four regions with support means 0.30/0.40/0.50/0.60 and a wide
    station-size range reaching into the small-station regime."""
    regions = []
    for i, m in enumerate((0.30, 0.40, 0.50, 0.60)):
        regions.append(
            RegionModel(
                region_id=f"r{i}",
                station_count=stations_per_region,
                size={"kind": "loguniform", "low": 10, "high": 3000},
                turnout={"kind": "beta", "a": 24, "b": 16},
                support={
                    "UR": {"kind": "beta", "a": m * 30, "b": (1 - m) * 30},
                    "OPP": {"kind": "beta", "a": (0.9 - m) * 30, "b": (0.1 + m) * 30},
                },
            )
        )
    return HonestModel(tuple(regions))


def homogeneous_model(
    station_count: int = 12000,
    mean_support: float = 0.35,
    low: int = 100,
    high: int = 3000,
    turnout_link: float = 0.0,
) -> HonestModel:
    """One region, unimodal support; optional turnout-share coupling."""
    return HonestModel(
        (
            RegionModel(
                region_id="core",
                station_count=station_count,
                size={"kind": "loguniform", "low": low, "high": high},
                turnout={"kind": "beta", "a": 24, "b": 16},
                support={
                    "UR": {"kind": "beta", "a": mean_support * 40, "b": (1 - mean_support) * 40},
                    "OPP": {
                        "kind": "beta",
                        "a": (0.9 - mean_support) * 40,
                        "b": (0.1 + mean_support) * 40,
                    },
                },
                turnout_link={"UR": turnout_link} if turnout_link else {},
            ),
        )
    )


def large_station_model(station_count: int = 20000, mean_support: float = 0.45) -> HonestModel:
    """One region of big stations only: suppresses the discrete-share artifact
    that vote weighting would otherwise amplify at round fractions."""
    return HonestModel(
        (
            RegionModel(
                region_id="core",
                station_count=station_count,
                size={"kind": "loguniform", "low": 1500, "high": 3000},
                turnout={"kind": "beta", "a": 24, "b": 16},
                support={
                    "UR": {"kind": "beta", "a": mean_support * 30, "b": (1 - mean_support) * 30},
                    "OPP": {
                        "kind": "beta",
                        "a": (0.9 - mean_support) * 30,
                        "b": (0.1 + mean_support) * 30,
                    },
                },
            ),
        )
    )


def tiny_regions() -> dict[str, RegionInfo]:
    return {
        "a": RegionInfo(region_id="a", name="Region A"),
        "b": RegionInfo(region_id="b", name="Region B", status="republic", exceptional=True, geo_tag="NC"),
    }


def tiny_dataset() -> Dataset:
    """Six stations, two regions, two parties; one invalid record (x5)."""
    recs = (
        PrecinctRecord("x1", "a", 1000, 600, 580, {"P": 300, "Q": 250}),
        PrecinctRecord("x2", "a", 500, 250, 250, {"P": 125, "Q": 100}),
        PrecinctRecord("x3", "a", 20, 10, 10, {"P": 5, "Q": 5}),
        PrecinctRecord("x4", "b", 800, 700, 690, {"P": 500, "Q": 150}),
        PrecinctRecord("x5", "b", 100, 120, 110, {"P": 90, "Q": 10}),  # cast > registered
        PrecinctRecord("x6", "b", 0, 0, 0, {"P": 0, "Q": 0}),  # empty rolls
    )
    return Dataset(records=recs, regions=tiny_regions(), parties=("P", "Q"))


@pytest.fixture
def tiny_ds() -> Dataset:
    return tiny_dataset()
