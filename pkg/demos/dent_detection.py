"""Round-fraction dents: negative control, injection, detection, lower bound.

Generates an honest synthetic electorate, draws a fraction of stations up to
round-figure shares (65% and 75%), and shows that the dent detector flags
exactly those two fractions while the honest data stays clean.  Writes the
before/after share histograms as SVG next to this script.
"""

from pathlib import Path

from urnstats import (
    FraudInjector,
    HistogramSpec,
    detect_dents,
    falsification_lower_bound,
    generate,
    inject,
    station_voting_histogram,
)
from urnstats.svg import polyline_svg
from urnstats.synth import HonestModel, RegionModel

HERE = Path(__file__).parent

model = HonestModel(
    (
        RegionModel(
            region_id="demo",
            station_count=15000,
            size={"kind": "loguniform", "low": 1500, "high": 3000},
            turnout={"kind": "beta", "a": 24, "b": 16},
            support={
                "UR": {"kind": "beta", "a": 7, "b": 7},
                "OPP": {"kind": "beta", "a": 6, "b": 8},
            },
        ),
    )
)

honest = generate(model, seed=2026)
drawn, manifest = inject(
    honest,
    FraudInjector(kind="result_drawing", party="UR", affected=0.03, targets=(0.65, 0.75)),
    seed=1,
)
print(f"stations drawn up to a round share: {len(manifest['modified'])}")

# flag dents on the station-count histogram (robust against single large
# stations); quantify the flagged excess on the vote-weighted histogram
count_spec = HistogramSpec(
    bin_width=0.005, weight_mode="stations", min_station_size=400, align_center=0.65
)
vote_spec = HistogramSpec(bin_width=0.005, weight_mode="party_votes", align_center=0.65)
for label, ds in [("honest", honest), ("drawn", drawn)]:
    hist = station_voting_histogram(ds, "UR", count_spec)
    report = detect_dents(hist)
    flagged = ", ".join(str(c.fraction) for c in report.flagged()) or "none"
    print(f"{label:7s} flagged fractions: {flagged}")
    if report.flagged():
        vote_report = detect_dents(
            station_voting_histogram(ds, "UR", vote_spec),
            candidates=[c.fraction for c in report.flagged()],
        )
        bound = falsification_lower_bound(ds, "UR", vote_report)
        print(f"        lower bound on moved vote mass: {bound:.4f}")
    out = HERE / f"dents_{label}.svg"
    out.write_text(polyline_svg([(hist.centers.tolist(), hist.weights.tolist())]))
    print(f"        histogram written to {out.name}")
