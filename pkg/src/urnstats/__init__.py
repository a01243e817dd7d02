"""Precinct-level election forensics toolkit.

Station-voting and turnout histograms, rational-fraction dent detection with
a falsification lower bound, Gaussian-scale-mixture diagnostics, cloud and
compressed-cloud diagrams, regional decomposition, and a synthetic election
generator with fraud injectors for ground-truth testing.
"""

from .cloud import (
    Cloud,
    CloudPoint,
    CompressedPoint,
    ModeEstimate,
    build_cloud,
    compress,
    estimate_modes,
    slope_between_modes,
    turnout_share_association,
)
from .histogram import Histogram, HistogramSpec, rebin, station_voting_histogram, turnout_histogram
from .ingest import (
    Dataset,
    ParseError,
    PrecinctRecord,
    RegionInfo,
    ValidationReport,
    parse_dataset,
    parse_regions,
    serialize_dataset,
    serialize_regions,
    station_size_distribution,
    validate,
)
from .mixture import (
    GaussianComponent,
    SizeMeasure,
    gaussian_sum_modes,
    kolmogorov_gaussian_distance,
    mixture_density,
    mixture_moments,
)
from .rational import (
    DentReport,
    FractionCatalog,
    coinflip_distribution,
    coinflip_histogram,
    detect_dents,
    enumerate_fractions,
    falsification_lower_bound,
)
from .region import Decomposition, RegionSummary, decompose, region_report_csv, summarize_regions
from .synth import FraudInjector, HonestModel, RegionModel, generate, inject, model_from_config

__version__ = "0.1.0"
