"""Why share histograms are not Gaussian even for perfectly honest voting.

A coin-flip electorate mixed over station sizes gives a scale mixture of
normals: it is Gaussian only when all stations have the same size.  Small
stations additionally produce a sharp-toothed histogram, because their shares
can only be fractions with small denominators.
"""

from pathlib import Path

from urnstats import HistogramSpec
from urnstats.mixture import SizeMeasure, kolmogorov_gaussian_distance, mixture_moments
from urnstats.rational import coinflip_histogram, enumerate_fractions
from urnstats.svg import polyline_svg

HERE = Path(__file__).parent

print("== moments of the size-mixed share distribution at p = 1/2 ==")
for label, mu in [
    ("single size 400", SizeMeasure({400: 1.0}).normalize()),
    ("sizes 100 and 400", SizeMeasure({100: 0.5, 400: 0.5}).normalize()),
    ("sizes 10..3000", SizeMeasure({n: 1.0 for n in range(10, 3001, 10)}).normalize()),
]:
    _, var, excess = mixture_moments(mu, 0.5)
    dist = kolmogorov_gaussian_distance(mu, 0.5)
    print(f"{label:20s} variance {var:.2e}  excess kurtosis {excess:+.4f}  K-dist {dist:.2e}")

print("\n== the sharp tooth at 1/2 for small stations ==")
small = SizeMeasure({n: 1.0 for n in range(5, 51)})
hist = coinflip_histogram(small, 0.5, HistogramSpec(bin_width=0.001))
i = hist.bin_index(0.5)
print(f"bin at 0.50: {hist.weights[i]:.3f}  neighbors: {hist.weights[i-1]:.3f} / {hist.weights[i+1]:.3f}")
zero = float((hist.weights == 0).mean())
print(f"empty bins: {100 * zero:.0f}% (shares of small stations live on a sparse rational grid)")

catalog = enumerate_fractions(50)
print(f"distinct share values reachable with at most 50 voters: {len(catalog.entries)}")
print(f"multiplicity of 1/2: {catalog.multiplicity('1/2')} (one per even denominator)")

out = HERE / "coinflip_teeth.svg"
out.write_text(polyline_svg([(hist.centers.tolist(), hist.weights.tolist())]))
print(f"histogram written to {out.name}")
