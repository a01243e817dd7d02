"""Reference region table for the 2011 Russian parliamentary election.

Per region: electors (millions, rounded to 0.1M), United Russia share of
valid ballots (%), turnout (%), UR share of all registered electors (%), and
a geographic tag.  The `exceptional` flag marks the nine republics treated as
a separate statistical population; Mordovia is conventionally appended to
that set ("exceptional plus"), giving the ten republics whose joint totals
are quoted alongside the national figures (about 10.5M electors, 7.3M UR
votes out of a 32.4M national total).

`reference_dataset` turns the table into a one-station-per-region dataset so
the headline decomposition arithmetic is reproducible without the raw
precinct data.  The source table carries 0.1M rounding on electors, so
derived totals are accurate to roughly +-0.2M votes.
"""

from __future__ import annotations

from .ingest import Dataset, PrecinctRecord, RegionInfo

__all__ = [
    "REGION_TABLE",
    "EXCEPTIONAL_REGIONS",
    "EXCEPTIONAL_PLUS",
    "default_registry",
    "reference_dataset",
]

# (region_id, name, status, exceptional, geo_tag, electors_millions,
#  ur_share_pct, turnout_pct, ur_of_electors_pct)
# Ordered by descending UR share.  Where the geography column lists several
# tags the leading one is kept.
REGION_TABLE = (
    ("chechenia", "Republic of Chechenia", "republic", True, "NC", 0.6, 99.5, 99.5, 99.0),
    ("mordovia", "Republic of Mordovia", "republic", False, "For", 0.7, 91.6, 94.2, 86.3),
    ("daghestan", "Republic of Daghestan", "republic", True, "NC", 1.6, 91.4, 91.1, 83.3),
    ("ingushetia", "Republic of Ingushetia", "republic", True, "NC", 0.2, 91.0, 86.4, 78.6),
    ("karachaevo_cherkessia", "Karachaevo-Circassian Republic", "republic", True, "NC", 0.3, 89.8, 93.2, 83.7),
    ("tyva", "Republic of Tyva", "republic", True, "East", 0.2, 85.3, 86.1, 73.4),
    ("kabardino_balkaria", "Republic of Kabardino-Balkaria", "republic", True, "NC", 0.5, 81.9, 98.4, 80.6),
    ("tatarstan", "Republic of Tatarstan", "republic", True, "I", 2.9, 77.8, 79.5, 61.9),
    ("yamal_nenets", "Yamal-Nenets autonomous okrug", "autonomous_okrug", False, "WS", 0.4, 71.7, 82.2, 58.9),
    ("bashkortostan", "Republic of Bashkortostan", "republic", True, "I", 3.0, 70.5, 79.3, 55.9),
    ("chukotka", "Chukotka autonomous okrug", "autonomous_okrug", False, "East", 0.03, 70.3, 79.1, 55.6),
    ("north_osetia", "Republic of North Osetia", "republic", True, "NC", 0.5, 67.9, 85.8, 58.0),
    ("tambov", "Tambov oblast", "ordinary", False, "Pr", 0.9, 66.7, 68.3, 45.6),
    ("kalmykia", "Republic of Kalmykia", "republic", False, "Pr", 0.2, 66.1, 63.2, 41.8),
    ("saratov", "Saratov oblast", "ordinary", False, "Pr", 2.0, 64.9, 67.3, 43.7),
    ("kemerovo", "Kemerovo oblast", "ordinary", False, "WS", 2.1, 64.2, 69.4, 44.6),
    ("tyumen", "Tyumen oblast", "ordinary", False, "WS", 1.0, 62.2, 76.2, 47.4),
    ("tula", "Tula oblast", "ordinary", False, "Pr", 1.3, 61.3, 72.8, 44.6),
    ("adygeya", "Republic of Adygeya", "republic", False, "NC", 0.3, 61.0, 65.9, 40.2),
    ("astrakhan", "Astrakhan oblast", "ordinary", False, "Pr", 0.8, 60.2, 56.0, 33.7),
    ("komi", "Republic of Komi", "republic", False, "For", 0.7, 58.8, 72.6, 42.7),
    ("penza", "Penza oblast", "ordinary", False, "Pr", 1.1, 56.3, 64.9, 36.6),
    ("krasnodar", "Krasnodar kray", "ordinary", False, "Pr", 3.8, 56.2, 72.6, 40.8),
    ("altai_rep", "Republic of Altai", "republic", False, "WS", 0.2, 53.3, 63.6, 33.9),
    ("mari", "Republic of Mari", "republic", False, "For", 0.5, 52.2, 71.3, 37.2),
    ("belgorod", "Belgorod oblast", "ordinary", False, "Pr", 1.2, 51.2, 75.5, 38.7),
    ("chelyabinsk", "Chelyabinsk oblast", "ordinary", False, "Pr", 2.8, 50.3, 59.7, 30.0),
    ("rostov", "Rostov oblast", "ordinary", False, "Pr", 3.3, 50.2, 59.3, 29.8),
    ("bryansk", "Bryansk oblast", "ordinary", False, "Pr", 1.0, 50.1, 59.9, 30.0),
    ("voronezh", "Voronezh oblast", "ordinary", False, "Pr", 1.9, 50.0, 64.3, 32.2),
    ("yakutia", "Republic of Yakutia", "republic", False, "East", 0.6, 49.2, 60.1, 29.6),
    ("stavropol", "Stavropol kray", "ordinary", False, "Pr", 2.0, 49.1, 50.9, 25.0),
    ("buryatia", "Republic of Buryatia", "republic", False, "East", 0.7, 49.0, 56.9, 27.9),
    ("jewish_ao", "Jewish autonomous oblast", "autonomous_oblast", False, "East", 0.1, 48.1, 52.1, 25.0),
    ("moscow_city", "Moscow (city)", "federal_city", False, "For", 7.2, 46.6, 61.7, 28.9),
    ("kursk", "Kursk oblast", "ordinary", False, "Pr", 0.9, 45.7, 54.7, 25.9),
    ("kamchatka", "Kamchatka kray", "ordinary", False, "East", 0.3, 45.3, 53.6, 24.3),
    ("udmurtia", "Republic of Udmurtia", "republic", False, "For", 1.2, 45.1, 56.6, 25.5),
    ("nizhny_novgorod", "Nizhny Novgorod oblast", "ordinary", False, "For", 2.7, 44.6, 58.9, 26.3),
    ("kurgan", "Kurgan oblast", "ordinary", False, "WS", 0.8, 44.4, 56.5, 25.1),
    ("ulyanovsk", "Ul'yanovsk oblast", "ordinary", False, "Pr", 1.1, 43.6, 60.4, 26.3),
    ("amur", "Amur oblast", "ordinary", False, "East", 0.7, 43.5, 54.0, 23.5),
    ("chuvashia", "Republic of Chuvashia", "republic", False, "For", 1.0, 43.4, 61.7, 26.3),
    ("zabaikale", "Zabaikal'e kray", "ordinary", False, "East", 0.8, 43.3, 53.6, 23.2),
    ("sakhalin", "Sakhalin oblast", "ordinary", False, "East", 0.4, 41.9, 49.1, 20.6),
    ("magadan", "Magadan oblast", "ordinary", False, "East", 0.1, 41.0, 52.6, 21.6),
    ("kaluga", "Kaluga oblast", "ordinary", False, "For", 0.8, 40.4, 57.5, 23.2),
    ("lipetsk", "Lipetsk oblast", "ordinary", False, "Pr", 1.0, 40.1, 56.9, 22.8),
    ("khanty_mansi", "Khanty-Mansi autonomous okrug", "autonomous_okrug", False, "WS", 1.1, 41.0, 54.9, 22.5),
    ("khakassia", "Republic of Khakassia", "republic", False, "East", 0.4, 40.1, 56.2, 22.6),
    ("ivanovo", "Ivanovo oblast", "ordinary", False, "For", 0.8, 40.1, 53.2, 21.3),
    ("ryazan", "Ryazan oblast", "ordinary", False, "For", 1.0, 39.8, 52.7, 21.0),
    ("omsk", "Omsk oblast", "ordinary", False, "WS", 1.6, 39.6, 55.7, 22.1),
    ("samara", "Samara oblast", "ordinary", False, "Pr", 2.6, 39.4, 53.0, 20.9),
    ("orel", "Orel oblast", "ordinary", False, "Pr", 0.7, 39.0, 64.7, 25.2),
    ("tver", "Tver oblast", "ordinary", False, "For", 1.1, 38.4, 53.5, 20.5),
    ("vladimir", "Vladimir oblast", "ordinary", False, "For", 1.3, 38.3, 48.9, 18.7),
    ("khabarovsk", "Khabarovsk kray", "ordinary", False, "East", 1.1, 38.1, 53.2, 20.3),
    ("tomsk", "Tomsk oblast", "ordinary", False, "WS", 0.8, 37.5, 50.5, 18.9),
    ("altai_kray", "Altai kray", "ordinary", False, "WS", 2.0, 37.2, 52.5, 19.6),
    ("kaliningrad", "Kaliningrad oblast", "ordinary", False, "For", 0.8, 37.1, 54.6, 20.3),
    ("pskov", "Pskov oblast", "ordinary", False, "For", 0.6, 36.7, 52.9, 19.4),
    ("krasnoyarsk", "Krasnoyarsk kray", "ordinary", False, "East", 2.2, 36.7, 49.7, 18.2),
    ("perm", "Perm kray", "ordinary", False, "For", 2.1, 36.3, 48.1, 17.5),
    ("smolensk", "Smolensk oblast", "ordinary", False, "For", 0.8, 36.2, 49.6, 18.0),
    ("nenets", "Nenets autonomous okrug", "autonomous_okrug", False, "T", 0.0, 36.0, 56.1, 20.2),
    ("volgograd", "Volgograd oblast", "ordinary", False, "Pr", 2.0, 35.5, 52.0, 18.5),
    ("st_petersburg", "St. Petersburg (city)", "federal_city", False, "For", 3.6, 35.4, 55.2, 19.5),
    ("kirov", "Kirov oblast", "ordinary", False, "For", 1.1, 34.9, 54.0, 18.8),
    ("orenburg", "Orenburg oblast", "ordinary", False, "Pr", 1.6, 34.9, 51.2, 17.7),
    ("irkutsk", "Irkutsk oblast", "ordinary", False, "East", 1.9, 34.9, 47.1, 16.4),
    ("novgorod", "Novgorod oblast", "ordinary", False, "For", 0.5, 34.6, 56.6, 19.6),
    ("novosibirsk", "Novosibirsk oblast", "ordinary", False, "WS", 2.1, 33.8, 56.8, 19.2),
    ("vologda", "Vologda oblast", "ordinary", False, "For", 1.0, 33.4, 56.3, 18.8),
    ("leningrad", "Leningrad oblast", "ordinary", False, "For", 1.3, 33.0, 51.5, 17.0),
    ("primorye", "Primor'e kray", "ordinary", False, "East", 1.5, 33.0, 48.7, 16.1),
    ("moscow_oblast", "Moscow oblast", "ordinary", False, "For", 5.6, 32.8, 51.0, 16.7),
    ("sverdlovsk", "Sverdlovsk oblast", "ordinary", False, "For", 3.5, 32.7, 51.2, 16.7),
    ("karelia", "Republic of Karelia", "republic", False, "For", 0.6, 32.3, 50.3, 16.2),
    ("murmansk", "Murmansk oblast", "ordinary", False, "For", 0.7, 32.0, 51.8, 16.6),
    ("archangelsk", "Archangelsk oblast", "ordinary", False, "For", 1.0, 31.9, 50.0, 16.0),
    ("kostroma", "Kostroma oblast", "ordinary", False, "For", 0.6, 30.7, 57.3, 17.6),
    ("yaroslavl", "Yaroslavl oblast", "ordinary", False, "For", 1.1, 29.0, 55.9, 16.2),
)

EXCEPTIONAL_REGIONS = frozenset(row[0] for row in REGION_TABLE if row[3])
EXCEPTIONAL_PLUS = EXCEPTIONAL_REGIONS | {"mordovia"}


def default_registry() -> dict[str, RegionInfo]:
    """Region registry for the reference table."""
    return {
        row[0]: RegionInfo(
            region_id=row[0], name=row[1], status=row[2], exceptional=row[3], geo_tag=row[4]
        )
        for row in REGION_TABLE
    }


def reference_dataset(party: str = "UR") -> Dataset:
    """One synthetic region-level station per table row.

    registered = electors, ballots_cast = valid_ballots = round(electors *
    turnout), votes = round(ballots * share).  Good to the table's 0.1M
    elector rounding.
    """
    records = []
    for row in REGION_TABLE:
        region_id, _, _, _, _, electors_m, share_pct, turnout_pct, _ = row
        registered = round(electors_m * 1_000_000)
        cast = round(registered * turnout_pct / 100.0)
        votes = round(cast * share_pct / 100.0)
        records.append(
            PrecinctRecord(
                station_id=f"{region_id}-all",
                region_id=region_id,
                registered=registered,
                ballots_cast=cast,
                valid_ballots=cast,
                votes={party: votes},
            )
        )
    return Dataset(records=tuple(records), regions=default_registry(), parties=(party,))
