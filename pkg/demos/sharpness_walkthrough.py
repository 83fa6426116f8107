"""Follow three ratio experiments from extremal families to a verdict.

For each point the predicate is evaluated exactly, the most aggressive witness
family is chosen, and the norm ratio is tracked along its schedule. A ratio
that grows by a factor of at least 10 is read as divergence, meaning the
embedding fails.

The third point sits in the region where the stated conditions reject the
embedding through the clause on r, although the weight s > 0 restores it. The
witness stays bounded there, so predicate and experiment disagree.

Run: python3 demos/sharpness_walkthrough.py   (about 20 s)
"""

from fspace.params import SpaceParams
from fspace.witnesses.experiments import sharpness_probe

POINTS = [
    ("1.1", SpaceParams(1, "1/2", 1, 2, 3)),
    ("1.2", SpaceParams(1, "1/2", "1/2", 2, -1)),
    ("1.1", SpaceParams(1, 1, "1/3", "1/4", 1)),
]


def main() -> None:
    for theorem, params in POINTS:
        res = sharpness_probe(theorem, params)
        series = res.series
        ratios = " ".join(f"{v:.3g}" for v in series.ratios)
        print(f"theorem {theorem} at {params.label()}")
        print(f"  predicate holds: {res.verdict.holds} (branch {res.verdict.branch})")
        print(f"  witness {res.plan}, schedule {list(series.schedule)}")
        print(f"  ratios {ratios}")
        print(f"  growth x{series.growth_factor:.3g} -> {series.classification}; agrees with predicate: {res.agrees}\n")


if __name__ == "__main__":
    main()
