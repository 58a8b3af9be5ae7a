"""Builders for the shipped example scenarios.

``python -m cogmath.samples DIR`` writes every sample as ``DIR/<name>.scn``.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from cogmath.counting import Curriculum
from cogmath.knowledge import Object, SpeciesTemplate
from cogmath.logic import (
    AssociationGraph,
    DistanceObservation,
    Fact,
    Rule,
    ScenarioWiring,
    associate,
    member,
    pred,
)
from cogmath.markov import validate_chain
from cogmath.order import OrderedSet
from cogmath.scenario import Scenario, dump

TEMPLATES = (
    SpeciesTemplate("tiger", {"stripes": "yes", "legs": "4", "diet": "meat"}, frozenset({"dangerous"})),
    SpeciesTemplate("gazelle", {"horns": "yes", "legs": "4", "diet": "grass"}, frozenset({"fast"})),
    SpeciesTemplate("parrot", {"beak": "hooked", "legs": "2"}, frozenset({"talks", "flies"})),
    SpeciesTemplate("wolf", {"fur": "grey", "legs": "4", "diet": "meat"}, frozenset({"dangerous"})),
)


def predator(receding: bool = False) -> Scenario:
    objects = (
        Object("stalker", {"stripes": "yes", "legs": "4", "diet": "meat", "fur": "orange"}),
        Object("prey", {"horns": "yes", "legs": "4", "diet": "grass", "fur": "brown"}),
    )
    d0, d1 = (Fraction(6), Fraction(10)) if receding else (Fraction(10), Fraction(6))
    distances = (
        DistanceObservation("stalker", "prey", 0, d0),
        DistanceObservation("stalker", "prey", 1, d1),
    )
    wiring = ScenarioWiring(
        predator="stalker", prey="prey", species="tiger", profile="dangerous",
        attack="attacks", run="R", t=0, tau=1,
    )
    return Scenario(objects=objects, templates=TEMPLATES[:2], distances=distances, wiring=wiring)


def animals() -> Scenario:
    objects = (
        Object("tiger1", {"stripes": "yes", "legs": "4", "diet": "meat", "fur": "orange"}),
        Object("tiger2", {"stripes": "yes", "legs": "4", "diet": "meat", "fur": "white"}),
        Object("wolf1", {"fur": "grey", "legs": "4", "diet": "meat"}),
        Object("parrot1", {"beak": "hooked", "legs": "2", "color": "red"}),
        Object("parrot2", {"beak": "hooked", "legs": "2", "color": "blue"}),
        Object("gazelle1", {"horns": "yes", "legs": "4", "diet": "grass"}),
        Object("rock1", {"shape": "round"}),
    )
    facts = (
        Fact(member("tiger1", "tiger"), True),
        Fact(member("wolf1", "tiger"), False),
        Fact(member("wolf1", "wolf"), True),
        Fact(member("gazelle1", "tiger"), False),
        Fact(pred("dangerous", "gazelle1"), False),
        Fact(member("parrot1", "parrot"), True),
    )
    g = AssociationGraph()
    g = associate(g, member("tiger1", "tiger"), pred("dangerous", "tiger1"))
    g = associate(g, pred("dangerous", "tiger1"), pred("dangerous", "wolf1"))
    g = associate(g, ~pred("talks", "tiger1"), pred("talks", "tiger1"))
    rules = (Rule((pred("dangerous", "tiger1"), pred("fast", "gazelle1")), pred("flees", "gazelle1")),)
    queries = (
        pred("dangerous", "tiger1"),
        pred("dangerous", "wolf1"),
        pred("dangerous", "gazelle1"),
        pred("talks", "parrot1"),
        pred("talks", "parrot2"),
        pred("flees", "gazelle1"),
    )
    return Scenario(
        objects=objects, templates=TEMPLATES, facts=facts, rules=rules,
        associations=g, queries=queries,
    )


def chain(n: int = 7) -> Scenario:
    names = [f"x{i}" for i in range(1, n + 1)]
    # listed out of order so numbering has to follow the relation
    shuffled = names[1::2] + names[0::2]
    s = OrderedSet.chain(names)
    return Scenario(order=OrderedSet(tuple(shuffled), s.leq))


def diamond() -> Scenario:
    """Subsets of {1, 2} under inclusion: a partial order."""
    els = ("{}", "{1}", "{2}", "{1,2}")
    le = {(a, a) for a in els} | {("{}", b) for b in els} | {(a, "{1,2}") for a in els}
    return Scenario(order=OrderedSet(els, frozenset(le)))


def counting(size: int = 10, threshold: int = 3) -> Scenario:
    return Scenario(curriculum=Curriculum.standard(size), leap_threshold=threshold)


MINDSET_STATES = ("dangerous", "approaching", "attacks", "R")
MINDSET_MATRIX = np.array(
    [
        [0.2, 0.5, 0.2, 0.1],
        [0.3, 0.1, 0.4, 0.2],
        [0.1, 0.2, 0.1, 0.6],
        [0.5, 0.2, 0.1, 0.2],
    ]
)


def mindset() -> Scenario:
    return Scenario(chain=validate_chain(MINDSET_STATES, MINDSET_MATRIX))


def reducible() -> Scenario:
    p = [
        [0.5, 0.5, 0.0, 0.0],
        [0.0, 0.5, 0.5, 0.0],
        [0.0, 0.0, 0.3, 0.7],
        [0.0, 0.0, 0.6, 0.4],
    ]
    return Scenario(chain=validate_chain(("sees", "fears", "hides", "waits"), p))


SAMPLES = {
    "predator": predator,
    "predator_receding": lambda: predator(receding=True),
    "animals": animals,
    "chain7": chain,
    "diamond": diamond,
    "counting": counting,
    "mindset": mindset,
    "reducible": reducible,
}


def write_all(directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, build in SAMPLES.items():
        path = out / f"{name}.scn"
        dump(build(), path)
        paths.append(path)
    return paths


if __name__ == "__main__":
    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else "scenarios"):
        print(p)
