"""Objects as characteristic bundles, species templates, and the partition
of objects into equivalence classes.

Similarity is always relative to a template: two objects are similar when
both carry every defining characteristic of that template. Characteristic
values are opaque symbols compared by exact identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from cogmath import _backend
from cogmath.errors import AmbiguousClassification, DuplicateTemplate


@dataclass(frozen=True, order=True)
class Characteristic:
    name: str
    value: str

    def __str__(self):
        return f"{self.name}={self.value}"


def _as_characteristics(items) -> frozenset[Characteristic]:
    if isinstance(items, Mapping):
        items = [Characteristic(str(k), str(v)) for k, v in items.items()]
    return frozenset(items)


@dataclass(frozen=True)
class Object:
    id: str
    characteristics: frozenset[Characteristic]

    def __post_init__(self):
        chars = _as_characteristics(self.characteristics)
        object.__setattr__(self, "characteristics", chars)
        if not chars:
            raise ValueError(f"object {self.id!r} has no characteristics")
        names = [c.name for c in chars]
        if len(names) != len(set(names)):
            raise ValueError(f"object {self.id!r} repeats a characteristic name")

    def value(self, name: str) -> str | None:
        for c in self.characteristics:
            if c.name == name:
                return c.value
        return None

    def as_dict(self) -> dict[str, str]:
        return {c.name: c.value for c in sorted(self.characteristics)}


@dataclass(frozen=True)
class SpeciesTemplate:
    species_id: str
    defining: frozenset[Characteristic]
    profile: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        defining = _as_characteristics(self.defining)
        object.__setattr__(self, "defining", defining)
        object.__setattr__(self, "profile", frozenset(self.profile))
        if not defining:
            raise ValueError(f"template {self.species_id!r} has an empty defining set")

    def matches(self, x: Object) -> bool:
        return self.defining <= x.characteristics


@dataclass(frozen=True)
class Partition:
    blocks: dict[str, frozenset[str]]
    unclassified: frozenset[str]

    def block_of(self, object_id: str) -> str | None:
        for species, members in self.blocks.items():
            if object_id in members:
                return species
        return None


def check_templates(templates: Iterable[SpeciesTemplate]) -> None:
    """Raise DuplicateTemplate if two templates share an id or a defining set."""
    seen_ids: set[str] = set()
    seen_sets: dict[frozenset, str] = {}
    for t in templates:
        if t.species_id in seen_ids:
            raise DuplicateTemplate(f"species {t.species_id!r} defined twice")
        if t.defining in seen_sets:
            raise DuplicateTemplate(
                f"templates {seen_sets[t.defining]!r} and {t.species_id!r} share a defining set"
            )
        seen_ids.add(t.species_id)
        seen_sets[t.defining] = t.species_id


def similar(x: Object, y: Object, t: SpeciesTemplate) -> bool:
    return t.matches(x) and t.matches(y)


def classify(x: Object, templates: list[SpeciesTemplate]) -> str | None:
    """Species whose defining set ``x`` carries, or None.

    Raises AmbiguousClassification when more than one template matches.
    """
    check_templates(templates)
    hits = [t.species_id for t in templates if t.matches(x)]
    if len(hits) > 1:
        raise AmbiguousClassification(x.id, hits)
    return hits[0] if hits else None


def partition(objects: list[Object], templates: list[SpeciesTemplate]) -> Partition:
    blocks: dict[str, set[str]] = {}
    unclassified: set[str] = set()
    for x in objects:
        species = classify(x, templates)
        if species is None:
            unclassified.add(x.id)
        else:
            blocks.setdefault(species, set()).add(x.id)
    return Partition({k: frozenset(v) for k, v in sorted(blocks.items())}, frozenset(unclassified))


@dataclass(frozen=True)
class EquivalenceReport:
    species_id: str
    members: tuple[str, ...]
    reflexive: bool
    symmetric: bool
    transitive: bool
    counterexamples: tuple[tuple[str, ...], ...]

    @property
    def passed(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive


def similarity_matrix(objects: list[Object], t: SpeciesTemplate) -> np.ndarray:
    n = len(objects)
    rel = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(objects):
        for j, y in enumerate(objects):
            rel[i, j] = similar(x, y, t)
    return rel


def verify_equivalence(objects: list[Object], t: SpeciesTemplate, limit: int = 10) -> EquivalenceReport:
    """Exhaustively check the equivalence laws for similarity under ``t``.

    Only objects carrying ``t.defining`` take part. At most ``limit``
    counterexamples per law are collected.
    """
    members = [x for x in objects if t.matches(x)]
    ids = [x.id for x in members]
    rel = similarity_matrix(members, t)
    bad: list[tuple[str, ...]] = []

    refl = [i for i in range(len(ids)) if not rel[i, i]]
    bad += [("reflexivity", ids[i]) for i in refl[:limit]]
    asym = np.argwhere(rel & ~rel.T)
    bad += [("symmetry", ids[i], ids[j]) for i, j in asym[:limit]]
    trans = _backend.transitivity_violations(rel, limit)
    bad += [("transitivity", ids[i], ids[j], ids[k]) for i, j, k in trans]

    return EquivalenceReport(
        species_id=t.species_id,
        members=tuple(ids),
        reflexive=not refl,
        symmetric=len(asym) == 0,
        transitive=len(trans) == 0,
        counterexamples=tuple(bad),
    )
