"""Reading and writing ``.scn`` scenario files.

A scenario file is a YAML mapping whose sections are all optional. Every
scalar is read as a string (no implicit typing, so ``yes`` stays ``"yes"``)
and converted explicitly. Unknown keys are rejected. The layout is
documented in ``docs/format.md``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from cogmath.counting import Curriculum, tokens
from cogmath.errors import ScenarioFormatError
from cogmath.knowledge import Object, SpeciesTemplate, check_templates
from cogmath.logic import (
    AssociationGraph,
    Concept,
    DistanceObservation,
    Fact,
    Kind,
    Rule,
    ScenarioBundle,
    ScenarioWiring,
    associate,
    parse_concept,
)
from cogmath.markov import Chain, validate_chain
from cogmath.order import OrderedSet

SECTIONS = {
    "objects", "templates", "facts", "rules", "associations", "distances",
    "wiring", "queries", "order", "curriculum", "matrix",
}


@dataclass(frozen=True)
class Scenario:
    objects: tuple[Object, ...] = ()
    templates: tuple[SpeciesTemplate, ...] = ()
    facts: tuple[Fact, ...] = ()
    rules: tuple[Rule, ...] = ()
    associations: AssociationGraph = field(default_factory=AssociationGraph)
    distances: tuple[DistanceObservation, ...] = ()
    wiring: ScenarioWiring | None = None
    queries: tuple[Concept, ...] = ()
    order: OrderedSet | None = None
    curriculum: Curriculum | None = None
    leap_threshold: int | None = None
    chain: Chain | None = None

    def bundle(self) -> ScenarioBundle:
        if self.wiring is None:
            raise ScenarioFormatError("file has no 'wiring' section")
        return ScenarioBundle(
            self.objects, self.templates, self.distances, self.wiring, self.facts, self.rules
        )


# -- helpers -----------------------------------------------------------------


def _fail(where: str, msg: str):
    raise ScenarioFormatError(f"{where}: {msg}")


def _mapping(node, where, allowed, required=()):
    if not isinstance(node, dict):
        _fail(where, "expected a mapping")
    for key in node:
        if key not in allowed:
            _fail(where, f"unknown key {key!r}")
    for key in required:
        if key not in node:
            _fail(where, f"missing key {key!r}")
    return node


def _list(node, where):
    if not isinstance(node, list):
        _fail(where, "expected a list")
    return node


def _str(node, where):
    if not isinstance(node, str) or not node:
        _fail(where, "expected a non-empty scalar")
    return node


def _int(node, where):
    try:
        return int(_str(node, where))
    except ValueError:
        _fail(where, f"expected an integer, got {node!r}")


def _fraction(node, where):
    try:
        return Fraction(_str(node, where))
    except (ValueError, ZeroDivisionError):
        _fail(where, f"expected a rational like 3 or 3/2, got {node!r}")


def _float(node, where):
    text = _str(node, where)
    try:
        return float(Fraction(text)) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        _fail(where, f"expected a probability, got {node!r}")


def _concept(node, where):
    try:
        return parse_concept(_str(node, where))
    except ValueError as exc:
        _fail(where, str(exc))


def _pairs(node, where):
    if not isinstance(node, dict):
        _fail(where, "expected name: value pairs")
    return {_str(k, where): _str(v, f"{where}.{k}") for k, v in node.items()}


# -- loading -----------------------------------------------------------------


def _load_objects(node):
    out = []
    for i, item in enumerate(_list(node, "objects")):
        where = f"objects[{i}]"
        _mapping(item, where, {"id", "characteristics"}, {"id", "characteristics"})
        try:
            out.append(Object(_str(item["id"], where), _pairs(item["characteristics"], where)))
        except ValueError as exc:
            _fail(where, str(exc))
    ids = [o.id for o in out]
    if len(set(ids)) != len(ids):
        _fail("objects", "duplicate object id")
    return tuple(out)


def _load_templates(node):
    out = []
    for i, item in enumerate(_list(node, "templates")):
        where = f"templates[{i}]"
        _mapping(item, where, {"species", "defining", "profile"}, {"species", "defining"})
        profile = [_str(p, where) for p in _list(item.get("profile", []), f"{where}.profile")]
        try:
            out.append(SpeciesTemplate(_str(item["species"], where), _pairs(item["defining"], where), frozenset(profile)))
        except ValueError as exc:
            _fail(where, str(exc))
    try:
        check_templates(out)
    except Exception as exc:
        _fail("templates", str(exc))
    return tuple(out)


def _load_rules(node):
    out = []
    for i, item in enumerate(_list(node, "rules")):
        where = f"rules[{i}]"
        _mapping(item, where, {"if", "then"}, {"if", "then"})
        ants = tuple(_concept(a, where) for a in _list(item["if"], f"{where}.if"))
        if not ants:
            _fail(where, "a rule needs at least one antecedent")
        out.append(Rule(ants, _concept(item["then"], where)))
    return tuple(out)


def _load_associations(node):
    g = AssociationGraph()
    for i, item in enumerate(_list(node, "associations")):
        where = f"associations[{i}]"
        if not isinstance(item, list) or len(item) != 2:
            _fail(where, "expected [source, target]")
        g = associate(g, _concept(item[0], where), _concept(item[1], where))
    return g


def _load_distances(node):
    out = []
    for i, item in enumerate(_list(node, "distances")):
        where = f"distances[{i}]"
        keys = {"subject", "target", "tick", "distance"}
        _mapping(item, where, keys, keys)
        try:
            out.append(DistanceObservation(
                _str(item["subject"], where),
                _str(item["target"], where),
                _int(item["tick"], where),
                _fraction(item["distance"], where),
            ))
        except ValueError as exc:
            _fail(where, str(exc))
    return tuple(out)


_WIRING_KEYS = {"predator", "prey", "species", "profile", "attack", "run", "t", "tau", "approach"}


def _load_wiring(node):
    _mapping(node, "wiring", _WIRING_KEYS, _WIRING_KEYS - {"approach"})
    kw = {k: _str(node[k], f"wiring.{k}") for k in node if k not in ("t", "tau")}
    t, tau = _int(node["t"], "wiring.t"), _int(node["tau"], "wiring.tau")
    if t > tau:
        _fail("wiring", "t must not come after tau")
    return ScenarioWiring(t=t, tau=tau, **kw)


def _load_order(node):
    _mapping(node, "order", {"elements", "pairs", "chain"})
    if "chain" in node:
        if set(node) != {"chain"}:
            _fail("order", "'chain' cannot be combined with 'elements'/'pairs'")
        chain = [_str(e, "order.chain") for e in _list(node["chain"], "order.chain")]
        try:
            return OrderedSet.chain(chain)
        except ValueError as exc:
            _fail("order", str(exc))
    _mapping(node, "order", {"elements", "pairs"}, {"elements", "pairs"})
    elements = [_str(e, "order.elements") for e in _list(node["elements"], "order.elements")]
    pairs = []
    for i, p in enumerate(_list(node["pairs"], "order.pairs")):
        if not isinstance(p, list) or len(p) != 2:
            _fail(f"order.pairs[{i}]", "expected [lesser, greater]")
        pairs.append((_str(p[0], "order.pairs"), _str(p[1], "order.pairs")))
    try:
        return OrderedSet(tuple(elements), frozenset(pairs))
    except ValueError as exc:
        _fail("order", str(exc))


def _load_curriculum(node):
    _mapping(node, "curriculum", {"words", "objects", "leap_threshold"}, {"words"})
    words = [_str(w, "curriculum.words") for w in _list(node["words"], "curriculum.words")]
    objects = node.get("objects")
    if objects is None:
        objects = tokens(len(words))
    else:
        objects = [_str(o, "curriculum.objects") for o in _list(objects, "curriculum.objects")]
    threshold = _int(node["leap_threshold"], "curriculum.leap_threshold") if "leap_threshold" in node else None
    try:
        return Curriculum(tuple(words), tuple(objects)), threshold
    except ValueError as exc:
        _fail("curriculum", str(exc))


def _load_matrix(node):
    _mapping(node, "matrix", {"states", "rows"}, {"states", "rows"})
    states = [_str(s, "matrix.states") for s in _list(node["states"], "matrix.states")]
    rows = [
        [_float(v, f"matrix.rows[{i}]") for v in _list(r, f"matrix.rows[{i}]")]
        for i, r in enumerate(_list(node["rows"], "matrix.rows"))
    ]
    if any(len(r) != len(states) for r in rows):
        _fail("matrix", f"every row needs {len(states)} entries")
    # stochasticity errors are domain errors and propagate unchanged
    return states, rows


def _check_references(s: Scenario) -> None:
    if s.objects:
        ids = {o.id for o in s.objects}
        concepts = [f.concept for f in s.facts] + list(s.queries)
        concepts += [c for r in s.rules for c in (*r.antecedents, r.consequent)]
        concepts += list(s.associations.nodes)
        for c in concepts:
            for a in c.args:
                if a not in ids:
                    _fail("references", f"{c} names unknown object {a!r}")
        for d in s.distances:
            for a in (d.subject, d.target):
                if a not in ids:
                    _fail("distances", f"unknown object {a!r}")
    if s.templates:
        species = {t.species_id for t in s.templates}
        for c in [f.concept for f in s.facts] + list(s.queries):
            if c.kind is Kind.MEMBER and c.head not in species:
                _fail("references", f"{c} names unknown species {c.head!r}")
    w = s.wiring
    if w is not None:
        ids = {o.id for o in s.objects}
        for key in ("predator", "prey"):
            if getattr(w, key) not in ids:
                _fail(f"wiring.{key}", f"unknown object {getattr(w, key)!r}")
        by_species = {t.species_id: t for t in s.templates}
        if w.species not in by_species:
            _fail("wiring.species", f"unknown species {w.species!r}")
        if w.profile not in by_species[w.species].profile:
            _fail("wiring.profile", f"{w.profile!r} is not in the profile of {w.species!r}")


def parse(text: str, tol: float | None = None) -> Scenario:
    try:
        doc = yaml.load(text, Loader=yaml.BaseLoader)
    except yaml.YAMLError as exc:
        raise ScenarioFormatError(f"not valid YAML: {exc}") from None
    if doc is None:
        doc = {}
    _mapping(doc, "file", SECTIONS)

    kw: dict[str, Any] = {}
    if "objects" in doc:
        kw["objects"] = _load_objects(doc["objects"])
    if "templates" in doc:
        kw["templates"] = _load_templates(doc["templates"])
    if "facts" in doc:
        kw["facts"] = tuple(
            Fact(c.positive, not c.negated)
            for c in (_concept(f, f"facts[{i}]") for i, f in enumerate(_list(doc["facts"], "facts")))
        )
    if "rules" in doc:
        kw["rules"] = _load_rules(doc["rules"])
    if "associations" in doc:
        kw["associations"] = _load_associations(doc["associations"])
    if "distances" in doc:
        kw["distances"] = _load_distances(doc["distances"])
    if "wiring" in doc:
        kw["wiring"] = _load_wiring(doc["wiring"])
    if "queries" in doc:
        kw["queries"] = tuple(_concept(q, f"queries[{i}]") for i, q in enumerate(_list(doc["queries"], "queries")))
    if "order" in doc:
        kw["order"] = _load_order(doc["order"])
    if "curriculum" in doc:
        kw["curriculum"], kw["leap_threshold"] = _load_curriculum(doc["curriculum"])
    if "matrix" in doc:
        states, rows = _load_matrix(doc["matrix"])
        kw["chain"] = validate_chain(states, rows) if tol is None else validate_chain(states, rows, tol)

    s = Scenario(**kw)
    _check_references(s)
    return s


def load(path: str | Path, tol: float | None = None) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text, tol)


# -- writing -----------------------------------------------------------------


def _fact_text(f: Fact) -> str:
    return str(f.concept if f.truth else ~f.concept)


def to_document(s: Scenario) -> dict:
    doc: dict[str, Any] = {}
    if s.objects:
        doc["objects"] = [{"id": o.id, "characteristics": o.as_dict()} for o in s.objects]
    if s.templates:
        doc["templates"] = [
            {
                "species": t.species_id,
                "defining": {c.name: c.value for c in sorted(t.defining)},
                "profile": sorted(t.profile),
            }
            for t in s.templates
        ]
    if s.facts:
        doc["facts"] = [_fact_text(f) for f in s.facts]
    if s.rules:
        doc["rules"] = [{"if": [str(a) for a in r.antecedents], "then": str(r.consequent)} for r in s.rules]
    if s.associations.edges:
        doc["associations"] = [[str(a), str(b)] for a, b in sorted(s.associations.edges)]
    if s.distances:
        doc["distances"] = [
            {"subject": d.subject, "target": d.target, "tick": str(d.time), "distance": str(d.distance)}
            for d in s.distances
        ]
    if s.wiring is not None:
        w = s.wiring
        doc["wiring"] = {
            "predator": w.predator, "prey": w.prey, "species": w.species, "profile": w.profile,
            "attack": w.attack, "run": w.run, "approach": w.approach, "t": str(w.t), "tau": str(w.tau),
        }
    if s.queries:
        doc["queries"] = [str(q) for q in s.queries]
    if s.order is not None:
        doc["order"] = {
            "elements": list(s.order.elements),
            "pairs": [list(p) for p in sorted(s.order.leq)],
        }
    if s.curriculum is not None:
        doc["curriculum"] = {"words": list(s.curriculum.words), "objects": list(s.curriculum.objects)}
        if s.leap_threshold is not None:
            doc["curriculum"]["leap_threshold"] = str(s.leap_threshold)
    if s.chain is not None:
        doc["matrix"] = {
            "states": list(s.chain.states),
            "rows": [[repr(float(v)) for v in row] for row in s.chain.matrix],
        }
    return doc


def dumps(s: Scenario) -> str:
    return yaml.safe_dump(to_document(s), sort_keys=False, default_flow_style=None, allow_unicode=True)


def dump(s: Scenario, path: str | Path) -> None:
    Path(path).write_text(dumps(s), encoding="utf-8")
