"""Naive logic: association graph, implication rules and three-valued
forward-chaining inference, plus the predator/prey scenario engine.

Association edges (``a ==> b``: *a brings b to mind*) are stored but never
consulted by :func:`infer`; only rules carry truth.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from cogmath.errors import Contradiction, MissingObservation
from cogmath.knowledge import Object, SpeciesTemplate, classify


class Kind(str, enum.Enum):
    CHARACTERISTIC = "char"
    PREDICATE = "pred"
    MEMBER = "member"


@dataclass(frozen=True, order=True)
class Concept:
    """A ground concept.

    ``head`` is the characteristic name, predicate id or species id;
    ``args`` are object ids (one for characteristics and memberships, one or
    two for predicates).
    """

    kind: Kind
    head: str
    args: tuple[str, ...]
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        n = len(self.args)
        if self.kind is Kind.PREDICATE and n not in (1, 2):
            raise ValueError(f"predicate {self.head!r} must be unary or binary, got {n} arguments")
        if self.kind is not Kind.PREDICATE and n != 1:
            raise ValueError(f"{self.kind.value} concept takes exactly one object id")

    def __invert__(self) -> "Concept":
        return Concept(self.kind, self.head, self.args, not self.negated)

    @property
    def positive(self) -> "Concept":
        return Concept(self.kind, self.head, self.args) if self.negated else self

    def __str__(self):
        if self.kind is Kind.PREDICATE:
            body = f"{self.head}({', '.join(self.args)})"
        elif self.kind is Kind.MEMBER:
            body = f"member({self.args[0]}, {self.head})"
        else:
            body = f"char({self.args[0]}, {self.head})"
        return f"not {body}" if self.negated else body


def pred(name: str, *args: str) -> Concept:
    return Concept(Kind.PREDICATE, name, args)


def member(object_id: str, species_id: str) -> Concept:
    return Concept(Kind.MEMBER, species_id, (object_id,))


def char(object_id: str, name: str) -> Concept:
    return Concept(Kind.CHARACTERISTIC, name, (object_id,))


_CONCEPT_RE = re.compile(r"^\s*(not\s+)?([A-Za-z_][\w\-]*)\s*\(\s*([^()]*?)\s*\)\s*$")


def parse_concept(text: str) -> Concept:
    """Inverse of ``str(concept)``: ``P(x)``, ``P(x, y)``, ``member(x, S)``,
    ``char(x, name)``, each optionally prefixed by ``not``."""
    m = _CONCEPT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse concept {text!r}")
    neg, head, inner = m.groups()
    args = [a.strip() for a in inner.split(",")] if inner else []
    if not all(args):
        raise ValueError(f"empty argument in {text!r}")
    if head in ("member", "char"):
        if len(args) != 2:
            raise ValueError(f"{head}(...) takes two arguments: {text!r}")
        c = member(*args) if head == "member" else char(*args)
    else:
        c = pred(head, *args)
    return ~c if neg else c


class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Fact:
    concept: Concept
    truth: bool

    def literal(self) -> Concept:
        """The concept that this fact makes hold."""
        return self.concept if self.truth else ~self.concept


class FactStore:
    """Truth assignments keyed by positive concept. Never holds both values."""

    def __init__(self, facts: Iterable[Fact] = ()):
        self._truth: dict[Concept, bool] = {}
        for f in facts:
            self.add(f)

    def add(self, fact: Fact) -> None:
        key = fact.concept.positive
        value = fact.truth != fact.concept.negated
        if self._truth.get(key, value) != value:
            raise Contradiction(key)
        self._truth[key] = value

    def truth(self, concept: Concept) -> bool | None:
        v = self._truth.get(concept.positive)
        if v is None:
            return None
        return v != concept.negated

    def items(self):
        return self._truth.items()

    def facts(self) -> list[Fact]:
        return [Fact(c, v) for c, v in sorted(self._truth.items())]

    def object_ids(self) -> set[str]:
        return {a for c in self._truth for a in c.args}

    def copy(self) -> "FactStore":
        new = FactStore()
        new._truth = dict(self._truth)
        return new

    def __len__(self):
        return len(self._truth)

    def __contains__(self, concept: Concept):
        return concept.positive in self._truth


def _store(facts) -> FactStore:
    return facts if isinstance(facts, FactStore) else FactStore(facts)


@dataclass(frozen=True, order=True)
class Rule:
    antecedents: tuple[Concept, ...]
    consequent: Concept

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))
        if not self.antecedents:
            raise ValueError("a rule needs at least one antecedent")

    def __str__(self):
        return " & ".join(map(str, self.antecedents)) + " -> " + str(self.consequent)


@dataclass(frozen=True)
class AssociationGraph:
    nodes: frozenset[Concept] = frozenset()
    edges: frozenset[tuple[Concept, Concept]] = frozenset()


def associate(g: AssociationGraph, a: Concept, b: Concept) -> AssociationGraph:
    return AssociationGraph(g.nodes | {a, b}, g.edges | {(a, b)})


def associations_of(g: AssociationGraph, a: Concept) -> frozenset[Concept]:
    return frozenset(dst for src, dst in g.edges if src == a)


# -- inference ---------------------------------------------------------------


def forward_chain(facts, rules: Iterable[Rule]) -> FactStore:
    """Close the fact store under modus ponens.

    Worklist algorithm: each rule keeps a count of antecedent literals not
    yet known to hold and fires when the count reaches zero.
    """
    store = _store(facts).copy()
    rules = list(dict.fromkeys(rules))
    waiting: dict[Concept, list[int]] = defaultdict(list)
    pending = []
    for idx, r in enumerate(rules):
        ants = set(r.antecedents)
        pending.append(len(ants))
        for lit in ants:
            waiting[lit].append(idx)

    queue = [c if v else ~c for c, v in store.items()]
    while queue:
        lit = queue.pop()
        for idx in waiting.pop(lit, ()):
            pending[idx] -= 1
            if pending[idx] == 0:
                cons = rules[idx].consequent
                known = store.truth(cons)
                if known is False:
                    raise Contradiction(cons.positive)
                if known is None:
                    store.add(Fact(cons, True))
                    queue.append(cons)
    return store


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


Query = Union[Concept, And, Or]


def _evaluate(q: Query, store: FactStore) -> Verdict:
    if isinstance(q, Concept):
        v = store.truth(q)
        return Verdict.UNKNOWN if v is None else (Verdict.TRUE if v else Verdict.FALSE)
    values = [_evaluate(p, store) for p in q.parts]
    # Kleene strong connectives
    dominant, other = (Verdict.FALSE, Verdict.TRUE) if isinstance(q, And) else (Verdict.TRUE, Verdict.FALSE)
    if dominant in values:
        return dominant
    if Verdict.UNKNOWN in values:
        return Verdict.UNKNOWN
    return other


def infer(query: Query, facts, rules: Iterable[Rule]) -> Verdict:
    """Three-valued verdict for ``query`` after chaining ``rules`` over ``facts``.

    No closed-world assumption: a concept is false only when a negative
    fact states it or a rule derives its negation.
    """
    return _evaluate(query, forward_chain(facts, rules))


# -- rules from species profiles -----------------------------------------------


@dataclass(frozen=True)
class ScenarioWiring:
    """Predicate wiring of the predator/prey derivation."""

    predator: str
    prey: str
    species: str
    profile: str
    attack: str
    run: str
    t: int
    tau: int
    approach: str = "approaching"

    def predator_member(self) -> Concept:
        return member(self.predator, self.species)

    def predator_profile(self) -> Concept:
        return pred(self.profile, self.predator)

    def approaching(self) -> Concept:
        return pred(self.approach, self.predator, self.prey)

    def attacking(self) -> Concept:
        return pred(self.attack, self.predator, self.prey)

    def running(self) -> Concept:
        return pred(self.run, self.prey)


def composite_rules(w: ScenarioWiring) -> list[Rule]:
    return [
        Rule((w.predator_profile(), w.approaching()), w.attacking()),
        Rule((w.attacking(),), w.running()),
    ]


def derive_rules(
    facts,
    templates: Iterable[SpeciesTemplate],
    objects: Iterable[str] = (),
    wiring: ScenarioWiring | None = None,
) -> set[Rule]:
    """Ground ``member(x, S) -> p(x)`` for every profile predicate p of every
    species S, over the object ids in the fact store plus ``objects``.

    With ``wiring``, also emits the attack/run composite rules.
    """
    store = _store(facts)
    ids = store.object_ids() | set(objects)
    if wiring is not None:
        ids |= {wiring.predator, wiring.prey}
    rules = {
        Rule((member(x, t.species_id),), pred(p, x))
        for t in templates
        for p in t.profile
        for x in ids
    }
    if wiring is not None:
        rules.update(composite_rules(wiring))
    return rules


# -- distances and time ------------------------------------------------------


@dataclass(frozen=True)
class DistanceObservation:
    subject: str
    target: str
    time: int
    distance: Fraction

    def __post_init__(self):
        object.__setattr__(self, "distance", Fraction(self.distance))
        if self.time < 0:
            raise ValueError("ticks are non-negative")
        if self.distance < 0:
            raise ValueError("distances are non-negative")


def distance_at(obs: Iterable[DistanceObservation], x: str, y: str, tick: int) -> Fraction:
    """Reading for the unordered pair {x, y} at ``tick``."""
    found = {
        o.distance
        for o in obs
        if o.time == tick and (o.subject, o.target) in ((x, y), (y, x))
    }
    if not found:
        raise MissingObservation(x, y, tick)
    if len(found) > 1:
        raise ValueError(f"inconsistent distances for ({x}, {y}) at tick {tick}: {sorted(found)}")
    return found.pop()


def approaching(obs: Iterable[DistanceObservation], x: str, y: str, t: int, tau: int) -> bool:
    """True iff the distance at the later tick ``tau`` is at most the one at ``t``."""
    if t > tau:
        raise ValueError(f"tick t={t} must not come after tau={tau}")
    obs = list(obs)
    return distance_at(obs, x, y, tau) <= distance_at(obs, x, y, t)


# -- scenario ----------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioBundle:
    objects: tuple[Object, ...]
    templates: tuple[SpeciesTemplate, ...]
    observations: tuple[DistanceObservation, ...]
    wiring: ScenarioWiring
    facts: tuple[Fact, ...] = ()
    rules: tuple[Rule, ...] = ()


@dataclass(frozen=True)
class TraceStep:
    index: int
    expression: str
    verdict: Verdict

    def __str__(self):
        return f"{self.index}\t{self.expression}\t{self.verdict}"


@dataclass(frozen=True)
class ScenarioTrace:
    steps: tuple[TraceStep, ...]
    conclusion: Concept
    verdict: Verdict
    facts: FactStore = field(compare=False, repr=False)

    def lines(self) -> list[str]:
        return [str(s) for s in self.steps] + [f"{self.conclusion} = {self.verdict}"]


def _fmt(d: Fraction) -> str:
    return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"


def scenario_facts(s: ScenarioBundle) -> list[Fact]:
    """Observed facts: predator identification and the distance comparison."""
    w = s.wiring
    by_id = {o.id: o for o in s.objects}
    species = classify(by_id[w.predator], list(s.templates))
    return [
        Fact(w.predator_member(), species == w.species),
        Fact(w.approaching(), approaching(s.observations, w.predator, w.prey, w.t, w.tau)),
    ]


def run_scenario(s: ScenarioBundle) -> ScenarioTrace:
    """Identification, then approach, then attack, then flight; the steps are
    emitted in that order."""
    w = s.wiring
    observed = FactStore(list(s.facts) + scenario_facts(s))
    rules = derive_rules(observed, s.templates, wiring=w) | set(s.rules)
    closure = forward_chain(observed, rules)

    def verdict(c):
        return _evaluate(c, closure)

    d_t = distance_at(s.observations, w.predator, w.prey, w.t)
    d_tau = distance_at(s.observations, w.predator, w.prey, w.tau)
    pair = f"{w.predator}, {w.prey}"
    steps = (
        TraceStep(1, f"{w.predator_member()} -> {w.predator_profile()}", verdict(w.predator_profile())),
        TraceStep(
            2,
            f"{w.approaching()} := d@{w.tau}({pair}) = {_fmt(d_tau)} <= d@{w.t}({pair}) = {_fmt(d_t)}",
            verdict(w.approaching()),
        ),
        TraceStep(
            3,
            f"{w.predator_profile()} & {w.approaching()} -> {w.attacking()}",
            verdict(w.attacking()),
        ),
        TraceStep(4, f"{w.attacking()} -> {w.running()}", verdict(w.running())),
    )
    return ScenarioTrace(steps, w.running(), verdict(w.running()), closure)
