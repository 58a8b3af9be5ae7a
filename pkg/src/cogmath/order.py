"""Finite order relations, the successor function, and a mechanical check
that the elements of a finite well-ordered set satisfy Peano's axioms.

A relation is supplied explicitly as a set of pairs ``(a, b)`` meaning
``a <= b``. No closure is ever taken: a non-transitive input is simply not
an order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Sequence

import numpy as np

from cogmath import _backend
from cogmath.errors import (
    EquivalentElementsPresent,
    NotTotallyOrdered,
    NotWellOrdered,
    OutOfRange,
)


@dataclass(frozen=True)
class OrderedSet:
    elements: tuple[Hashable, ...]
    leq: frozenset[tuple[Hashable, Hashable]]

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", frozenset(self.leq))
        if len(set(elements)) != len(elements):
            raise ValueError("elements must be distinct ids")
        known = set(elements)
        for a, b in self.leq:
            if a not in known or b not in known:
                raise ValueError(f"pair ({a!r}, {b!r}) refers to an unknown element")

    @classmethod
    def chain(cls, elements: Sequence[Hashable]) -> "OrderedSet":
        """The total order listing ``elements`` from least to greatest."""
        elements = tuple(elements)
        pairs = {(a, b) for i, a in enumerate(elements) for b in elements[i:]}
        return cls(elements, pairs)

    @classmethod
    def from_matrix(cls, elements: Sequence[Hashable], matrix) -> "OrderedSet":
        m = np.asarray(matrix, dtype=bool)
        return cls(tuple(elements), {(elements[i], elements[j]) for i, j in np.argwhere(m)})

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def matrix(self) -> np.ndarray:
        n = len(self.elements)
        m = np.zeros((n, n), dtype=bool)
        if self.leq:
            idx = self.index
            ij = np.array([(idx[a], idx[b]) for a, b in self.leq])
            m[ij[:, 0], ij[:, 1]] = True
        m.setflags(write=False)
        return m

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt(self, a, b) -> bool:
        return (a, b) in self.leq and (b, a) not in self.leq

    def __len__(self):
        return len(self.elements)


class OrderKind(str, enum.Enum):
    NOT_AN_ORDER = "not-an-order"
    PARTIAL = "partial"
    TOTAL = "total"
    WELL = "well"

    def __str__(self):
        return self.value


def equivalent_pairs(s: OrderedSet) -> list[tuple[Hashable, Hashable]]:
    """Pairs of distinct elements with a <= b and b <= a."""
    m = s.matrix
    return [(s.elements[i], s.elements[j]) for i, j in np.argwhere(m & m.T) if i < j]


def collapse_equivalents(s: OrderedSet) -> OrderedSet:
    """Quotient by mutual comparability; each class keeps its first-listed element."""
    m = s.matrix
    rep: dict[int, int] = {}
    for i in range(len(s)):
        if i in rep:
            continue
        for j in np.flatnonzero(m[i] & m[:, i]):
            rep.setdefault(int(j), i)
        rep[i] = i
    keep = sorted(set(rep.values()))
    elements = [s.elements[i] for i in keep]
    return OrderedSet.from_matrix(elements, m[np.ix_(keep, keep)])


def _minimum_exists(m: np.ndarray) -> bool:
    return len(m) == 0 or bool(m.all(axis=1).any())


def check_order(s: OrderedSet) -> OrderKind:
    m = s.matrix
    n = len(m)
    if not m.diagonal().all():
        return OrderKind.NOT_AN_ORDER
    if len(_backend.transitivity_violations(m, 1)):
        return OrderKind.NOT_AN_ORDER
    if not (m | m.T).all():
        return OrderKind.PARTIAL
    # On a finite total order every non-empty subset has a least element;
    # checking for a global minimum (a row of all ones) is sufficient.
    if n and not _minimum_exists(m):
        return OrderKind.TOTAL
    return OrderKind.WELL


def _require_strict_total(s: OrderedSet) -> None:
    if check_order(s) not in (OrderKind.TOTAL, OrderKind.WELL):
        raise NotTotallyOrdered("successor needs a total order")
    eq = equivalent_pairs(s)
    if eq:
        raise EquivalentElementsPresent(f"collapse equivalent elements first, e.g. {eq[0]}")


def successor_candidates(s: OrderedSet) -> dict[Hashable, list[Hashable]]:
    """For each x, every j with x < j and j <= k for all k > x.

    Makes no order assumptions; on a strict total order each list has at
    most one entry.
    """
    cand = _backend.successor_candidates(s.matrix)
    return {
        x: [s.elements[j] for j in np.flatnonzero(cand[i])] for i, x in enumerate(s.elements)
    }


def successor_map(s: OrderedSet) -> dict[Hashable, Hashable | None]:
    _require_strict_total(s)
    return {x: (c[0] if c else None) for x, c in successor_candidates(s).items()}


def successor(s: OrderedSet, x: Hashable) -> Hashable | None:
    """Least element strictly greater than ``x``; None for the maximum."""
    _require_strict_total(s)
    if x not in s.index:
        raise KeyError(x)
    i = s.index[x]
    cand = _backend.successor_candidates(s.matrix)[i]
    hits = np.flatnonzero(cand)
    return s.elements[hits[0]] if len(hits) else None


@dataclass(frozen=True)
class LemmaReport:
    passed: bool
    checked: int
    witnesses: tuple


def verify_lemma1(s: OrderedSet) -> LemmaReport:
    """Every element has at most one successor."""
    _require_strict_total(s)
    cands = successor_candidates(s)
    bad = tuple((x, tuple(c)) for x, c in cands.items() if len(c) > 1)
    return LemmaReport(not bad, len(cands), bad)


def verify_lemma2(s: OrderedSet) -> LemmaReport:
    """Distinct elements have distinct successors."""
    _require_strict_total(s)
    owner: dict[Hashable, Hashable] = {}
    bad = []
    for x, c in successor_candidates(s).items():
        for j in c:
            if j in owner:
                bad.append((owner[j], x, j))
            else:
                owner[j] = x
    return LemmaReport(not bad, len(s), tuple(bad))


AXIOMS = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    passed: bool
    witness: str = ""
    note: str = ""

    def line(self) -> str:
        fields = [self.axiom, "pass" if self.passed else "fail"]
        if self.witness:
            fields.append(self.witness)
        if self.note:
            fields.append(self.note)
        return "\t".join(fields)


@dataclass(frozen=True)
class PeanoReport:
    kind: OrderKind
    first: Hashable | None
    exempt: Hashable | None
    results: tuple[AxiomResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        return next(r for r in self.results if r.axiom == axiom)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def peano_verify(s: OrderedSet) -> PeanoReport:
    """Check axioms i-v on the elements of ``s`` read as numbers.

    Never raises on bad input; every failure is recorded with a witness.
    The maximum of a finite carrier has no successor and is recorded as the
    one exemption from axiom ii.
    """
    kind = check_order(s)
    eq = equivalent_pairs(s)
    m = s.matrix
    els = s.elements
    firsts = [els[i] for i in np.flatnonzero(m.all(axis=1))] if len(els) else []
    lasts = [els[j] for j in np.flatnonzero(m.all(axis=0))] if len(els) else []
    first = firsts[0] if len(firsts) == 1 else None
    last = lasts[0] if len(lasts) == 1 else None
    cands = successor_candidates(s)

    # i: the first element of a well order on distinct objects is named 1
    if kind is not OrderKind.WELL:
        r1 = AxiomResult("i", False, f"order kind is {kind}")
    elif eq:
        r1 = AxiomResult("i", False, f"equivalent elements {eq[0][0]} ~ {eq[0][1]}")
    elif first is None:
        r1 = AxiomResult("i", False, "no unique first element")
    else:
        r1 = AxiomResult("i", True, note=f"1 = {first}")

    # ii: unique successor for every element except the finite maximum
    bad = [(x, c) for x, c in cands.items() if len(c) != 1 and not (x == last and not c)]
    if bad:
        x, c = bad[0]
        if c:
            r2 = AxiomResult("ii", False, f"{x} has successors [{','.join(map(str, c))}]")
        else:
            r2 = AxiomResult("ii", False, f"{x} has no successor")
    elif last is not None and not cands[last]:
        r2 = AxiomResult("ii", True, note=f"exempt maximum {last}")
    else:
        r2 = AxiomResult("ii", True)

    # iii: nothing has the first element as successor
    if first is None:
        r3 = AxiomResult("iii", False, "no first element")
    else:
        hits = [x for x, c in cands.items() if first in c]
        r3 = AxiomResult("iii", not hits, f"S({hits[0]}) = {first}" if hits else "")

    # iv: successor is injective
    owner: dict = {}
    clash = None
    for x, c in cands.items():
        for j in c:
            if j in owner and clash is None:
                clash = (owner[j], x, j)
            owner.setdefault(j, x)
    r4 = AxiomResult("iv", clash is None, f"S({clash[0]}) = S({clash[1]}) = {clash[2]}" if clash else "")

    # v: induction, as coverage of the carrier by the successor chain from 1
    if first is None:
        r5 = AxiomResult("v", False, "no first element")
    else:
        seen = [first]
        cur = first
        while len(cands[cur]) == 1 and cands[cur][0] not in seen:
            cur = cands[cur][0]
            seen.append(cur)
        reached = set(seen)
        missing = [e for e in els if e not in reached]
        r5 = AxiomResult("v", not missing, f"unreached {missing[0]}" if missing else "")

    return PeanoReport(kind, first, last if r2.note else None, (r1, r2, r3, r4, r5))


@dataclass(frozen=True)
class Numbering:
    names: dict[Hashable, int]

    def element(self, numeral: int) -> Hashable:
        for e, k in self.names.items():
            if k == numeral:
                return e
        raise OutOfRange(f"no element is named {numeral}")


def first_element(s: OrderedSet) -> Hashable:
    m = s.matrix
    hits = np.flatnonzero(m.all(axis=1))
    if len(hits) != 1:
        raise NotWellOrdered("no unique first element")
    return s.elements[hits[0]]


def _require_well(s: OrderedSet) -> None:
    if check_order(s) is not OrderKind.WELL:
        raise NotWellOrdered(f"order kind is {check_order(s)}")
    if equivalent_pairs(s):
        raise EquivalentElementsPresent("collapse equivalent elements first")


def name_elements(s: OrderedSet) -> Numbering:
    """First element gets 1; the successor of the element named k gets k + 1."""
    _require_well(s)
    if not len(s):
        return Numbering({})
    succ = successor_map(s)
    names = {}
    cur, k = first_element(s), 1
    while cur is not None:
        names[cur] = k
        cur, k = succ[cur], k + 1
    return Numbering(names)


def add(s: OrderedSet, n: int, m: int) -> int:
    """``n + m`` by the recursion ``N + 1 = S(N)``, ``N + S(M) = S(N + M)``.

    The sum is computed by walking the successor function over elements; the
    numeral of the resulting element is read off the numbering.
    """
    numbering = name_elements(s)
    succ = successor_map(s)
    by_name = {k: e for e, k in numbering.names.items()}
    if n not in by_name or m not in by_name:
        raise OutOfRange(f"numerals must name elements 1..{len(s)}")
    x, y = by_name[n], by_name[m]

    def S(e):
        nxt = succ[e]
        if nxt is None:
            raise OutOfRange(f"{n} + {m} runs past the maximum {e}")
        return nxt

    # N + 1 = S(N); then each step M -> S(M) takes N + M -> S(N + M)
    total = S(x)
    counter = first_element(s)
    while counter != y:
        counter = succ[counter]
        total = S(total)
    return numbering.names[total]

