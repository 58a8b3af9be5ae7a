"""Association modeled as a finite discrete-time Markov chain over predicates.

Transition ``p[i, j]`` is the probability that having predicate i in mind
brings predicate j to mind next. The stationary distribution of an
irreducible aperiodic chain gives the long-run share of time each
predicate is in mind (the "mindset").
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from cogmath import _backend
from cogmath.errors import (
    ConvergenceError,
    NegativeEntry,
    NotIrreducible,
    NotStochastic,
    Periodic,
    ShapeMismatch,
)

ROW_TOL = 1e-12
RESIDUAL_TOL = 1e-10
POWER_TOL = 1e-12
POWER_MAXITER = 10**6
AGREEMENT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Chain:
    states: tuple[str, ...]
    matrix: np.ndarray

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.states == other.states
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None


def validate_chain(states: Sequence[str], matrix, tol: float = ROW_TOL) -> Chain:
    states = tuple(states)
    p = np.array(matrix, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ShapeMismatch(f"transition matrix must be square, got shape {p.shape}")
    if p.shape[0] != len(states) or not states:
        raise ShapeMismatch(f"{len(states)} states but a {p.shape[0]}x{p.shape[1]} matrix")
    if len(set(states)) != len(states):
        raise ShapeMismatch("state ids must be distinct")
    if not np.isfinite(p).all():
        i, j = np.argwhere(~np.isfinite(p))[0]
        raise NotStochastic(int(i), float(p[i].sum()))
    neg = np.argwhere(p < 0)
    if len(neg):
        raise NegativeEntry(int(neg[0][0]), int(neg[0][1]))
    for i, row in enumerate(p):
        total = float(row.sum())
        if abs(total - 1.0) > tol or (row > 1.0).any():
            raise NotStochastic(i, total)
    p.setflags(write=False)
    return Chain(states, p)


def n_step(c: Chain, n: int) -> np.ndarray:
    """n-step transition probabilities (P to the n; identity for n = 0)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return np.linalg.matrix_power(c.matrix, n)


@dataclass(frozen=True)
class ClassStructure:
    states: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...]
    closed: tuple[bool, ...]
    periods: tuple[int, ...]
    # quotient DAG: edges between distinct classes on the support graph
    links: frozenset[tuple[int, int]]

    def class_of(self, state: int) -> int:
        for k, members in enumerate(self.classes):
            if state in members:
                return k
        raise KeyError(state)

    @property
    def irreducible(self) -> bool:
        return len(self.classes) == 1

    def labels(self, k: int) -> list[str]:
        return [self.states[i] for i in self.classes[k]]


def support(c: Chain) -> list[list[int]]:
    return [list(np.flatnonzero(row > 0)) for row in c.matrix]


def _tarjan(adj: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, iteratively (no recursion limit)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for p in range(pos, len(adj[v])):
                w = adj[v][p]
                if index[w] == -1:
                    work.append((v, p + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _period(members: Sequence[int], adj: list[list[int]]) -> int:
    """gcd of cycle lengths inside one class, from BFS levels.

    For every edge u -> v inside the class, level[u] + 1 - level[v] is a
    multiple of the period, and the gcd of these differences equals it.
    """
    inside = set(members)
    root = members[0]
    level = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v in inside and v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    d = 0
    for u in members:
        for v in adj[u]:
            if v in inside:
                d = gcd(d, level[u] + 1 - level[v])
    # a single state without a self-loop has no cycles; report period 1 by convention
    return d if d else 1


def communicating_classes(c: Chain) -> ClassStructure:
    adj = support(c)
    comps = sorted(_tarjan(adj), key=lambda comp: comp[0])
    which = {s: k for k, comp in enumerate(comps) for s in comp}
    links = frozenset(
        (which[u], which[v]) for u in range(len(adj)) for v in adj[u] if which[u] != which[v]
    )
    closed = tuple(all(which[v] == k for u in comp for v in adj[u]) for k, comp in enumerate(comps))
    periods = tuple(_period(comp, adj) for comp in comps)
    return ClassStructure(c.states, tuple(map(tuple, comps)), closed, periods, links)


def classify_recurrence(cs: ClassStructure) -> dict[str, str]:
    """Recurrent iff the state's class is closed (finite chains)."""
    out = {}
    for k, comp in enumerate(cs.classes):
        for i in comp:
            out[cs.states[i]] = "recurrent" if cs.closed[k] else "transient"
    return {s: out[s] for s in cs.states}


@dataclass(frozen=True, eq=False)
class Mindset:
    states: tuple[str, ...]
    distribution: np.ndarray
    residual: float
    power: np.ndarray
    iterations: int

    def ranked(self) -> list[tuple[str, float]]:
        order = sorted(range(len(self.states)), key=lambda i: (-self.distribution[i], i))
        return [(self.states[i], float(self.distribution[i])) for i in order]


def solve_balance(p: np.ndarray) -> np.ndarray:
    """pi P = pi with sum(pi) = 1, normalisation replacing the last equation."""
    n = len(p)
    a = p.T - np.eye(n)
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    return np.linalg.solve(a, b)


def power_iteration(p: np.ndarray, tol: float = POWER_TOL, maxiter: int = POWER_MAXITER):
    n = len(p)
    pi = np.full(n, 1.0 / n)
    for it in range(1, maxiter + 1):
        nxt = pi @ p
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - pi)) < tol:
            return nxt, it
        pi = nxt
    raise ConvergenceError(f"power iteration did not converge in {maxiter} iterations")


def stationary(c: Chain, tol: float = RESIDUAL_TOL) -> Mindset:
    """Stationary distribution of an irreducible aperiodic chain.

    Solved directly and cross-checked by power iteration.
    """
    cs = communicating_classes(c)
    if not cs.irreducible:
        raise NotIrreducible(len(cs.classes))
    if cs.periods[0] != 1:
        raise Periodic(cs.periods[0])
    p = c.matrix
    pi = solve_balance(p)
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    residual = float(np.max(np.abs(pi @ p - pi)))
    if residual > tol:
        raise ConvergenceError(f"balance residual {residual:.3e} exceeds {tol:.1e}")
    power, iterations = power_iteration(p)
    gap = float(np.max(np.abs(power - pi)))
    if gap > AGREEMENT_TOL:
        raise ConvergenceError(f"linear solve and power iteration differ by {gap:.3e}")
    return Mindset(c.states, pi, residual, power, iterations)


@dataclass(frozen=True, eq=False)
class MindsetReport:
    structure: ClassStructure
    recurrence: dict[str, str]
    mindset: Mindset | None
    failure: str | None

    def lines(self) -> list[str]:
        out = []
        cs = self.structure
        for k, comp in enumerate(cs.classes):
            kind = "closed" if cs.closed[k] else "open"
            out.append(f"class\t{k}\t{','.join(cs.labels(k))}\t{kind}\tperiod={cs.periods[k]}")
        for a, b in sorted(cs.links):
            out.append(f"link\t{a}\t{b}")
        for s, r in self.recurrence.items():
            out.append(f"state\t{s}\t{r}")
        if self.mindset is not None:
            for s, v in self.mindset.ranked():
                out.append(f"mindset\t{s}\t{v:.12f}")
            out.append(f"residual\t{self.mindset.residual:.3e}")
        else:
            out.append(f"failure\t{self.failure}")
        return out


def mindset_report(c: Chain, tol: float = RESIDUAL_TOL) -> MindsetReport:
    cs = communicating_classes(c)
    rec = classify_recurrence(cs)
    try:
        m = stationary(c, tol)
    except (NotIrreducible, Periodic, ConvergenceError) as exc:
        return MindsetReport(cs, rec, None, f"{type(exc).__name__}: {exc}")
    return MindsetReport(cs, rec, m, None)


def cumulative(p: np.ndarray) -> np.ndarray:
    cum = np.cumsum(p, axis=1)
    return cum / cum[:, -1:]


def simulate_path(c: Chain, steps: int, seed: int | None = None, start: int = 0) -> np.ndarray:
    """States visited over ``steps`` transitions, starting state included."""
    rng = np.random.default_rng(seed)
    u = rng.random(steps)
    return _backend.simulate_path(cumulative(c.matrix), start, u)


def simulate(c: Chain, steps: int, seed: int | None = None, start: int = 0) -> np.ndarray:
    """Empirical occupancy: share of the ``steps`` transitions landing in each state."""
    path = simulate_path(c, steps, seed, start)
    return np.bincount(path[1:], minlength=len(c)) / steps
