"""Independent reference implementations used as test oracles.

Deliberately naive: brute-force enumeration, naive fixpoints, matrix powers.
Nothing here calls into the code paths it is used to check.
"""

from fractions import Fraction
from itertools import chain, combinations, product
from math import gcd

import numpy as np


# -- orders ------------------------------------------------------------------


def nonempty_subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(1, len(items) + 1))


def brute_order_kind(elements, pairs):
    le = lambda a, b: (a, b) in pairs  # noqa: E731
    if not all(le(a, a) for a in elements):
        return "not-an-order"
    if not all(le(a, c) for a, b, c in product(elements, repeat=3) if le(a, b) and le(b, c)):
        return "not-an-order"
    if not all(le(a, b) or le(b, a) for a, b in product(elements, repeat=2)):
        return "partial"
    for sub in nonempty_subsets(elements):
        if not any(all(le(x, y) for y in sub) for x in sub):
            return "total"
    return "well"


def brute_has_equivalents(elements, pairs):
    return any((a, b) in pairs and (b, a) in pairs for a, b in combinations(elements, 2))


def sort_successors(ranked):
    """Successor by sorting: ``ranked`` lists elements least first."""
    return {x: (ranked[i + 1] if i + 1 < len(ranked) else None) for i, x in enumerate(ranked)}


def random_chain(rng, n):
    """A strict total order on n ids: (rank order, listing order, pairs)."""
    ranked = [f"e{i}" for i in rng.permutation(n)]
    listing = list(rng.permutation(ranked))
    pairs = {(a, b) for i, a in enumerate(ranked) for b in ranked[i:]}
    return ranked, listing, pairs


def random_relation(rng, n):
    """Mix of chains, preorders, posets and noise on n elements."""
    els = [f"v{i}" for i in range(n)]
    kind = rng.integers(5)
    if kind == 0:  # strict chain
        ranked = list(rng.permutation(els))
        pairs = {(a, b) for i, a in enumerate(ranked) for b in ranked[i:]}
    elif kind == 1:  # total preorder: chain of blocks
        level = {e: int(rng.integers(max(1, n - 1))) for e in els}
        pairs = {(a, b) for a in els for b in els if level[a] <= level[b]}
    elif kind == 2:  # poset from a random DAG, closed by hand
        ranked = list(rng.permutation(els))
        m = np.eye(n, dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                m[i, j] = rng.random() < 0.4
        for k in range(n):
            m |= m[:, [k]] & m[[k], :]
        pairs = {(ranked[i], ranked[j]) for i, j in np.argwhere(m)}
    else:  # noise, usually not an order
        pairs = {(a, b) for a in els for b in els if rng.random() < 0.5}
        if kind == 3:
            pairs |= {(a, a) for a in els}
    if n and rng.random() < 0.2:  # perturb: drop or add one pair
        a, b = rng.choice(els, 2)
        pairs ^= {(str(a), str(b))}
    return els, pairs


# -- inference ---------------------------------------------------------------


def naive_fixpoint(facts, rules):
    """facts: dict positive-concept -> bool. Returns closure or raises ValueError."""
    known = dict(facts)

    def holds(c):
        v = known.get(c.positive)
        return v is not None and v != c.negated

    changed = True
    while changed:
        changed = False
        for r in rules:
            if all(holds(a) for a in r.antecedents):
                c = r.consequent
                want = not c.negated
                have = known.get(c.positive)
                if have is None:
                    known[c.positive] = want
                    changed = True
                elif have != want:
                    raise ValueError("contradiction")
    return known


def naive_verdict(query, closure):
    v = closure.get(query.positive)
    if v is None:
        return "unknown"
    return "true" if v != query.negated else "false"


# -- knowledge ---------------------------------------------------------------


def subset_classify(chars: dict, templates: list[tuple[str, dict]]):
    hits = [sid for sid, defining in templates if all(chars.get(k) == v for k, v in defining.items())]
    if len(hits) > 1:
        return "ambiguous"
    return hits[0] if hits else None


# -- markov ------------------------------------------------------------------


def positivity_classes(p, horizon=None):
    """Communicating classes from positivity of P^0 .. P^horizon."""
    n = len(p)
    horizon = n if horizon is None else horizon
    reach = np.zeros((n, n), dtype=bool)
    power = np.eye(n)
    for _ in range(horizon + 1):
        reach |= power > 0
        power = power @ p
    comm = reach & reach.T
    classes = {frozenset(np.flatnonzero(comm[i]).tolist()) for i in range(n)}
    closed = {c: not any(p[i, j] > 0 for i in c for j in range(n) if j not in c) for c in classes}
    return classes, closed


def positivity_period(p, members, horizon=None):
    """gcd of n <= horizon with (P^n)[i, i] > 0 for a state i in the class."""
    n = len(p)
    horizon = 3 * n if horizon is None else horizon
    i = min(members)
    d = 0
    power = np.eye(n)
    for k in range(1, horizon + 1):
        power = power @ p
        if power[i, i] > 0:
            d = gcd(d, k)
    return d


def random_support_chain(rng, n, density=0.2):
    p = np.zeros((n, n))
    for i in range(n):
        mask = rng.random(n) < density
        if not mask.any():
            mask[rng.integers(n)] = True
        p[i, mask] = rng.random(mask.sum()) + 0.05
        p[i] /= p[i].sum()
    return p


def random_dense_chain(rng, n):
    p = rng.random((n, n)) + 0.01
    return p / p.sum(axis=1, keepdims=True)


def doubly_stochastic(rng, n):
    """Convex mix of identity, the n-cycle and a random permutation."""
    w = rng.random(3) + 0.1
    w /= w.sum()
    cycle = np.roll(np.eye(n), 1, axis=1)
    perm = np.eye(n)[rng.permutation(n)]
    return w[0] * np.eye(n) + w[1] * cycle + w[2] * perm


def two_state_exact():
    """Balance equations for [[1/2, 1/2], [1/4, 3/4]] solved in exact arithmetic:
    pi0 / 2 = pi1 / 4 and pi0 + pi1 = 1."""
    pi0 = Fraction(1, 1) / (1 + Fraction(1, 2) / Fraction(1, 4))
    return pi0, 1 - pi0
