"""Pure-Python/numpy fallback for the compiled kernels in ``_ckernels.pyx``."""

from bisect import bisect_right

import numpy as np


def transitivity_violations(rel, limit=1):
    rel = np.asarray(rel, dtype=bool)
    out = []
    if limit <= 0:
        return np.empty((0, 3), dtype=np.intp)
    # cheap global test first: (i, k) reachable in two steps but unrelated
    if not ((rel.astype(np.int64) @ rel.astype(np.int64) > 0) & ~rel).any():
        return np.empty((0, 3), dtype=np.intp)
    for i in range(rel.shape[0]):
        missing = ~rel[i]
        for j in np.flatnonzero(rel[i]):
            for k in np.flatnonzero(rel[j] & missing):
                out.append((i, j, k))
                if len(out) >= limit:
                    return np.array(out, dtype=np.intp)
    return np.array(out, dtype=np.intp).reshape(-1, 3)


def successor_candidates(leq):
    leq = np.asarray(leq, dtype=bool)
    strict = leq & ~leq.T
    # blockers[x, j] counts k with x < k but not j <= k
    blockers = strict.astype(np.int64) @ (~leq).T.astype(np.int64)
    return (strict & (blockers == 0)).astype(np.uint8)


def simulate_path(cum, start, uniforms):
    cum = np.asarray(cum, dtype=float)
    rows = [list(r) for r in cum]
    last = len(rows) - 1
    path = [start]
    s = start
    for u in np.asarray(uniforms, dtype=float).tolist():
        s = min(bisect_right(rows[s], u), last)
        path.append(s)
    return np.array(path, dtype=np.intp)
