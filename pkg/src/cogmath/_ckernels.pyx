# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors :mod:`cogmath._pykernels` function for function."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def transitivity_violations(const unsigned char[:, ::1] rel, Py_ssize_t limit=1):
    """Return up to ``limit`` triples (i, j, k) with i~j, j~k but not i~k."""
    cdef Py_ssize_t n = rel.shape[0]
    cdef Py_ssize_t i, j, k, found = 0
    # there are at most n**3 triples, so never allocate more than that
    limit = max(0, min(limit, n * n * n))
    out = np.empty((limit, 3), dtype=np.intp)
    cdef Py_ssize_t[:, ::1] o = out
    if limit == 0:
        return out
    for i in range(n):
        for j in range(n):
            if not rel[i, j]:
                continue
            for k in range(n):
                if rel[j, k] and not rel[i, k]:
                    o[found, 0] = i
                    o[found, 1] = j
                    o[found, 2] = k
                    found += 1
                    if found >= limit:
                        return out[:found]
    return out[:found]


def successor_candidates(const unsigned char[:, ::1] leq):
    """cand[x, j] = 1 iff x < j strictly and j <= k for every k > x."""
    cdef Py_ssize_t n = leq.shape[0]
    cdef Py_ssize_t x, j, k
    cdef bint ok
    out = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] c = out
    for x in range(n):
        for j in range(n):
            if not (leq[x, j] and not leq[j, x]):
                continue
            ok = True
            for k in range(n):
                if leq[x, k] and not leq[k, x] and not leq[j, k]:
                    ok = False
                    break
            if ok:
                c[x, j] = 1
    return out


def simulate_path(const double[:, ::1] cum, Py_ssize_t start, const double[::1] uniforms):
    """Walk the chain: next state is the first column whose cumulative row value exceeds u."""
    cdef Py_ssize_t n = cum.shape[0]
    cdef Py_ssize_t steps = uniforms.shape[0]
    cdef Py_ssize_t t, s = start, lo, hi, mid
    cdef double u
    path = np.empty(steps + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] p = path
    p[0] = s
    for t in range(steps):
        u = uniforms[t]
        lo = 0
        hi = n - 1
        while lo < hi:
            mid = (lo + hi) >> 1
            if cum[s, mid] > u:
                hi = mid
            else:
                lo = mid + 1
        s = lo
        p[t + 1] = s
    return path
