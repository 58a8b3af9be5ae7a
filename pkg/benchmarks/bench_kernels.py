"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is run on the same inputs under both backends; outputs are
checked for equality before timings are reported.
"""

import argparse
import sys
import timeit

import numpy as np

from cogmath import _backend
from cogmath.markov import cumulative


def chain_relation(n, rng):
    rank = rng.permutation(n)
    return (rank[:, None] <= rank[None, :]).astype(np.uint8)


def noisy_relation(n, rng):
    rel = chain_relation(n, rng)
    rel[rng.integers(n), rng.integers(n)] ^= 1
    return rel


def stochastic(n, rng):
    p = rng.random((n, n))
    return p / p.sum(axis=1, keepdims=True)


def cases(rng):
    yield "transitivity_violations (chain, n=200)", _backend.transitivity_violations, (chain_relation(200, rng), 1)
    yield "transitivity_violations (noisy, n=200, all)", _backend.transitivity_violations, (noisy_relation(200, rng), 10**9)
    yield "successor_candidates (n=200)", _backend.successor_candidates, (chain_relation(200, rng),)
    yield "successor_candidates (n=50)", _backend.successor_candidates, (chain_relation(50, rng),)
    cum = cumulative(stochastic(10, rng))
    yield "simulate_path (10 states, 1e6 steps)", _backend.simulate_path, (cum, 0, rng.random(10**6))


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return list(a) == list(b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = _backend.available()
    if "cython" not in backends:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
    rng = np.random.default_rng(0)
    print(f"{'kernel':48s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for label, fn, fargs in cases(rng):
        times, outputs = {}, {}
        for b in backends:
            _backend.use(b)
            outputs[b] = fn(*fargs)
            times[b] = min(timeit.repeat(lambda: fn(*fargs), number=1, repeat=args.repeat))
        ref = outputs[backends[0]]
        if not all(same(ref, o) for o in outputs.values()):
            raise SystemExit(f"{label}: backends disagree")
        row = f"{label:48s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) == 2:
            row += f"  {times['python'] / times['cython']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
