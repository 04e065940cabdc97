"""Independent reference implementations used to check the engine.

Deliberately written without any engine types: fuzzy sets are plain lists
of (support, degree) pairs, enumeration is explicit recursion, grouping
goes through a dict keyed by exact value followed by a tolerance merge.
"""
from __future__ import annotations


def oracle_extend(f, args, tol=1e-9):
    """Brute-force lifting of *f* over fuzzy arguments.

    Each argument is either a float (crisp) or a list of (support, degree)
    pairs.  Returns the canonical list of (value, degree) pairs: sorted,
    near-equal values folded together keeping the smallest value and the
    max degree.
    """
    results: dict[float, float] = {}

    def recurse(i, values, degs):
        if i == len(args):
            out = float(f(*values))
            degree = 1.0
            for d in degs:
                if d < degree:
                    degree = d
            if out in results:
                if degree > results[out]:
                    results[out] = degree
            else:
                results[out] = degree
            return
        arg = args[i]
        if isinstance(arg, (int, float)):
            recurse(i + 1, values + [float(arg)], degs)
        else:
            for support, degree in arg:
                recurse(i + 1, values + [support], degs + [degree])

    recurse(0, [], [])

    merged: list[list[float]] = []
    for value in sorted(results):
        degree = results[value]
        if merged and value - merged[-1][0] <= tol:
            if degree > merged[-1][1]:
                merged[-1][1] = degree
        else:
            merged.append([value, degree])
    return [(v, d) for v, d in merged if d > 0.0]
