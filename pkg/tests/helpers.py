"""Independent oracles and fixture loading shared by the test suite.

Everything here is implemented from first principles (BFS, brute force,
itertools enumeration) so it can cross-check the library without reusing
its code paths.
"""

from importlib import resources
from itertools import accumulate, combinations_with_replacement

from syseval.io import parse_model


def load_fixture_text(name: str) -> str:
    ref = resources.files("syseval.fixtures").joinpath(f"{name}.model.json")
    return ref.read_text(encoding="utf-8")


def load_fixture(name: str):
    return parse_model(load_fixture_text(name))


def cum(counts):
    return tuple(accumulate(counts))


def all_count_vectors(k: int, m: int):
    """Every multiset of m items over levels 1..k, as multiplicity vectors."""
    out = []
    for combo in combinations_with_replacement(range(1, k + 1), m):
        counts = [0] * k
        for level in combo:
            counts[level - 1] += 1
        out.append(tuple(counts))
    return sorted(set(out))


def has_contiguous_support(counts) -> bool:
    nz = [i for i, c in enumerate(counts) if c]
    return not nz or nz[-1] - nz[0] + 1 == len(nz)


def all_interval_multisets(l: int, n: int):
    return [c for c in all_count_vectors(l, n) if has_contiguous_support(c)]


def unit_improvements(counts):
    """Single-unit moves from level r+1 to level r (one quality improvement)."""
    for r in range(len(counts) - 1):
        if counts[r + 1] > 0:
            moved = list(counts)
            moved[r + 1] -= 1
            moved[r] += 1
            yield tuple(moved)


def improvement_reachable(a, b) -> bool:
    """True iff `a` is reachable from `b` by a sequence of unit improvements."""
    if a == b:
        return False
    seen = {b}
    frontier = [b]
    while frontier:
        nxt = []
        for cur in frontier:
            for better in unit_improvements(cur):
                if better == a:
                    return True
                if better not in seen:
                    seen.add(better)
                    nxt.append(better)
        frontier = nxt
    return False


def brute_force_covers(points, dominates):
    """Cover pairs straight from the definition: no third point in between."""
    covers = []
    for a in points:
        for b in points:
            if not dominates(a, b):
                continue
            if any(dominates(a, c) and dominates(c, b) for c in points):
                continue
            covers.append((a, b))
    return covers


def brute_force_median(inputs, l: int, n: int):
    """Exhaustive cumulative-L1 total-distance minimizers over valid estimates."""

    def d(a, b):
        return sum(abs(x - y) for x, y in zip(cum(a), cum(b)))

    candidates = all_interval_multisets(l, n)
    totals = {c: sum(d(c, e) for e in inputs) for c in candidates}
    best = min(totals.values())
    return {c for c, t in totals.items() if t == best}, best
