"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive and separate from the package's
algorithms: plain loops over edge lists, all-subsets scans, and exhaustive
DFS enumeration. These are the reference answers the fast paths must match.
"""

from __future__ import annotations

import itertools


def naive_degree(edges, v) -> int:
    return sum(1 for e in edges if v in e)


def naive_codegree(edges, u, v) -> int:
    return sum(1 for e in edges if u in e and v in e)


def naive_adjacent(edges, u, v) -> bool:
    return naive_codegree(edges, u, v) > 0


def naive_sigma2(n, edges):
    best = None
    for u in range(n):
        for v in range(u + 1, n):
            if naive_adjacent(edges, u, v):
                s = naive_degree(edges, u) + naive_degree(edges, v)
                if best is None or s < best:
                    best = s
    return best


def naive_independence(n, edges) -> tuple[int, tuple[int, ...]]:
    """Largest vertex set with no two members sharing an edge, by scanning
    all subsets from the top size down."""
    for size in range(n, 0, -1):
        for sub in itertools.combinations(range(n), size):
            ok = True
            for u, v in itertools.combinations(sub, 2):
                if naive_adjacent(edges, u, v):
                    ok = False
                    break
            if ok:
                return size, sub
    return 0, ()


def naive_max_matching(edges) -> int:
    """Plain DFS over index-increasing families of pairwise-disjoint edges."""
    rows = [tuple(e) for e in edges]
    best = 0

    def rec(start: int, used: set, k: int) -> None:
        nonlocal best
        best = max(best, k)
        for j in range(start, len(rows)):
            e = rows[j]
            if used.isdisjoint(e):
                rec(j + 1, used | set(e), k + 1)

    rec(0, set(), 0)
    return best


def naive_has_pm(n, edges) -> bool:
    return n % 3 == 0 and naive_max_matching(edges) == n // 3


def bip_pm_by_permutation(pairs, left, right) -> bool:
    """Perfect matching in a bipartite graph by trying all bijections."""
    pairs = {tuple(sorted(p)) for p in pairs}
    for perm in itertools.permutations(right):
        if all(tuple(sorted((l, r))) in pairs for l, r in zip(left, perm)):
            return True
    return False


def naive_rainbow_exists(graph_pairs: list, want: int) -> bool:
    """All ways of picking one edge from each of ``want`` graphs."""
    if want > len(graph_pairs):
        return False
    for subset in itertools.combinations(range(len(graph_pairs)), want):
        for combo in itertools.product(*(sorted(graph_pairs[i]) for i in subset)):
            verts = [v for e in combo for v in e]
            if len(set(verts)) == 2 * want:
                return True
    return False
