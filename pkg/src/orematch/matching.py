"""Exact matching computations for 3-uniform hypergraphs.

Strategy split for the perfect-matching decision: a deterministic greedy
first-fit pass (fast path on dense hosts, output always verified), then the
subset-DP kernel for n <= 24, branch and bound beyond. Maximum matching is
branch and bound on the lowest-degree uncovered vertex; pruning combines a
counting bound with a certified fractional-vertex-cover bound obtained from
an LP solve at the root (the dual is rescaled so the bound is sound
regardless of floating-point slack).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hypergraph import Hypergraph3, LinkGraph

__all__ = [
    "MatchingCertificate",
    "has_perfect_matching",
    "max_matching",
    "max_matching_dp_size",
    "has_pm_3partite",
    "bipartite_pm",
    "rainbow_matching",
]

DP_VERTEX_LIMIT = 24  # subset-DP path; 18/21-vertex absorbing checks stay below


@dataclass(frozen=True)
class MatchingCertificate:
    """A verified set of pairwise-disjoint edges of a host graph."""

    edges: tuple[tuple[int, int, int], ...]
    size: int
    covered: frozenset[int]
    perfect: bool

    @classmethod
    def from_edges(cls, host: Hypergraph3, edges) -> "MatchingCertificate":
        rows = tuple(tuple(sorted(int(v) for v in e)) for e in edges)
        cert = cls(
            edges=tuple(sorted(rows)),
            size=len(rows),
            covered=frozenset(v for e in rows for v in e),
            perfect=len(rows) * 3 == host.n,
        )
        cert.validate(host)
        return cert

    def validate(self, host: Hypergraph3) -> None:
        if len(self.covered) != 3 * len(self.edges):
            raise AssertionError("matching edges are not pairwise disjoint")
        for e in self.edges:
            if not host.has_edge(e):
                raise AssertionError(f"edge {e} not present in host graph")
        if self.perfect != (self.covered == frozenset(range(host.n))):
            raise AssertionError("perfect flag inconsistent with coverage")


def _kernel_arrays(h: Hypergraph3):
    """Edge bitmasks plus per-vertex CSR of incident edge indices."""
    e = h.edges
    masks = (
        np.left_shift(np.int64(1), e[:, 0])
        | np.left_shift(np.int64(1), e[:, 1])
        | np.left_shift(np.int64(1), e[:, 2])
    )
    indptr, edge_ids = h._incidence
    return masks.astype(np.int64), indptr.astype(np.int64), edge_ids.astype(np.int64)


def _greedy_first_fit(h: Hypergraph3) -> list[tuple[int, int, int]]:
    """Deterministic first-fit over canonical edge order."""
    covered = 0
    out = []
    for a, b, c in h.edges:
        em = (1 << int(a)) | (1 << int(b)) | (1 << int(c))
        if covered & em == 0:
            covered |= em
            out.append((int(a), int(b), int(c)))
    return out


def has_perfect_matching(h: Hypergraph3) -> MatchingCertificate | None:
    """Exact perfect-matching decision with a certificate, or None."""
    if h.n % 3 != 0:
        raise ValueError("perfect matching needs n divisible by 3")
    if h.n == 0:
        return MatchingCertificate.from_edges(h, [])
    if h.m < h.n // 3 or h.isolated_vertices():
        return None
    greedy = _greedy_first_fit(h)
    if len(greedy) * 3 == h.n:
        return MatchingCertificate.from_edges(h, greedy)
    if h.n <= DP_VERTEX_LIMIT:
        edge_masks, indptr, edge_ids = _kernel_arrays(h)
        found, parent = _kernels.pm_search(h.n, edge_masks, indptr, edge_ids)
        if not found:
            return None
        mask = (1 << h.n) - 1
        rows = []
        while mask:
            ei = int(parent[mask])
            rows.append(tuple(int(v) for v in h.edges[ei]))
            mask &= ~int(edge_masks[ei])
        return MatchingCertificate.from_edges(h, rows)
    cert = max_matching(h, target=h.n // 3)
    return cert if cert.perfect else None


def max_matching_dp_size(h: Hypergraph3) -> int:
    """Maximum matching size via bottom-up subset DP (n <= 24)."""
    if h.n > DP_VERTEX_LIMIT:
        raise ValueError(f"subset DP limited to n <= {DP_VERTEX_LIMIT}")
    if h.m == 0:
        return 0
    edge_masks, indptr, edge_ids = _kernel_arrays(h)
    return int(_kernels.max_matching_dp(h.n, edge_masks, indptr, edge_ids))


def _fractional_cover_bound(h: Hypergraph3) -> int | None:
    """Certified matching upper bound: a nonnegative vertex weighting with
    every edge summing to >= 1 bounds any matching by its total weight. The
    LP dual is rescaled by its true minimum edge sum, so solver slack cannot
    produce an unsound bound."""
    if h.m == 0:
        return 0
    try:
        from scipy.optimize import linprog
        from scipy.sparse import csr_matrix
    except ImportError:  # pragma: no cover - scipy is a declared dependency
        return None
    m, n = h.m, h.n
    rows = np.repeat(np.arange(m), 3)
    cols = h.edges.ravel()
    a_ub = csr_matrix((-np.ones(3 * m), (rows, cols)), shape=(m, n))
    res = linprog(
        c=np.ones(n),
        A_ub=a_ub,
        b_ub=-np.ones(m),
        bounds=(0, None),
        method="highs",
    )
    if not res.success:
        return None
    y = np.maximum(res.x, 0.0)
    edge_sums = y[h.edges].sum(axis=1)
    mn = float(edge_sums.min())
    if mn <= 1e-9:
        return None
    return int(np.floor(float(y.sum()) / mn + 1e-9))


def max_matching(h: Hypergraph3, target: int | None = None) -> MatchingCertificate:
    """Exact maximum matching by branch and bound.

    Branches on the uncovered vertex of minimum positive degree, edges in
    canonical order (deterministic witnesses). ``target`` allows early exit
    once a matching of that size is found (used by the perfect-matching
    path for n beyond the DP limit).
    """
    if h.m == 0:
        return MatchingCertificate.from_edges(h, [])
    edge_rows = [tuple(int(v) for v in row) for row in h.edges]
    edge_masks = [
        (1 << a) | (1 << b) | (1 << c) for a, b, c in edge_rows
    ]
    m = len(edge_rows)

    best_edges = _greedy_first_fit(h)
    best_size = len(best_edges)

    hard_cap = h.n // 3 if target is None else min(target, h.n // 3)
    ub = _fractional_cover_bound(h)
    global_ub = hard_cap if ub is None else min(ub, hard_cap)

    if best_size >= global_ub:
        return MatchingCertificate.from_edges(h, best_edges)

    all_ids = list(range(m))

    def search(avail: list[int], covered: int, chosen: list[int]) -> bool:
        """Returns True when the search can stop globally (optimum proven)."""
        nonlocal best_size, best_edges
        if len(chosen) > best_size:
            best_size = len(chosen)
            best_edges = [edge_rows[i] for i in chosen]
            if best_size >= global_ub:
                return True
        if not avail:
            return False
        touched = 0
        for ei in avail:
            touched |= edge_masks[ei]
        if len(chosen) + bin(touched).count("1") // 3 <= best_size:
            return False
        # lowest-degree vertex among those still coverable
        counts: dict[int, int] = {}
        for ei in avail:
            for v in edge_rows[ei]:
                if not (covered >> v) & 1:
                    counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (counts[u], u))
        v_edges = [ei for ei in avail if v in edge_rows[ei]]
        for ei in v_edges:
            em = edge_masks[ei]
            sub = [ej for ej in avail if edge_masks[ej] & em == 0]
            chosen.append(ei)
            if search(sub, covered | em, chosen):
                chosen.pop()
                return True
            chosen.pop()
        # v left unmatched
        rest = [ej for ej in avail if v not in edge_rows[ej]]
        return search(rest, covered | (1 << v), chosen)

    search(all_ids, 0, [])
    return MatchingCertificate.from_edges(h, best_edges)


# ---------------------------------------------------------------------------
# 3-partite perfect matchings (tiny balanced instances)
# ---------------------------------------------------------------------------


def has_pm_3partite(cells, p: int) -> bool:
    """Perfect-matching decision for a p-balanced 3-partite 3-graph given as
    a set of allowed (i,j,k) cells; exact by enumerating all p!*p! candidate
    matchings. Limited to p <= 4."""
    if p > 4:
        raise ValueError("permutation enumeration limited to p <= 4")
    if p == 0:
        return True
    cell_set = {tuple(c) for c in cells}
    for sigma in itertools.permutations(range(p)):
        for tau in itertools.permutations(range(p)):
            if all((i, sigma[i], tau[i]) in cell_set for i in range(p)):
                return True
    return False


# ---------------------------------------------------------------------------
# Bipartite perfect matchings on links
# ---------------------------------------------------------------------------


def bipartite_pm(link: LinkGraph, sides: tuple) -> bool:
    """Hall/augmenting-path perfect-matching decision on a bipartite link."""
    side_a, side_b = (list(sides[0]), list(sides[1]))
    if len(side_a) != len(side_b):
        raise ValueError("bipartition sides must have equal size")
    set_a, set_b = set(side_a), set(side_b)
    if set_a & set_b:
        raise ValueError("bipartition sides must be disjoint")
    adj: dict[int, list[int]] = {a: [] for a in side_a}
    for u, v in sorted(link.pairs):
        if u in set_a and v in set_b:
            adj[u].append(v)
        elif v in set_a and u in set_b:
            adj[v].append(u)
        else:
            raise ValueError(f"pair ({u},{v}) does not respect the bipartition")
    match_of: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        for b in adj[a]:
            if b in seen:
                continue
            seen.add(b)
            if b not in match_of or augment(match_of[b], seen):
                match_of[b] = a
                return True
        return False

    matched = 0
    for a in side_a:
        if augment(a, set()):
            matched += 1
    return matched == len(side_a)


# ---------------------------------------------------------------------------
# Rainbow matchings across several links on a common universe
# ---------------------------------------------------------------------------


def rainbow_matching(
    graphs: list[LinkGraph], want: int
) -> list[tuple[int, tuple[int, int]]] | None:
    """Pairwise-disjoint pairs, one from each of ``want`` distinct graphs.

    Exact backtracking (intended for the tiny universes links live on).
    Returns [(graph_index, pair), ...] or None when no rainbow matching of
    the requested size exists.
    """
    if want > len(graphs):
        raise ValueError("cannot pick more edges than there are graphs")
    order = sorted(range(len(graphs)), key=lambda i: len(graphs[i].pairs))

    def extend(pos: int, used: set[int], picked: list) -> bool:
        if len(picked) == want:
            return True
        if len(picked) + (len(order) - pos) < want:
            return False
        if pos == len(order):
            return False
        gi = order[pos]
        for u, v in sorted(graphs[gi].pairs):
            if u not in used and v not in used:
                picked.append((gi, (u, v)))
                if extend(pos + 1, used | {u, v}, picked):
                    return True
                picked.pop()
        return extend(pos + 1, used, picked)

    picked: list[tuple[int, tuple[int, int]]] = []
    if extend(0, set(), picked):
        return sorted(picked)
    return None
