"""Canonical 3-uniform hypergraphs with exact combinatorial invariants.

A hypergraph is a vertex count n (vertices are 0..n-1) plus a canonical edge
array: strictly increasing triples, lexicographically sorted, duplicate-free.
All derived data (degrees, incidence index, adjacency) is computed once and
cached; instances are immutable after build and safe to share across threads.

Degree-sum notation: sigma2(H) is the minimum of deg(u)+deg(v) over pairs of
*adjacent* vertices (some edge contains both); it is None for edgeless graphs
because the minimum quantifies over an empty set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Hypergraph3",
    "LinkGraph",
    "DegreeProfile",
    "build",
    "random_hypergraph",
    "read_edge_list",
    "write_edge_list",
    "parse_edge_list",
    "format_edge_list",
]


@dataclass(frozen=True)
class LinkGraph:
    """A 2-graph on a declared vertex universe (a link of some vertex).

    Pairs are stored as sorted 2-tuples inside the universe; no loops.
    """

    universe: tuple[int, ...]
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        uni = set(self.universe)
        for u, v in self.pairs:
            if u == v:
                raise ValueError(f"loop pair ({u},{v}) in link graph")
            if u not in uni or v not in uni:
                raise ValueError(f"pair ({u},{v}) outside link universe")
            if u > v:
                raise ValueError(f"pair ({u},{v}) not sorted")

    @property
    def size(self) -> int:
        return len(self.pairs)


def _as_pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Hypergraph3:
    """Immutable 3-uniform hypergraph in canonical form."""

    n: int
    edges: np.ndarray  # (m, 3) int64, rows strictly increasing, lexsorted

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    # -- cached indices ----------------------------------------------------

    @cached_property
    def degrees(self) -> np.ndarray:
        """Per-vertex degree array; sums to 3*m."""
        return np.bincount(self.edges.ravel(), minlength=self.n)

    @cached_property
    def _incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR (indptr, edge_ids): edges containing each vertex, ids sorted."""
        flat = self.edges.ravel()
        order = np.argsort(flat, kind="stable")
        edge_ids = order // 3
        counts = np.bincount(flat, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, edge_ids.astype(np.int64)

    @cached_property
    def adjacent_pairs(self) -> np.ndarray:
        """(p, 2) array of distinct vertex pairs contained in some edge."""
        e = self.edges
        if e.shape[0] == 0:
            return np.empty((0, 2), dtype=np.int64)
        pairs = np.concatenate([e[:, [0, 1]], e[:, [0, 2]], e[:, [1, 2]]])
        codes = pairs[:, 0] * self.n + pairs[:, 1]
        codes = np.unique(codes)
        return np.stack([codes // self.n, codes % self.n], axis=1)

    @cached_property
    def adjacency_masks(self) -> list[int]:
        """Per-vertex bitmask of adjacent vertices (arbitrary-width ints)."""
        masks = [0] * self.n
        for u, v in self.adjacent_pairs:
            masks[u] |= 1 << int(v)
            masks[v] |= 1 << int(u)
        return masks

    # -- queries -----------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")

    def degree(self, v: int) -> int:
        """Number of edges containing v."""
        self._check_vertex(v)
        return int(self.degrees[v])

    def incident_edge_ids(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        indptr, edge_ids = self._incidence
        return edge_ids[indptr[v] : indptr[v + 1]]

    def codegree(self, u: int, v: int) -> int:
        """|N(u,v)|: number of edges containing both u and v."""
        if u == v:
            raise ValueError("codegree needs two distinct vertices")
        self._check_vertex(u)
        self._check_vertex(v)
        return int(
            np.intersect1d(
                self.incident_edge_ids(u), self.incident_edge_ids(v)
            ).size
        )

    def are_adjacent(self, u: int, v: int) -> bool:
        """True iff some edge contains both u and v."""
        if u == v:
            raise ValueError("adjacency needs two distinct vertices")
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adjacency_masks[u] >> v) & 1)

    def sigma2(self) -> int | None:
        """min deg(u)+deg(v) over adjacent pairs; None if there is no edge."""
        pairs = self.adjacent_pairs
        if pairs.shape[0] == 0:
            return None
        sums = self.degrees[pairs[:, 0]] + self.degrees[pairs[:, 1]]
        return int(sums.min())

    def isolated_vertices(self) -> tuple[int, ...]:
        """Vertices of degree 0, ascending."""
        return tuple(int(v) for v in np.flatnonzero(self.degrees == 0))

    def min_degree(self) -> int:
        return int(self.degrees.min()) if self.n else 0

    def degree_profile(self) -> "DegreeProfile":
        return DegreeProfile(self)

    # -- links -------------------------------------------------------------

    def link(self, v: int, a: Iterable[int]) -> LinkGraph:
        """L_v(A): pairs {u,w} inside A with {u,v,w} an edge."""
        a_set = set(int(x) for x in a)
        self._check_vertex(v)
        if v in a_set:
            raise ValueError("link vertex must not lie in A")
        pairs = set()
        for ei in self.incident_edge_ids(v):
            x, y, z = (int(t) for t in self.edges[ei])
            rest = [t for t in (x, y, z) if t != v]
            if rest[0] in a_set and rest[1] in a_set:
                pairs.add(_as_pair(rest[0], rest[1]))
        return LinkGraph(tuple(sorted(a_set)), frozenset(pairs))

    def link_bipartite(
        self, v: int, a: Iterable[int], b: Iterable[int]
    ) -> LinkGraph:
        """L_v(A,B): pairs {u,w} with u in A, w in B and {u,v,w} an edge."""
        a_set = set(int(x) for x in a)
        b_set = set(int(x) for x in b)
        self._check_vertex(v)
        if a_set & b_set:
            raise ValueError("A and B must be disjoint")
        if v in a_set or v in b_set:
            raise ValueError("link vertex must not lie in A or B")
        pairs = set()
        for ei in self.incident_edge_ids(v):
            x, y, z = (int(t) for t in self.edges[ei])
            rest = [t for t in (x, y, z) if t != v]
            p, q = rest
            if (p in a_set and q in b_set) or (q in a_set and p in b_set):
                pairs.add(_as_pair(p, q))
        return LinkGraph(tuple(sorted(a_set | b_set)), frozenset(pairs))

    # -- independence ------------------------------------------------------

    def independence_number(self) -> tuple[int, tuple[int, ...]]:
        """Exact maximum independent set size plus one witness.

        Independence is adjacency-based: no edge may contain two witness
        vertices. Branch and bound on the adjacency 2-graph with a greedy
        clique-cover upper bound; near-multipartite adjacency graphs (all
        the structured families here) close essentially at the root.
        """
        alpha, mask = _max_independent_set(self.n, self.adjacency_masks)
        witness = tuple(v for v in range(self.n) if (mask >> v) & 1)
        for u, w in itertools.combinations(witness, 2):
            if (self.adjacency_masks[u] >> w) & 1:
                raise AssertionError("independence witness failed validation")
        return alpha, witness

    def is_subgraph_of_h2(self) -> tuple[bool, tuple[int, ...]]:
        """Whether H embeds (same vertex set) into the two-block graph
        H^2_{n,n/3}.

        Equivalent to having an independent set of size n/3+1: those
        vertices can play the small block, every edge meeting it at most
        once. Witness is the placement (truncated to n/3+1 when embeddable).
        """
        if self.n % 3 != 0:
            raise ValueError("embedding target needs n divisible by 3")
        need = self.n // 3 + 1
        alpha, witness = self.independence_number()
        if alpha >= need:
            return True, witness[:need]
        return False, witness

    # -- misc ----------------------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> "Hypergraph3":
        """Induced subgraph on the given vertices, relabeled 0..k-1 in the
        ascending order of the originals."""
        verts = sorted(set(int(v) for v in vertices))
        for v in verts:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(verts)}
        keep = np.isin(self.edges, verts).all(axis=1)
        sub_edges = self.edges[keep]
        if sub_edges.shape[0]:
            remap = np.vectorize(index.__getitem__)(sub_edges)
        else:
            remap = np.empty((0, 3), dtype=np.int64)
        return build(len(verts), remap)

    def edge_set(self) -> set[tuple[int, int, int]]:
        return {tuple(int(x) for x in row) for row in self.edges}

    def has_edge(self, triple: Sequence[int]) -> bool:
        t = tuple(sorted(int(x) for x in triple))
        lo = np.searchsorted(self._edge_codes, _code(t, self.n))
        return lo < self.m and self._edge_codes[lo] == _code(t, self.n)

    @cached_property
    def _edge_codes(self) -> np.ndarray:
        e = self.edges
        return (e[:, 0] * self.n + e[:, 1]) * self.n + e[:, 2]


def _code(t: tuple[int, int, int], n: int) -> int:
    return (t[0] * n + t[1]) * n + t[2]


class DegreeProfile:
    """Vertex and pair degree lookups for one hypergraph."""

    def __init__(self, host: Hypergraph3):
        self._host = host
        self.table = {v: int(d) for v, d in enumerate(host.degrees)}

    def of(self, v: int) -> int:
        return self._host.degree(v)

    def pair(self, u: int, v: int) -> int:
        """deg({u,v}) = |N(u,v)|."""
        return self._host.codegree(u, v)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def build(n: int, triples) -> Hypergraph3:
    """Build a canonical Hypergraph3 from an iterable of vertex triples.

    Triples are sorted internally and deduplicated; vertices must be three
    distinct integers below n.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    arr = np.asarray(list(triples) if not isinstance(triples, np.ndarray) else triples,
                     dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("edges must be triples")
    if arr.size:
        if arr.min() < 0 or arr.max() >= n:
            bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
            raise ValueError(f"vertex out of range in triple {tuple(bad)}")
        arr = np.sort(arr, axis=1)
        if not (np.diff(arr, axis=1) > 0).all():
            bad = arr[(np.diff(arr, axis=1) <= 0).any(axis=1)][0]
            raise ValueError(f"repeated vertex in triple {tuple(bad)}")
        arr = np.unique(arr, axis=0)
    arr.setflags(write=False)
    return Hypergraph3(n=n, edges=arr)


def random_hypergraph(n: int, p: float, seed: int) -> Hypergraph3:
    """Binomial random 3-graph: each of the C(n,3) triples kept with
    probability p, seeded."""
    rng = np.random.default_rng(seed)
    triples = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64)
    if triples.size == 0:
        return build(n, [])
    keep = rng.random(triples.shape[0]) < p
    return build(n, triples[keep])


# ---------------------------------------------------------------------------
# Edge-list interchange format: first line "n m", then m lines "a b c".
# '#' lines and blank lines are ignored on input; the writer emits canonical
# sorted form, with optional trailing comment lines (partition sidecars).
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Hypergraph3:
    rows = []
    header: tuple[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'n m'")
            header = (int(parts[0]), int(parts[1]))
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 vertices")
        rows.append([int(x) for x in parts])
    if header is None:
        raise ValueError("empty edge-list input")
    n, m = header
    if len(rows) != m:
        raise ValueError(f"header announced {m} edges, found {len(rows)}")
    return build(n, rows)


def format_edge_list(h: Hypergraph3, comments: Sequence[str] = ()) -> str:
    lines = [f"{h.n} {h.m}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in h.edges)
    lines.extend(f"# {c}" for c in comments)
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Hypergraph3:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(h: Hypergraph3, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(h, comments))


# ---------------------------------------------------------------------------
# Exact maximum independent set (branch and bound, clique-cover bound)
# ---------------------------------------------------------------------------


def _clique_cover_bound(p_mask: int, adj: list[int]) -> int:
    """Greedy partition of the candidate set into cliques; its size bounds
    the independent set inside (each clique contributes at most one)."""
    rem = p_mask
    k = 0
    while rem:
        v = (rem & -rem).bit_length() - 1
        clique = 1 << v
        cand = rem & adj[v]
        while cand:
            u = (cand & -cand).bit_length() - 1
            clique |= 1 << u
            cand &= adj[u]
        rem &= ~clique
        k += 1
    return k


def _max_independent_set(n: int, adj: list[int]) -> tuple[int, int]:
    if n == 0:
        return 0, 0
    full = (1 << n) - 1

    # greedy seed: scan ascending, take whatever stays independent
    seed_mask = 0
    forbidden = 0
    for v in range(n):
        if not (forbidden >> v) & 1:
            seed_mask |= 1 << v
            forbidden |= adj[v]
    best_size = bin(seed_mask).count("1")
    best_mask = seed_mask

    def expand(p_mask: int, cur_mask: int, cur_size: int) -> None:
        nonlocal best_size, best_mask
        if p_mask == 0:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        if cur_size + _clique_cover_bound(p_mask, adj) <= best_size:
            return
        # pivot on the candidate with most candidate-neighbours
        v_best, d_best = -1, -1
        t = p_mask
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            d = bin(adj[v] & p_mask).count("1")
            if d > d_best:
                v_best, d_best = v, d
        v = v_best
        expand(p_mask & ~adj[v] & ~(1 << v), cur_mask | (1 << v), cur_size + 1)
        expand(p_mask & ~(1 << v), cur_mask, cur_size)

    expand(full, 0, 0)
    return best_size, best_mask
