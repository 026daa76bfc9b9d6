"""Exhaustive and randomized verification of the finite structural lemmas.

Every verifier returns a LemmaVerdict: the universe it searched, the bound it
checked, the maximum left-hand side observed with witnesses, and any
counterexamples found (always expected empty). Witnesses are re-validated
against the lemma hypotheses by an independent pure-Python re-implementation
before a verdict is emitted; a mismatch with the kernel is a hard error.

Verified facts, at a glance:

* bipartite-fact    -- every balanced bipartite graph on 3+3 vertices with
                       >= 7 edges has a perfect matching; the 6-edge and
                       5-edge exceptions form one and two isomorphism
                       classes (B033; B023 and B113).
* kpartite-16       -- a 3-balanced 3-partite 3-graph whose designated
                       vertices v^1, v^2, v^3 never share an edge has at
                       most 16 edges if it has no perfect matching.
* weighted-20       -- same universe: 2 d(v^3) + d(u_1^3) + d(u_2^3) <= 20
                       for every no-PM graph.
* aharoni-howard    -- an n-balanced 3-partite edge family with no s
                       disjoint edges has at most (s-1) n^2 edges.
* intersect-6n      -- if every G1 edge meets every G2 and G3 edge, combined
                       degrees over any 3 vertices total at most 6(n-1).
* intersect-3n      -- pairwise cross-intersecting triples: at most 3(n+1).
* ab-6a / ab-8a     -- the two-block refinements on A (size a) and B (size
                       b) bounding deg(u1)+deg(u2)+w*deg(v1) summed over
                       three graphs by max{6a+2, 5a+2b+2} (w = 1) and
                       max{8a+2, 6a+2b+4} (w = 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _kernels
from .matching import has_pm_3partite

__all__ = [
    "LemmaVerdict",
    "TriGraphConfig",
    "DEFAULT_SEED",
    "DEFAULT_SAMPLES",
    "LEMMA_IDS",
    "verify_bipartite_fact",
    "verify_kpartite_nopm_bound",
    "verify_weighted_degree_bound",
    "verify_aharoni_howard",
    "verify_intersecting_bound_6n",
    "verify_intersecting_bound_3n",
    "verify_ab_bound_max6a",
    "verify_ab_bound_max8a",
    "run_lemma",
]

DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 10**6

LEMMA_IDS = (
    "bipartite-fact",
    "kpartite-16",
    "weighted-20",
    "aharoni-howard",
    "intersect-6n",
    "intersect-3n",
    "ab-6a",
    "ab-8a",
)


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: str
    universe: str
    universe_size: int
    mode: str  # "exhaustive" | "randomized"
    bound: int
    max_lhs: int
    witnesses: tuple = ()
    counterexamples: tuple = ()
    samples: int | None = None
    seed: int | None = None
    params: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return len(self.counterexamples) == 0

    def as_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "universe": self.universe,
            "universe_size": self.universe_size,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "params": self.params,
            "bound": self.bound,
            "max_lhs": self.max_lhs,
            "witnesses": list(self.witnesses),
            "counterexamples": list(self.counterexamples),
            "passed": self.passed,
            "extra": self.extra,
        }


@dataclass(frozen=True)
class TriGraphConfig:
    """Three 2-graphs on a shared vertex universe, optionally split A|B."""

    g1: frozenset[tuple[int, int]]
    g2: frozenset[tuple[int, int]]
    g3: frozenset[tuple[int, int]]
    n: int
    ab_sizes: tuple[int, int] | None = None

    def graphs(self):
        return (self.g1, self.g2, self.g3)

    def as_dict(self) -> dict:
        d = {
            "n": self.n,
            "g1": sorted(map(list, self.g1)),
            "g2": sorted(map(list, self.g2)),
            "g3": sorted(map(list, self.g3)),
        }
        if self.ab_sizes is not None:
            d["a"], d["b"] = self.ab_sizes
        return d


def _meets(e: tuple[int, int], f: tuple[int, int]) -> bool:
    return e[0] in f or e[1] in f


def _degree(g: frozenset[tuple[int, int]], v: int) -> int:
    return sum(1 for e in g if v in e)


# ---------------------------------------------------------------------------
# Balanced bipartite graphs on 3+3 vertices
# ---------------------------------------------------------------------------

_PERMS3 = list(itertools.permutations(range(3)))


def _bip_has_pm(code: int) -> bool:
    return any(
        all((code >> (3 * i + sigma[i])) & 1 for i in range(3))
        for sigma in _PERMS3
    )


def _bip_canonical(code: int) -> int:
    best = None
    for swap in (False, True):
        for sl in _PERMS3:
            for sr in _PERMS3:
                out = 0
                for i in range(3):
                    for j in range(3):
                        if (code >> (3 * i + j)) & 1:
                            a, bb = sl[i], sr[j]
                            if swap:
                                a, bb = bb, a
                            out |= 1 << (3 * a + bb)
                if best is None or out < best:
                    best = out
    return best


def _bip_degrees(code: int) -> tuple[list[int], list[int]]:
    left = [bin((code >> (3 * i)) & 0b111).count("1") for i in range(3)]
    right = [
        sum((code >> (3 * i + j)) & 1 for i in range(3)) for j in range(3)
    ]
    return left, right


def _bip_class_name(code: int) -> str:
    left, right = _bip_degrees(code)
    seq = min(sorted(left), sorted(right))
    return "B" + "".join(str(d) for d in seq)


def verify_bipartite_fact() -> LemmaVerdict:
    """Enumerate all 512 balanced bipartite graphs on 3+3 vertices and check
    the perfect-matching classification of the 5- and 6-edge exceptions."""
    by_edges_nopm: dict[int, dict[int, list[int]]] = {}
    scanned = 0
    counterexamples = []
    max_edges_nopm = -1
    for code in range(512):
        scanned += 1
        e = bin(code).count("1")
        if _bip_has_pm(code):
            continue
        if e >= 7:
            counterexamples.append(
                {"edges": e, "bits": code, "reason": ">=7 edges but no PM"}
            )
            continue
        max_edges_nopm = max(max_edges_nopm, e)
        by_edges_nopm.setdefault(e, {}).setdefault(_bip_canonical(code), []).append(code)
    assert scanned == 512

    classes = {}
    for e, canon_map in sorted(by_edges_nopm.items()):
        for canon, members in sorted(canon_map.items()):
            name = _bip_class_name(canon)
            left, right = _bip_degrees(canon)
            rep_pairs = sorted(
                (i, 3 + j)
                for i in range(3)
                for j in range(3)
                if (canon >> (3 * i + j)) & 1
            )
            classes.setdefault(name, {
                "edges": e,
                "canonical_bits": canon,
                "left_degrees": sorted(left),
                "right_degrees": sorted(right),
                "labeled_count": len(members),
                "representative_pairs": [list(p) for p in rep_pairs],
            })
    six_classes = set(by_edges_nopm.get(6, {}))
    five_classes = set(by_edges_nopm.get(5, {}))
    if len(six_classes) != 1:
        counterexamples.append(
            {"reason": f"6-edge non-PM graphs split into {len(six_classes)} classes"}
        )
    if len(five_classes) != 2:
        counterexamples.append(
            {"reason": f"5-edge non-PM graphs split into {len(five_classes)} classes"}
        )
    witnesses = [
        {"class": name, **info} for name, info in sorted(classes.items())
        if info["edges"] == max_edges_nopm
    ]
    return LemmaVerdict(
        lemma_id="bipartite-fact",
        universe="all 2^9 balanced bipartite graphs on 3+3 vertices",
        universe_size=512,
        mode="exhaustive",
        bound=6,
        max_lhs=max_edges_nopm,
        witnesses=tuple(witnesses),
        counterexamples=tuple(counterexamples),
        extra={"classes": classes},
    )


# ---------------------------------------------------------------------------
# The 3x3x3 partite universe with designated vertices v^1, v^2, v^3
# ---------------------------------------------------------------------------

# element index 2 of each part is its designated vertex
_CELLS = [
    (i, j, k)
    for i in range(3)
    for j in range(3)
    for k in range(3)
    if (i == 2) + (j == 2) + (k == 2) <= 1
]
_CELL_INDEX = {c: idx for idx, c in enumerate(_CELLS)}


def _grid_pm_masks() -> np.ndarray:
    masks = []
    for sigma in _PERMS3:
        for tau in _PERMS3:
            cells = [(i, sigma[i], tau[i]) for i in range(3)]
            if all(c in _CELL_INDEX for c in cells):
                masks.append(sum(1 << _CELL_INDEX[c] for c in cells))
    return np.array(sorted(masks), dtype=np.int64)


def _weight_tables(weights: list[int], lo_bits: int) -> tuple[np.ndarray, np.ndarray]:
    n = len(weights)
    lo = np.zeros(1 << lo_bits, dtype=np.int64)
    hi = np.zeros(1 << (n - lo_bits), dtype=np.int64)
    for mask in range(1, 1 << lo_bits):
        low = mask & -mask
        lo[mask] = lo[mask ^ low] + weights[low.bit_length() - 1]
    for mask in range(1, 1 << (n - lo_bits)):
        low = mask & -mask
        hi[mask] = hi[mask ^ low] + weights[lo_bits + low.bit_length() - 1]
    return lo, hi


def _decode_cells(mask: int) -> list[tuple[int, int, int]]:
    return [c for idx, c in enumerate(_CELLS) if (mask >> idx) & 1]


def _grid_scan(lemma_id: str, weights: list[int], bound: int) -> LemmaVerdict:
    n_bits = len(_CELLS)
    lo_bits = 10
    pm_masks = _grid_pm_masks()
    w_lo, w_hi = _weight_tables(weights, lo_bits)
    best, best_mask, n_best, n_nopm, n_cex, first_cex = _kernels.scan_nopm_max(
        n_bits, lo_bits, pm_masks, w_lo, w_hi, bound
    )
    # double-entry validation of the witness via the independent PM checker
    cells = _decode_cells(int(best_mask))
    if has_pm_3partite(cells, 3):
        raise AssertionError("scan witness unexpectedly has a perfect matching")
    recomputed = sum(weights[_CELL_INDEX[c]] for c in cells)
    if recomputed != int(best):
        raise AssertionError("scan witness value disagrees with recomputation")
    witnesses = [{
        "cells": [list(c) for c in cells],
        "value": int(best),
        "attained_by": int(n_best),
    }]
    counterexamples = []
    if n_cex:
        counterexamples.append({
            "count": int(n_cex),
            "cells": [list(c) for c in _decode_cells(int(first_cex))],
        })
    return LemmaVerdict(
        lemma_id=lemma_id,
        universe="all subsets of the 20 admissible cells of the 3x3x3 grid",
        universe_size=1 << n_bits,
        mode="exhaustive",
        bound=bound,
        max_lhs=int(best),
        witnesses=tuple(witnesses),
        counterexamples=tuple(counterexamples),
        extra={"no_pm_graphs": int(n_nopm), "pm_candidates": int(pm_masks.size)},
    )


def verify_kpartite_nopm_bound() -> LemmaVerdict:
    """Edge-count bound 2(k-1)^k = 16 at k=3 over every no-PM graph."""
    return _grid_scan("kpartite-16", [1] * len(_CELLS), 16)


def verify_weighted_degree_bound() -> LemmaVerdict:
    """Weighted bound 2 d(v^3) + d(u_1^3) + d(u_2^3) <= 20; each cell holds
    exactly one third-part vertex, so the LHS is a cell weighting."""
    weights = [2 if c[2] == 2 else 1 for c in _CELLS]
    return _grid_scan("weighted-20", weights, 20)


# ---------------------------------------------------------------------------
# Balanced 3-partite families without s disjoint edges
# ---------------------------------------------------------------------------


def _disjoint_cells(c: tuple[int, int, int], d: tuple[int, int, int]) -> bool:
    return c[0] != d[0] and c[1] != d[1] and c[2] != d[2]


def _family_matching_number(cells: list[tuple[int, int, int]], cap: int) -> int:
    best = 0

    def extend(start: int, chosen: list[int]) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if best >= cap:
            return
        for i in range(start, len(cells)):
            if all(_disjoint_cells(cells[i], cells[j]) for j in chosen):
                chosen.append(i)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    return best


def verify_aharoni_howard(
    n: int,
    s: int,
    mode: str = "exhaustive",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LemmaVerdict:
    """Families of cells of the n-balanced 3-partite grid with no s disjoint
    cells have size at most (s-1)n^2. Exhaustive over all 2^(n^3) families
    for n <= 2; randomized greedy maximization (s = 2) for n = 3."""
    bound = (s - 1) * n * n
    if mode == "exhaustive":
        if n > 2:
            raise ValueError("exhaustive mode limited to n <= 2 (2^(n^3) universe)")
        cells = list(itertools.product(range(n), repeat=3))
        total = 1 << len(cells)
        best, best_mask = -1, 0
        counterexamples = []
        scanned = 0
        for mask in range(total):
            scanned += 1
            fam = [cells[i] for i in range(len(cells)) if (mask >> i) & 1]
            if _family_matching_number(fam, s) >= s:
                continue
            if len(fam) > best:
                best, best_mask = len(fam), mask
            if len(fam) > bound:
                counterexamples.append(
                    {"cells": [list(c) for c in fam], "size": len(fam)}
                )
        assert scanned == total
        fam = [cells[i] for i in range(len(cells)) if (best_mask >> i) & 1]
        assert _family_matching_number(fam, s) < s
        return LemmaVerdict(
            lemma_id="aharoni-howard",
            universe=f"all 2^{len(cells)} families of {n}x{n}x{n} cells",
            universe_size=total,
            mode="exhaustive",
            bound=bound,
            max_lhs=best,
            witnesses=({"cells": [list(c) for c in fam], "size": best},),
            counterexamples=tuple(counterexamples),
            params={"n": n, "s": s},
        )

    if n != 3 or s != 2:
        raise ValueError("randomized mode implemented for n=3, s=2")
    cells = list(itertools.product(range(3), repeat=3))
    compat = np.zeros(27, dtype=np.int64)
    for i, c in enumerate(cells):
        for j, d in enumerate(cells):
            if not _disjoint_cells(c, d):
                compat[i] |= 1 << j
    best, best_fam, n_cex, first_cex = _kernels.sample_intersecting_family(
        compat, samples, seed, bound
    )
    fam = [cells[i] for i in range(27) if (int(best_fam) >> i) & 1]
    assert _family_matching_number(fam, s) < s
    assert len(fam) == int(best)
    counterexamples = ()
    if n_cex:
        cex_fam = [cells[i] for i in range(27) if (int(first_cex) >> i) & 1]
        counterexamples = (
            {"count": int(n_cex), "cells": [list(c) for c in cex_fam]},
        )
    return LemmaVerdict(
        lemma_id="aharoni-howard",
        universe="maximal pairwise-intersecting families of 3x3x3 cells",
        universe_size=samples,
        mode="randomized",
        bound=bound,
        max_lhs=int(best),
        witnesses=({"cells": [list(c) for c in fam], "size": int(best)},),
        counterexamples=counterexamples,
        samples=samples,
        seed=seed,
        params={"n": n, "s": s},
    )


# ---------------------------------------------------------------------------
# Intersecting triple-graph lemmas on a common vertex set [n]
# ---------------------------------------------------------------------------


def _kn_edges(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def check_intersect_hypotheses(config: TriGraphConfig, pairwise: bool) -> bool:
    """Pure-Python hypothesis predicate (the double-entry check)."""
    g1, g2, g3 = config.graphs()
    for e in g1:
        for f in itertools.chain(g2, g3):
            if not _meets(e, f):
                return False
    if pairwise:
        for f2 in g2:
            for f3 in g3:
                if not _meets(f2, f3):
                    return False
    return True


def intersect_lhs(config: TriGraphConfig) -> int:
    """max over 3-sets A of the combined degree sum."""
    totals = sorted(
        (
            _degree(config.g1, v) + _degree(config.g2, v) + _degree(config.g3, v)
            for v in range(config.n)
        ),
        reverse=True,
    )
    return sum(totals[:3])


def _decode_tri(n: int, masks: tuple[int, int, int],
                edges: list[tuple[int, int]]) -> TriGraphConfig:
    def dec(mask: int) -> frozenset:
        return frozenset(e for i, e in enumerate(edges) if (mask >> i) & 1)

    return TriGraphConfig(dec(masks[0]), dec(masks[1]), dec(masks[2]), n)


def _intersect_probes(n: int, pairwise: bool) -> list[TriGraphConfig]:
    """Structured configurations near the extremes (stars, triangles,
    one-edge books); each is hypothesis-checked before use."""
    star = frozenset((0, v) for v in range(1, n))
    probes = [TriGraphConfig(star, star, star, n)]
    if n >= 3:
        tri = frozenset(((0, 1), (0, 2), (1, 2)))
        probes.append(TriGraphConfig(tri, tri, tri, n))
    if not pairwise:
        book = frozenset(
            tuple(sorted((u, v)))
            for u in (0, 1)
            for v in range(n)
            if v != u
        )
        probes.append(TriGraphConfig(frozenset({(0, 1)}), book, book, n))
    return [p for p in probes if check_intersect_hypotheses(p, pairwise)]


def _verify_intersect(lemma_id: str, n: int, pairwise: bool, bound: int,
                      mode: str, samples: int, seed: int) -> LemmaVerdict:
    edges = _kn_edges(n)
    if mode == "exhaustive":
        if pairwise or n != 4:
            raise ValueError("exhaustive mode is the n=4 one-sided universe")
        dis = [
            sum(1 << j for j, f in enumerate(edges) if not _meets(e, f))
            for e in edges
        ]
        union_dis = np.zeros(64, dtype=np.int64)
        for g in range(64):
            u = 0
            for i in range(6):
                if (g >> i) & 1:
                    u |= dis[i]
            union_dis[g] = u
        deg_table = np.zeros(64 * 4, dtype=np.int64)
        for g in range(64):
            for v in range(4):
                deg_table[g * 4 + v] = sum(
                    1 for i, e in enumerate(edges) if (g >> i) & 1 and v in e
                )
        best, bg1, bg2, bg3, n_ok, n_cex, cg1, cg2, cg3 = _kernels.scan_intersect4(
            union_dis, deg_table, bound
        )
        universe_size = 64 ** 3
        universe = "all (2^6)^3 graph triples on 4 vertices"
        extra = {"hypothesis_satisfying": int(n_ok)}
        samples_out = None
    else:
        inc = np.zeros(n, dtype=np.int64)
        for i, e in enumerate(edges):
            inc[e[0]] |= 1 << i
            inc[e[1]] |= 1 << i
        dis = np.array(
            [
                sum(1 << j for j, f in enumerate(edges) if not _meets(e, f))
                for e in edges
            ],
            dtype=np.int64,
        )
        best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3 = _kernels.sample_intersect(
            n, len(edges), inc, dis, pairwise, samples, seed, bound
        )
        universe_size = samples
        universe = f"random maximal hypothesis-satisfying triples on {n} vertices"
        extra = {}
        samples_out = samples

    witness = _decode_tri(n, (int(bg1), int(bg2), int(bg3)), edges)
    if not check_intersect_hypotheses(witness, pairwise):
        raise AssertionError("witness fails independent hypothesis re-check")
    if intersect_lhs(witness) != int(best):
        raise AssertionError("witness LHS disagrees with kernel value")
    max_lhs = int(best)
    witnesses = [witness.as_dict() | {"value": int(best)}]

    counterexamples = []
    if n_cex:
        cex = _decode_tri(n, (int(cg1), int(cg2), int(cg3)), edges)
        if not check_intersect_hypotheses(cex, pairwise):
            raise AssertionError("counterexample fails hypothesis re-check")
        counterexamples.append(
            cex.as_dict() | {"value": intersect_lhs(cex), "count": int(n_cex)}
        )

    for probe in _intersect_probes(n, pairwise):
        val = intersect_lhs(probe)
        if val > max_lhs:
            max_lhs = val
            witnesses = [probe.as_dict() | {"value": val, "probe": True}]
        if val > bound:
            counterexamples.append(
                probe.as_dict() | {"value": val, "probe": True}
            )

    return LemmaVerdict(
        lemma_id=lemma_id,
        universe=universe,
        universe_size=universe_size,
        mode=mode,
        bound=bound,
        max_lhs=max_lhs,
        witnesses=tuple(witnesses),
        counterexamples=tuple(counterexamples),
        samples=samples_out,
        seed=None if mode == "exhaustive" else seed,
        params={"n": n},
        extra=extra,
    )


def verify_intersecting_bound_6n(
    n: int,
    mode: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LemmaVerdict:
    """One-sided intersecting hypothesis, bound 6(n-1); n >= 4."""
    if n < 4:
        raise ValueError("the one-sided bound needs n >= 4")
    if mode is None:
        mode = "exhaustive" if n == 4 else "randomized"
    return _verify_intersect("intersect-6n", n, False, 6 * (n - 1), mode,
                             samples, seed)


def verify_intersecting_bound_3n(
    n: int,
    mode: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LemmaVerdict:
    """Pairwise intersecting hypothesis, bound 3(n+1); n >= 5."""
    if n < 5:
        raise ValueError("the pairwise bound needs n >= 5")
    if mode is None:
        mode = "randomized"
    return _verify_intersect("intersect-3n", n, True, 3 * (n + 1), mode,
                             samples, seed)


# ---------------------------------------------------------------------------
# Two-block (A, B) lemmas
# ---------------------------------------------------------------------------


def _ab_universe(a: int, b: int):
    """Edge universes allowed by the structural hypotheses: G1 inside A,
    G2/G3 meeting A. Returns (inner_edges, meets_edges, bmask)."""
    inner = list(itertools.combinations(range(a), 2))
    cross = [(p, q) for p in range(a) for q in range(a, a + b)]
    meets = sorted(inner + cross)
    bmask = 0
    for i, (p, q) in enumerate(meets):
        if q >= a:
            bmask |= 1 << i
    return inner, meets, bmask


def _ab_weight(pair: tuple[int, int], a: int, v_weight: int) -> int:
    w = 0
    for v in pair:
        if v in (0, 1):
            w += 1
        elif v == a:
            w += v_weight
    return w


def check_ab_hypotheses(config: TriGraphConfig) -> bool:
    """Independent re-check of all four A/B hypotheses."""
    assert config.ab_sizes is not None
    a, b = config.ab_sizes
    g1, g2, g3 = config.graphs()
    if any(v >= a for e in g1 for v in e):
        return False  # B vertices must be isolated in G1
    for g in (g2, g3):
        for e in g:
            if e[0] >= a and e[1] >= a:
                return False  # every edge meets A
            if max(e) >= a + b:
                return False
    b2 = [e for e in g2 if max(e) >= a]
    b3 = [e for e in g3 if max(e) >= a]
    for e in g1:
        for f in itertools.chain(b2, b3):
            if not _meets(e, f):
                return False
    for f2 in b2:
        for f3 in b3:
            if not _meets(f2, f3):
                return False
    return True


def ab_lhs(config: TriGraphConfig, v_weight: int) -> int:
    assert config.ab_sizes is not None
    a, _ = config.ab_sizes
    return sum(
        _degree(g, 0) + _degree(g, 1) + v_weight * _degree(g, a)
        for g in config.graphs()
    )


def _verify_ab(lemma_id: str, a: int, b: int, v_weight: int, bound: int,
               mode: str, samples: int, seed: int) -> LemmaVerdict:
    if a < 2 or b < 1:
        raise ValueError("need a >= 2 and b >= 1")
    inner, meets, bmask = _ab_universe(a, b)
    n_a, n_m = len(inner), len(meets)
    meets_index = {e: i for i, e in enumerate(meets)}
    dis_a = np.zeros(max(n_a, 1), dtype=np.int64)
    for i, e in enumerate(inner):
        for j, f in enumerate(meets):
            if (bmask >> j) & 1 and not _meets(e, f):
                dis_a[i] |= 1 << j
    dis_b = np.zeros(max(n_m, 1), dtype=np.int64)
    for i, e in enumerate(meets):
        if not (bmask >> i) & 1:
            continue
        for j, f in enumerate(meets):
            if (bmask >> j) & 1 and not _meets(e, f):
                dis_b[i] |= 1 << j

    if mode == "exhaustive":
        if a + b > 5:
            raise ValueError("exhaustive mode limited to a + b <= 5")
        wa = [_ab_weight(e, a, v_weight) for e in inner]
        wm = [_ab_weight(e, a, v_weight) for e in meets]
        w1 = np.zeros(1 << n_a, dtype=np.int64)
        for mask in range(1, 1 << n_a):
            low = mask & -mask
            w1[mask] = w1[mask ^ low] + wa[low.bit_length() - 1]
        w23 = np.zeros(1 << n_m, dtype=np.int64)
        for mask in range(1, 1 << n_m):
            low = mask & -mask
            w23[mask] = w23[mask ^ low] + wm[low.bit_length() - 1]
        best, bg1, bg2, bg3, n_best, n_ok, n_cex, cg1, cg2, cg3 = _kernels.scan_ab(
            n_a, n_m, bmask, w1, w23, w23, dis_a, dis_b, bound
        )
        universe_size = 1 << (n_a + 2 * n_m)
        universe = (
            f"all G1 in 2^{n_a} inner-A graphs, G2,G3 in 2^{n_m} meets-A graphs"
        )
        extra = {"hypothesis_satisfying": int(n_ok), "attained_by": int(n_best)}
        samples_out = None
    else:
        if a > 6 or b > 6:
            raise ValueError("randomized mode covers (a, b) up to (6, 6)")
        wa = np.array([_ab_weight(e, a, v_weight) for e in inner], dtype=np.int64)
        wm = np.array([_ab_weight(e, a, v_weight) for e in meets], dtype=np.int64)
        best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3 = _kernels.sample_ab(
            n_a, n_m, bmask, wa, wm, dis_a, dis_b, samples, seed, bound
        )
        universe_size = samples
        universe = (
            f"random maximal hypothesis-satisfying triples on A({a})+B({b})"
        )
        extra = {}
        samples_out = samples

    def decode(g1m: int, g2m: int, g3m: int) -> TriGraphConfig:
        return TriGraphConfig(
            frozenset(e for i, e in enumerate(inner) if (g1m >> i) & 1),
            frozenset(e for i, e in enumerate(meets) if (g2m >> i) & 1),
            frozenset(e for i, e in enumerate(meets) if (g3m >> i) & 1),
            n=a + b,
            ab_sizes=(a, b),
        )

    witness = decode(int(bg1), int(bg2), int(bg3))
    if not check_ab_hypotheses(witness):
        raise AssertionError("witness fails independent hypothesis re-check")
    if ab_lhs(witness, v_weight) != int(best):
        raise AssertionError("witness LHS disagrees with kernel value")
    counterexamples = []
    if n_cex:
        cex = decode(int(cg1), int(cg2), int(cg3))
        if not check_ab_hypotheses(cex):
            raise AssertionError("counterexample fails hypothesis re-check")
        counterexamples.append(
            cex.as_dict() | {"value": ab_lhs(cex, v_weight), "count": int(n_cex)}
        )
    return LemmaVerdict(
        lemma_id=lemma_id,
        universe=universe,
        universe_size=universe_size,
        mode=mode,
        bound=bound,
        max_lhs=int(best),
        witnesses=(witness.as_dict() | {"value": int(best)},),
        counterexamples=tuple(counterexamples),
        samples=samples_out,
        seed=None if mode == "exhaustive" else seed,
        params={"a": a, "b": b},
        extra=extra,
    )


def verify_ab_bound_max6a(
    a: int,
    b: int,
    mode: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LemmaVerdict:
    """Bound max{6a+2, 5a+2b+2} with unit weight on deg(v1)."""
    if mode is None:
        mode = "exhaustive" if a + b <= 5 else "randomized"
    bound = max(6 * a + 2, 5 * a + 2 * b + 2)
    return _verify_ab("ab-6a", a, b, 1, bound, mode, samples, seed)


def verify_ab_bound_max8a(
    a: int,
    b: int,
    mode: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LemmaVerdict:
    """Bound max{8a+2, 6a+2b+4} with weight 2 on deg(v1)."""
    if mode is None:
        mode = "exhaustive" if a + b <= 5 else "randomized"
    bound = max(8 * a + 2, 6 * a + 2 * b + 4)
    return _verify_ab("ab-8a", a, b, 2, bound, mode, samples, seed)


# ---------------------------------------------------------------------------
# Battery runner (the CLI surface)
# ---------------------------------------------------------------------------

_AB_EXHAUSTIVE_PAIRS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)]
_AB_RANDOM_PAIRS = [(3, 3), (4, 4), (5, 5), (6, 6)]


def battery_plan(
    lemma_id: str,
    mode: str | None = None,
    samples: int | None = None,
    seed: int = DEFAULT_SEED,
    n: int | None = None,
    s: int | None = None,
    a: int | None = None,
    b: int | None = None,
) -> list[tuple[bool, "object"]]:
    """The battery for a lemma id as (parallel_safe, thunk) entries.

    Exhaustive sub-universes are independent and parallel-safe; randomized
    ones run sequentially so the seeded streams stay reproducible.
    """
    if lemma_id not in LEMMA_IDS:
        raise ValueError(f"unknown lemma id {lemma_id!r}; known: {LEMMA_IDS}")
    nsamples = DEFAULT_SAMPLES if samples is None else samples

    if lemma_id == "bipartite-fact":
        return [(True, verify_bipartite_fact)]
    if lemma_id == "kpartite-16":
        return [(True, verify_kpartite_nopm_bound)]
    if lemma_id == "weighted-20":
        return [(True, verify_weighted_degree_bound)]

    def thunk(fn, *fargs):
        return lambda: fn(*fargs)

    if lemma_id == "aharoni-howard":
        if n is not None:
            the_mode = mode or ("exhaustive" if n <= 2 else "randomized")
            return [(the_mode == "exhaustive",
                     thunk(verify_aharoni_howard, n, 2 if s is None else s,
                           the_mode, nsamples, seed))]
        plan = []
        if mode in (None, "exhaustive"):
            plan.append((True, thunk(verify_aharoni_howard, 2, 1)))
            plan.append((True, thunk(verify_aharoni_howard, 2, 2)))
        if mode in (None, "randomized"):
            plan.append((False, thunk(verify_aharoni_howard, 3, 2,
                                      "randomized", nsamples, seed)))
        return plan

    if lemma_id in ("intersect-6n", "intersect-3n"):
        fn = (
            verify_intersecting_bound_6n
            if lemma_id == "intersect-6n"
            else verify_intersecting_bound_3n
        )
        if n is not None:
            the_mode = mode or (
                "exhaustive" if lemma_id == "intersect-6n" and n == 4
                else "randomized"
            )
            return [(the_mode == "exhaustive",
                     thunk(fn, n, the_mode, nsamples, seed))]
        plan = []
        if lemma_id == "intersect-6n" and mode in (None, "exhaustive"):
            plan.append((True, thunk(verify_intersecting_bound_6n, 4,
                                     "exhaustive")))
        if mode in (None, "randomized"):
            for nn in range(5, 10):
                plan.append((False, thunk(fn, nn, "randomized", nsamples, seed)))
        if not plan:
            raise ValueError(f"{lemma_id} has no exhaustive universe")
        return plan

    fn = verify_ab_bound_max6a if lemma_id == "ab-6a" else verify_ab_bound_max8a
    if a is not None or b is not None:
        if a is None or b is None:
            raise ValueError("give both a and b")
        the_mode = mode or ("exhaustive" if a + b <= 5 else "randomized")
        return [(the_mode == "exhaustive", thunk(fn, a, b, the_mode,
                                                 nsamples, seed))]
    plan = []
    if mode in (None, "exhaustive"):
        for aa, bb in _AB_EXHAUSTIVE_PAIRS:
            plan.append((True, thunk(fn, aa, bb, "exhaustive")))
    if mode == "randomized":
        for aa, bb in _AB_RANDOM_PAIRS:
            plan.append((False, thunk(fn, aa, bb, "randomized", nsamples, seed)))
    return plan


def run_lemma(
    lemma_id: str,
    mode: str | None = None,
    samples: int | None = None,
    seed: int = DEFAULT_SEED,
    n: int | None = None,
    s: int | None = None,
    a: int | None = None,
    b: int | None = None,
    threads: int = 1,
) -> list[LemmaVerdict]:
    """Run a lemma's verification battery, one verdict per sub-universe.

    With no mode/parameter overrides each id runs its full declared battery
    (exhaustive parts plus default-seeded randomized parts). ``threads``
    parallelizes the exhaustive entries; verdict order and content are
    schedule-independent.
    """
    plan = battery_plan(lemma_id, mode, samples, seed, n, s, a, b)
    results: dict[int, LemmaVerdict] = {}
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {
                i: pool.submit(fn) for i, (safe, fn) in enumerate(plan) if safe
            }
            for i, fut in futures.items():
                results[i] = fut.result()
    for i, (safe, fn) in enumerate(plan):
        if i not in results:
            results[i] = fn()
    return [results[i] for i in range(len(plan))]
