"""Hot integer kernels, JIT-compiled with numba when available.

Backend selection is driven by the ``OREMATCH_BACKEND`` environment variable,
read once at import time:

* ``auto`` (default) -- use numba if it imports, otherwise pure Python;
* ``numba``          -- require numba, fail loudly if missing;
* ``python``         -- force the pure-Python path (same source, no JIT).

Both paths execute the exact same function bodies; the pure path is the
reference semantics and the JIT path must agree bit-for-bit (covered by the
backend-equivalence tests and ``benchmarks/backend_bench.py``).

All graph/universe encodings here are bitmasks in int64: a hypergraph edge on
an m-vertex window is a 3-bit mask, a 2-graph on an edge universe of size q is
a q-bit mask. Masks never exceed 52 bits.
"""

from __future__ import annotations

import os

import numpy as np

_BACKEND_ENV = "OREMATCH_BACKEND"


def _pick_backend() -> str:
    choice = os.environ.get(_BACKEND_ENV, "auto").strip().lower()
    if choice not in {"auto", "numba", "python"}:
        raise ValueError(
            f"{_BACKEND_ENV} must be 'auto', 'numba' or 'python', got {choice!r}"
        )
    if choice == "python":
        return "python"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "python"
    return "numba"


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    def _jit(fn):
        return njit(cache=True, nogil=True)(fn)

else:

    def _jit(fn):
        return fn


def backend_name() -> str:
    """Active backend, 'numba' or 'python'."""
    return BACKEND


@_jit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


# ---------------------------------------------------------------------------
# Perfect matching / maximum matching over covered-vertex bitmasks
# ---------------------------------------------------------------------------


@_jit
def pm_search(nv, edge_masks, indptr, edge_ids):
    """Decide whether a 3-graph on nv local vertices has a perfect matching.

    Top-down subset DP (memoized DFS) over covered-vertex masks: from a mask,
    the lowest uncovered vertex must be covered by some disjoint edge.
    ``indptr``/``edge_ids`` is a CSR listing, per vertex, the indices into
    ``edge_masks`` of the edges containing it.

    Returns (found, parent) where parent[mask] is the index of the edge used
    to first reach ``mask`` (-1 if unreached); the caller reconstructs the
    matching by walking parents from the full mask. DFS order makes dense
    positive instances terminate after ~nv/3 pushes.
    """
    size = 1 << nv
    full = size - 1
    visited = np.zeros(size, np.uint8)
    parent = np.full(size, -1, np.int32)
    stack = np.empty(256, np.int64)
    stack[0] = 0
    top = 1
    visited[0] = 1
    found = False
    while top > 0:
        top -= 1
        mask = stack[top]
        if mask == full:
            found = True
            break
        v = 0
        while (mask >> v) & 1:
            v += 1
        for k in range(indptr[v], indptr[v + 1]):
            ei = edge_ids[k]
            em = edge_masks[ei]
            if em & mask == 0:
                child = mask | em
                if visited[child] == 0:
                    visited[child] = 1
                    parent[child] = ei
                    if top == stack.shape[0]:
                        grown = np.empty(stack.shape[0] * 2, np.int64)
                        grown[: stack.shape[0]] = stack
                        stack = grown
                    stack[top] = child
                    top += 1
    return found, parent


@_jit
def max_matching_dp(nv, edge_masks, indptr, edge_ids):
    """Exact maximum matching size by bottom-up DP over vertex subsets.

    dp[mask] = largest number of disjoint edges inside ``mask``; the lowest
    set bit is either left unmatched or covered by an edge within the mask.
    O(2^nv * max-degree); intended for nv <= ~22.
    """
    size = 1 << nv
    dp = np.zeros(size, np.int8)
    for mask in range(1, size):
        v = 0
        while (mask >> v) & 1 == 0:
            v += 1
        best = dp[mask ^ (1 << v)]
        for k in range(indptr[v], indptr[v + 1]):
            em = edge_masks[edge_ids[k]]
            if em & mask == em:
                cand = 1 + dp[mask ^ em]
                if cand > best:
                    best = cand
        dp[mask] = best
    return int(dp[size - 1])


# ---------------------------------------------------------------------------
# Exhaustive scan of the 3x3x3 partite universes (20 admissible cells)
# ---------------------------------------------------------------------------


@_jit
def scan_nopm_max(n_bits, lo_bits, pm_masks, w_lo, w_hi, bound):
    """Scan all subsets of an n_bits-cell universe for graphs with no PM.

    A graph (bitmask over cells) has a perfect matching iff it contains one
    of ``pm_masks`` entirely. For every no-PM graph the weighted cell count
    w(mask) = w_lo[mask & (2^lo_bits - 1)] + w_hi[mask >> lo_bits] is
    evaluated; the scan tracks the maximum, a witness, and any mask whose
    value exceeds ``bound`` (a counterexample).

    Returns (best, best_mask, n_best, n_nopm, n_cex, first_cex).
    """
    total = 1 << n_bits
    lo_mask = (1 << lo_bits) - 1
    best = -1
    best_mask = 0
    n_best = 0
    n_nopm = 0
    n_cex = 0
    first_cex = -1
    npm = pm_masks.shape[0]
    for mask in range(total):
        has_pm = False
        for j in range(npm):
            pm = pm_masks[j]
            if mask & pm == pm:
                has_pm = True
                break
        if has_pm:
            continue
        n_nopm += 1
        val = w_lo[mask & lo_mask] + w_hi[mask >> lo_bits]
        if val > best:
            best = val
            best_mask = mask
            n_best = 1
        elif val == best:
            n_best += 1
        if val > bound:
            n_cex += 1
            if first_cex < 0:
                first_cex = mask
    return best, best_mask, n_best, n_nopm, n_cex, first_cex


# ---------------------------------------------------------------------------
# Two-block (A,B) triple-graph lemmas: exhaustive scan and randomized search
# ---------------------------------------------------------------------------


@_jit
def scan_ab(n_a, n_m, bmask, w1, w2, w3, dis_a, dis_b, bound):
    """Exhaustive scan of triple graphs under the A/B block hypotheses.

    G1 ranges over subsets of the ``n_a`` inner-A edges, G2 and G3 over
    subsets of the ``n_m`` meets-A edges; ``bmask`` marks which meets-A edges
    touch B. ``dis_a[e]`` is the mask of meets-A B-edges disjoint from inner
    edge e; ``dis_b[f]`` the mask of B-edges disjoint from B-edge f.
    Hypotheses enforced: every G1 edge meets every B-edge of G2/G3, and every
    B-edge of G2 meets every B-edge of G3. ``w1``/``w2``/``w3`` are weight
    lookup tables over the respective mask spaces.

    Returns (best, bg1, bg2, bg3, n_best, n_ok, n_cex, cg1, cg2, cg3).
    """
    best = -1
    bg1 = bg2 = bg3 = 0
    n_best = 0
    n_ok = 0
    n_cex = 0
    cg1 = cg2 = cg3 = -1
    for g1 in range(1 << n_a):
        banned12 = 0
        t = g1
        while t:
            e = 0
            low = t & (-t)
            while (low >> e) & 1 == 0:
                e += 1
            t ^= low
            banned12 |= dis_a[e]
        base1 = w1[g1]
        for g2 in range(1 << n_m):
            g2b = g2 & bmask
            if g2b & banned12:
                continue
            banned3 = banned12
            t = g2b
            while t:
                f = 0
                low = t & (-t)
                while (low >> f) & 1 == 0:
                    f += 1
                t ^= low
                banned3 |= dis_b[f]
            base12 = base1 + w2[g2]
            for g3 in range(1 << n_m):
                if (g3 & bmask) & banned3:
                    continue
                n_ok += 1
                val = base12 + w3[g3]
                if val > best:
                    best = val
                    bg1, bg2, bg3 = g1, g2, g3
                    n_best = 1
                elif val == best:
                    n_best += 1
                if val > bound:
                    n_cex += 1
                    if cg1 < 0:
                        cg1, cg2, cg3 = g1, g2, g3
    return best, bg1, bg2, bg3, n_best, n_ok, n_cex, cg1, cg2, cg3


@_jit
def sample_ab(n_a, n_m, bmask, wa, wm, dis_a, dis_b, samples, seed, bound):
    """Randomized maximization for the A/B block lemmas.

    Each sample builds a random maximal hypothesis-satisfying configuration:
    candidate additions (one per edge per graph) are visited in a random
    order and applied whenever the hypotheses stay satisfied. Since the
    objective is monotone in edge additions, maximal configurations dominate,
    so every sample is one restart of a greedy ascent.

    Returns (best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3).
    """
    np.random.seed(seed)
    n_moves = n_a + 2 * n_m
    order = np.empty(n_moves, np.int64)
    best = -1
    bg1 = bg2 = bg3 = 0
    n_cex = 0
    cg1 = cg2 = cg3 = -1
    for _ in range(samples):
        for i in range(n_moves):
            order[i] = i
        for i in range(n_moves - 1, 0, -1):
            j = np.random.randint(0, i + 1)
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        g1 = 0
        g2 = 0
        g3 = 0
        banned12 = 0  # B-edges conflicting with G1
        acc2 = 0  # union of dis_b over B-edges of g2
        acc3 = 0
        val = 0
        for i in range(n_moves):
            mv = order[i]
            if mv < n_a:
                e = mv
                if dis_a[e] & ((g2 | g3) & bmask) == 0:
                    g1 |= 1 << e
                    banned12 |= dis_a[e]
                    val += wa[e]
            elif mv < n_a + n_m:
                f = mv - n_a
                fb = (1 << f) & bmask
                if fb == 0:
                    g2 |= 1 << f
                    val += wm[f]
                elif fb & (banned12 | acc3) == 0:
                    g2 |= 1 << f
                    acc2 |= dis_b[f]
                    val += wm[f]
            else:
                f = mv - n_a - n_m
                fb = (1 << f) & bmask
                if fb == 0:
                    g3 |= 1 << f
                    val += wm[f]
                elif fb & (banned12 | acc2) == 0:
                    g3 |= 1 << f
                    acc3 |= dis_b[f]
                    val += wm[f]
        if val > best:
            best = val
            bg1, bg2, bg3 = g1, g2, g3
        if val > bound:
            n_cex += 1
            if cg1 < 0:
                cg1, cg2, cg3 = g1, g2, g3
    return best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3


# ---------------------------------------------------------------------------
# Intersecting triple-graph lemmas on a common vertex set
# ---------------------------------------------------------------------------


@_jit
def scan_intersect4(union_dis, deg_table, bound):
    """Exhaustive scan at n=4 of the one-sided intersecting hypothesis.

    ``union_dis[g]`` = mask of K4 edges disjoint from at least one edge of g
    (so the hypothesis 'every edge of G1 meets every edge of Gi' is
    ``gi & union_dis[g1] == 0``). ``deg_table[g*4+v]`` is deg_g(v). The LHS
    is the largest 3-vertex sum of combined degrees = total - min.

    Returns (best, bg1, bg2, bg3, n_ok, n_cex, cg1, cg2, cg3).
    """
    best = -1
    bg1 = bg2 = bg3 = 0
    n_ok = 0
    n_cex = 0
    cg1 = cg2 = cg3 = -1
    for g1 in range(64):
        bad = union_dis[g1]
        for g2 in range(64):
            if g2 & bad:
                continue
            for g3 in range(64):
                if g3 & bad:
                    continue
                n_ok += 1
                total = 0
                mn = 1 << 30
                for v in range(4):
                    d = (
                        deg_table[g1 * 4 + v]
                        + deg_table[g2 * 4 + v]
                        + deg_table[g3 * 4 + v]
                    )
                    total += d
                    if d < mn:
                        mn = d
                val = total - mn
                if val > best:
                    best = val
                    bg1, bg2, bg3 = g1, g2, g3
                if val > bound:
                    n_cex += 1
                    if cg1 < 0:
                        cg1, cg2, cg3 = g1, g2, g3
    return best, bg1, bg2, bg3, n_ok, n_cex, cg1, cg2, cg3


@_jit
def sample_intersect(n_vertices, n_edges, inc, dis, pairwise, samples, seed, bound):
    """Randomized maximization for the intersecting triple-graph lemmas.

    ``inc[v]`` = mask of edges incident to vertex v, ``dis[e]`` = mask of
    edges disjoint from edge e. With ``pairwise`` false the hypothesis is
    one-sided (every G1 edge meets every G2/G3 edge); with it true all pairs
    of distinct graphs must cross-intersect. Each sample saturates a random
    order of additions to a maximal configuration (objective is monotone).

    Returns (best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3).
    """
    np.random.seed(seed)
    n_moves = 3 * n_edges
    order = np.empty(n_moves, np.int64)
    best = -1
    bg1 = bg2 = bg3 = 0
    n_cex = 0
    cg1 = cg2 = cg3 = -1
    for _ in range(samples):
        for i in range(n_moves):
            order[i] = i
        for i in range(n_moves - 1, 0, -1):
            j = np.random.randint(0, i + 1)
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        g1 = 0
        g2 = 0
        g3 = 0
        for i in range(n_moves):
            mv = order[i]
            gi = mv // n_edges
            e = mv - gi * n_edges
            d = dis[e]
            if gi == 0:
                if d & (g2 | g3) == 0:
                    g1 |= 1 << e
            elif gi == 1:
                other = g1 | g3 if pairwise else g1
                if d & other == 0:
                    g2 |= 1 << e
            else:
                other = g1 | g2 if pairwise else g1
                if d & other == 0:
                    g3 |= 1 << e
        # LHS: largest 3-vertex sum of combined degrees
        s1 = s2 = s3 = -1
        for v in range(n_vertices):
            d = (
                _popcount(g1 & inc[v])
                + _popcount(g2 & inc[v])
                + _popcount(g3 & inc[v])
            )
            if d > s1:
                s3 = s2
                s2 = s1
                s1 = d
            elif d > s2:
                s3 = s2
                s2 = d
            elif d > s3:
                s3 = d
        val = s1 + s2 + s3
        if val > best:
            best = val
            bg1, bg2, bg3 = g1, g2, g3
        if val > bound:
            n_cex += 1
            if cg1 < 0:
                cg1, cg2, cg3 = g1, g2, g3
    return best, bg1, bg2, bg3, n_cex, cg1, cg2, cg3


# ---------------------------------------------------------------------------
# Intersecting-family maximization on the 3x3x3 cell grid
# ---------------------------------------------------------------------------


@_jit
def sample_intersecting_family(compat, samples, seed, bound):
    """Randomized search for large families of pairwise-intersecting cells.

    ``compat[c]`` = mask of cells sharing a coordinate value with cell c
    (including c). Each sample greedily grows a maximal pairwise-intersecting
    family along a random cell order; family size is the objective.

    Returns (best, best_family_mask, n_cex, first_cex_mask).
    """
    np.random.seed(seed)
    n_cells = compat.shape[0]
    order = np.empty(n_cells, np.int64)
    best = -1
    best_fam = 0
    n_cex = 0
    first_cex = -1
    for _ in range(samples):
        for i in range(n_cells):
            order[i] = i
        for i in range(n_cells - 1, 0, -1):
            j = np.random.randint(0, i + 1)
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        fam = 0
        count = 0
        for i in range(n_cells):
            c = order[i]
            if fam & ~compat[c] == 0:
                fam |= 1 << c
                count += 1
        if count > best:
            best = count
            best_fam = fam
        if count > bound:
            n_cex += 1
            if first_cex < 0:
                first_cex = fam
    return best, best_fam, n_cex, first_cex


def warm_up() -> None:
    """Trigger JIT compilation of every kernel on trivial inputs."""
    em = np.array([0b111], np.int64)
    ip = np.array([0, 1, 1, 1], np.int64)
    ei = np.array([0], np.int64)
    pm_search(3, em, ip, ei)
    max_matching_dp(3, em, ip, ei)
    scan_nopm_max(2, 1, np.array([3], np.int64), np.zeros(2, np.int64),
                  np.zeros(2, np.int64), 10)
    z2 = np.zeros(2, np.int64)
    z4 = np.zeros(4, np.int64)
    scan_ab(1, 2, 1, z2, z4, z4, np.zeros(1, np.int64), z2, 10)
    sample_ab(1, 2, 1, np.zeros(1, np.int64), z2, np.zeros(1, np.int64), z2,
              2, 1, 10)
    scan_intersect4(np.zeros(64, np.int64), np.zeros(256, np.int64), 100)
    sample_intersect(3, 3, np.array([3, 5, 6], np.int64),
                     np.zeros(3, np.int64), False, 2, 1, 100)
    sample_intersecting_family(np.array([1, 2], np.int64), 2, 1, 10)
