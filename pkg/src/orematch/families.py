"""Builders and closed-form degree formulas for the extremal families.

Two-block families H^l_{n,s} (l = 1,2,3): vertex set split into S and T with
|T| = s*l - 1, edge set all triples having at least l vertices in T. None of
them contains a matching of size s.

Three-block family H12_{n,x,y}: blocks R, S, T of sizes x, n-3x-y, 2x+y laid
out contiguously in that order; edges are (1) one R + two T, (2) one S + two
T, (3) one T + two S, (4) three T. Its maximum matching is at most x+y and
its independence number is x+1. Note the block of size 2x+y is the one the
edge types treat as T -- that labeling is the only one consistent with the
block degree formulas below (deg_R < deg_S < deg_T).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .hypergraph import Hypergraph3, build

__all__ = [
    "PartitionSpec",
    "FamilyInstance",
    "h_ell",
    "h12",
    "h12_block_degrees",
    "max_matching_bound_h_ell",
    "sigma2_formula",
    "f1",
    "f2",
]


@dataclass(frozen=True)
class PartitionSpec:
    """Named contiguous vertex blocks covering 0..n-1."""

    blocks: tuple[tuple[str, range], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for _, rng in self.blocks:
            block = set(rng)
            if block & seen:
                raise ValueError("partition blocks overlap")
            seen |= block
        if seen and seen != set(range(max(seen) + 1)):
            raise ValueError("partition blocks must cover 0..n-1")

    def block(self, name: str) -> range:
        for nm, rng in self.blocks:
            if nm == name:
                return rng
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(nm for nm, _ in self.blocks)

    def sizes(self) -> dict[str, int]:
        return {nm: len(rng) for nm, rng in self.blocks}


@dataclass(frozen=True)
class FamilyInstance:
    """A constructed family member: the graph, its partition and parameters."""

    graph: Hypergraph3
    partition: PartitionSpec
    family: str
    params: dict

    def block(self, name: str) -> range:
        return self.partition.block(name)


def _pairs_within(block: range) -> list[tuple[int, int]]:
    return list(itertools.combinations(block, 2))


def h_ell(n: int, s: int, ell: int) -> FamilyInstance:
    """Two-block family: |T| = s*ell - 1, edges = triples with >= ell
    vertices in T. S occupies 0..n-|T|-1, T the tail."""
    if ell not in (1, 2, 3):
        raise ValueError("ell must be 1, 2 or 3")
    if s < 1:
        raise ValueError("s must be at least 1")
    t_size = s * ell - 1
    if t_size > n:
        raise ValueError(f"T block of size {t_size} exceeds n={n}")
    if n < 3:
        raise ValueError("need at least 3 vertices")
    t_start = n - t_size
    triples = np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64)
    in_t = (triples >= t_start).sum(axis=1)
    graph = build(n, triples[in_t >= ell])
    partition = PartitionSpec(
        (("S", range(0, t_start)), ("T", range(t_start, n)))
    )
    return FamilyInstance(graph, partition, f"h{ell}", {"n": n, "s": s, "ell": ell})


def max_matching_bound_h_ell(n: int, s: int, ell: int) -> int:
    """The family's matching number: s-1 (no matching of size s exists).

    The exact solver agrees on every small instance (covered by tests)."""
    h_ell(n, s, ell)  # parameter validation only
    return s - 1


def _h12_sizes(n: int, x: int, y: int) -> tuple[int, int, int]:
    if x < 0 or y < 0:
        raise ValueError("x and y must be nonnegative")
    if n < 3 or n < 3 * x + 3 * y + 3:
        raise ValueError(f"need n >= 3x+3y+3, got n={n}, x={x}, y={y}")
    return x, n - 3 * x - y, 2 * x + y


def h12(n: int, x: int, y: int) -> FamilyInstance:
    """Three-block family with blocks R (size x), S (n-3x-y), T (2x+y)."""
    _, s_size, t_size = _h12_sizes(n, x, y)
    r_block = range(0, x)
    s_block = range(x, x + s_size)
    t_block = range(x + s_size, n)
    t_pairs = _pairs_within(t_block)
    s_pairs = _pairs_within(s_block)
    edges: list[tuple[int, int, int]] = []
    for v in itertools.chain(r_block, s_block):  # types (1) and (2)
        edges.extend((v, a, b) for a, b in t_pairs)
    for v in t_block:  # type (3)
        edges.extend((a, b, v) for a, b in s_pairs)
    edges.extend(itertools.combinations(t_block, 3))  # type (4)
    graph = build(n, np.array(edges, dtype=np.int64).reshape(-1, 3))
    partition = PartitionSpec((("R", r_block), ("S", s_block), ("T", t_block)))
    return FamilyInstance(graph, partition, "h12", {"n": n, "x": x, "y": y})


def h12_block_degrees(n: int, x: int, y: int) -> tuple[int, int, int]:
    """Exact degrees (deg_R, deg_S, deg_T) of the three block vertices."""
    _, s_size, t_size = _h12_sizes(n, x, y)
    deg_r = comb(t_size, 2)
    deg_s = comb(t_size, 2) + t_size * (s_size - 1)
    deg_t = (
        (t_size - 1) * x
        + comb(t_size - 1, 2)
        + (t_size - 1) * s_size
        + comb(s_size, 2)
    )
    return deg_r, deg_s, deg_t


def _sigma2_formula_h12(n: int, x: int, y: int) -> int | None:
    """Minimum adjacent degree sum of H12 from the block degree formulas,
    restricted to the pair types that actually occur at these sizes."""
    _, s_size, t_size = _h12_sizes(n, x, y)
    deg_r, deg_s, deg_t = h12_block_degrees(n, x, y)
    sums = []
    if x >= 1 and t_size >= 2:
        sums.append(deg_r + deg_t)
    if s_size >= 2 and t_size >= 1:
        sums.append(2 * deg_s)
    if s_size >= 1 and t_size >= 2:
        sums.append(deg_s + deg_t)
    if t_size >= 2 and (x >= 1 or s_size >= 1 or t_size >= 3):
        sums.append(2 * deg_t)
    return min(sums) if sums else None


def sigma2_formula(family: str, **params) -> int | None:
    """Closed-form minimum adjacent degree sum for a named family.

    family is 'h1'/'h2'/'h3' with parameters n, s, or 'h12' with n, x, y.
    """
    if family == "h1":
        n, s = params["n"], params["s"]
        return 2 * (comb(n - 1, 2) - comb(n - s, 2))
    if family == "h2":
        n, s = params["n"], params["s"]
        return (2 * s - 2) * (n - 1)
    if family == "h3":
        n, s = params["n"], params["s"]
        return 2 * comb(3 * s - 2, 2)
    if family == "h12":
        return _sigma2_formula_h12(params["n"], params["x"], params["y"])
    raise ValueError(f"unknown family {family!r}")


def f1(n: int, x: int) -> Fraction:
    """Upper envelope of deg_S over y (attained at y = n/3 - x - 1):
    -(3/2)x^2 + (n/3 + 1/2)x + (5/18)n^2 - (7/6)n + 1."""
    xf = Fraction(x)
    return (
        -Fraction(3, 2) * xf * xf
        + (Fraction(n, 3) + Fraction(1, 2)) * xf
        + Fraction(5, 18) * n * n
        - Fraction(7, 6) * n
        + 1
    )


def f2(n: int, x: int) -> Fraction:
    """Upper envelope of deg_R + deg_T over y (attained at y = n/3 - x - 1):
    2x^2 - (n/3 + 2)x + (5/9)n^2 - 2n + 2."""
    xf = Fraction(x)
    return (
        2 * xf * xf
        - (Fraction(n, 3) + 2) * xf
        + Fraction(5, 9) * n * n
        - 2 * n
        + 2
    )
