"""Degree-sum optimization of the three-block family and counterexample
certification.

The headline computation: over the feasible grid 0 <= x, y with
x + y <= n/3 - 1, maximize sigma2(H12_{n,x,y}). The sweep is
construction-backed (build every graph, compute sigma2 directly); the
closed-form value, a five-case quadratic in n keyed on n mod 5, and the four
candidate points {2f1(0), f2(1), f2(floor((n+1)/5)), 2f1(ceil((n+2)/5))} are
evaluated in exact rational arithmetic and must agree with the sweep.

The certified counterexample report checks, at a concrete order n, the three
conditions: sigma2 strictly above 2*(C(n-1,2) - C(2n/3,2)); no perfect
matching (exact maximum matching below n/3, or the structural integer
program beyond the exact range); and no independent set of size n/3+1 (so
the graph does not embed into the two-block family at s = n/3).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, ceil, floor

from .families import f1, f2, h12, _h12_sizes
from .matching import max_matching

__all__ = [
    "SweepRow",
    "SweepResult",
    "CounterexampleReport",
    "sweep_max_sigma2",
    "closed_form_max",
    "candidate_points",
    "max_matching_structural_bound",
    "certify_counterexample",
    "EXACT_MATCHING_LIMIT",
]

EXACT_MATCHING_LIMIT = 33  # beyond this the certifier uses the structural IP


@dataclass(frozen=True)
class SweepRow:
    x: int
    y: int
    sigma2: int | None  # None for the edgeless corner (x, y) = (0, 0)
    two_f1: int
    f2: int
    feasible: bool = True
    is_max: bool = False


@dataclass(frozen=True)
class SweepResult:
    n: int
    max_sigma2: int
    argmax: tuple[tuple[int, int], ...]  # lexicographically sorted
    rows: tuple[SweepRow, ...]


def _check_order(n: int) -> None:
    if n % 3 != 0 or n < 9:
        raise ValueError("order must be divisible by 3 and at least 9")


def _int_of(fr: Fraction, what: str) -> int:
    if fr.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to non-integer {fr}")
    return int(fr)


def _row(n: int, x: int, y: int) -> SweepRow:
    inst = h12(n, x, y)
    s2 = inst.graph.sigma2()
    return SweepRow(
        x=x,
        y=y,
        sigma2=s2,
        two_f1=_int_of(2 * f1(n, x), "2*f1"),
        f2=_int_of(f2(n, x), "f2"),
    )


def sweep_max_sigma2(n: int, threads: int = 1) -> SweepResult:
    """Construction-backed sweep of sigma2 over the feasible (x, y) grid."""
    _check_order(n)
    grid = [
        (x, y)
        for x in range(n // 3)
        for y in range(n // 3 - x)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda p: _row(n, p[0], p[1]), grid))
    else:
        rows = [_row(n, x, y) for x, y in grid]
    best = max(r.sigma2 for r in rows if r.sigma2 is not None)
    argmax = tuple(sorted((r.x, r.y) for r in rows if r.sigma2 == best))
    rows = tuple(
        SweepRow(r.x, r.y, r.sigma2, r.two_f1, r.f2, r.feasible,
                 is_max=(r.sigma2 == best))
        for r in rows
    )
    return SweepResult(n=n, max_sigma2=best, argmax=argmax, rows=rows)


_CLOSED_FORMS: dict[int, tuple[Fraction, Fraction, Fraction]] = {
    # n mod 5 -> coefficients (a, b, c) of a*n^2 + b*n + c
    0: (Fraction(128, 225), Fraction(-12, 5), Fraction(2)),
    1: (Fraction(128, 225), Fraction(-187, 75), Fraction(62, 25)),
    2: (Fraction(128, 225), Fraction(-184, 75), Fraction(38, 25)),
    3: (Fraction(128, 225), Fraction(-176, 75), Fraction(48, 25)),
    4: (Fraction(128, 225), Fraction(-173, 75), Fraction(42, 25)),
}


def closed_form_max(n: int) -> int:
    """Exact rational evaluation of the five-case closed form; the result
    must be integral (a non-integer signals a transcription bug)."""
    _check_order(n)
    a, b, c = _CLOSED_FORMS[n % 5]
    return _int_of(a * n * n + b * n + c, f"closed form at n={n}")


@dataclass(frozen=True)
class CandidatePoint:
    x: int
    formula: str  # "2f1" or "f2"
    value: int


def candidate_points(n: int) -> list[CandidatePoint]:
    """The four candidate evaluations among which the sweep maximum lies."""
    _check_order(n)
    pts = [
        (0, "2f1"),
        (1, "f2"),
        (floor(Fraction(n + 1, 5)), "f2"),
        (ceil(Fraction(n + 2, 5)), "2f1"),
    ]
    out = []
    for x, kind in pts:
        val = 2 * f1(n, x) if kind == "2f1" else f2(n, x)
        out.append(CandidatePoint(x=x, formula=kind, value=_int_of(val, kind)))
    return out


def max_matching_structural_bound(n: int, x: int, y: int) -> int:
    """Matching number of H12 via the block-usage integer program.

    A matching with a edges of type R+TT, b of S+TT, c of T+SS and d of TTT
    satisfies a <= x, 2a+2b+c+3d <= |T|, b+2c <= |S|; the maximum of
    a+b+c+d over nonnegative integers is the matching number (solved by
    direct enumeration, all variables bounded by n)."""
    _, s_size, t_size = _h12_sizes(n, x, y)
    best = 0
    for a in range(min(x, t_size // 2) + 1):
        for b in range((t_size - 2 * a) // 2 + 1):
            if b > s_size:
                break
            for c in range(min(t_size - 2 * a - 2 * b, (s_size - b) // 2) + 1):
                d = (t_size - 2 * a - 2 * b - c) // 3
                best = max(best, a + b + c + d)
    return best


@dataclass(frozen=True)
class CounterexampleReport:
    n: int
    x: int
    y: int
    sigma2: int
    threshold: int
    max_matching_size: int
    max_matching_method: str
    independence_number: int
    independence_witness: tuple[int, ...]
    degree_sum_exceeds_threshold: bool
    no_perfect_matching: bool
    not_subgraph_of_h2: bool
    matching_edges: tuple[tuple[int, int, int], ...] = field(default=())

    @property
    def all_conditions_hold(self) -> bool:
        return (
            self.degree_sum_exceeds_threshold
            and self.no_perfect_matching
            and self.not_subgraph_of_h2
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "y": self.y,
            "sigma2": self.sigma2,
            "threshold": self.threshold,
            "max_matching": {
                "size": self.max_matching_size,
                "method": self.max_matching_method,
                "edges": [list(e) for e in self.matching_edges],
            },
            "independence": {
                "alpha": self.independence_number,
                "witness": list(self.independence_witness),
            },
            "conditions": {
                "degree_sum_exceeds_threshold": self.degree_sum_exceeds_threshold,
                "no_perfect_matching": self.no_perfect_matching,
                "not_subgraph_of_h2": self.not_subgraph_of_h2,
            },
            "all_conditions_hold": self.all_conditions_hold,
        }


def certify_counterexample(n: int) -> CounterexampleReport:
    """Certify the three counterexample conditions at order n with witnesses.

    All comparisons are exact integer comparisons; the booleans are
    recomputed from the witnesses, never from formulas alone.
    """
    _check_order(n)
    sweep = sweep_max_sigma2(n)
    x, y = sweep.argmax[0]
    inst = h12(n, x, y)
    s2 = inst.graph.sigma2()
    assert s2 == sweep.max_sigma2
    threshold = 2 * (comb(n - 1, 2) - comb(2 * n // 3, 2))

    if n <= EXACT_MATCHING_LIMIT:
        cert = max_matching(inst.graph)
        mm_size = cert.size
        mm_edges = cert.edges
        method = "exact-branch-and-bound"
        ip = max_matching_structural_bound(n, x, y)
        if ip != mm_size:
            raise AssertionError(
                f"structural IP bound {ip} disagrees with exact solver {mm_size}"
            )
    else:
        mm_size = max_matching_structural_bound(n, x, y)
        mm_edges = ()
        method = "structural-ip"

    embeds, witness = inst.graph.is_subgraph_of_h2()
    alpha, alpha_witness = inst.graph.independence_number()

    return CounterexampleReport(
        n=n,
        x=x,
        y=y,
        sigma2=s2,
        threshold=threshold,
        max_matching_size=mm_size,
        max_matching_method=method,
        independence_number=alpha,
        independence_witness=alpha_witness,
        degree_sum_exceeds_threshold=s2 > threshold,
        no_perfect_matching=mm_size < n // 3,
        not_subgraph_of_h2=not embeds,
        matching_edges=mm_edges,
    )
