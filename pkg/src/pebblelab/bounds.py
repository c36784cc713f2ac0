"""Domination-based lower bounds and the diameter upper bound.

All bounds are integers.  The rubbling bound with a halved domination
number is evaluated in exact rationals and rounded up, which is sound
because optimal rubbling numbers are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from pebblelab.domination import GammaCache
from pebblelab.graphs import Graph


class BoundDomainError(ValueError):
    pass


def diameter_upper_bound(g: Graph) -> int:
    return 2**g.diameter


def _gammas(g: Graph, gammas: GammaCache | None) -> GammaCache:
    if gammas is None:
        return GammaCache(g)
    if gammas.g is not g:
        raise ValueError("gamma cache belongs to a different graph")
    return gammas


# Pure formulas in terms of gamma_{k-1} (g1) and gamma_{k-2} (g2).

def thm3_value(g1: int, k: int) -> int:
    return min(g1, 2**k)


def thm5_value(g1: int, g2: int, k: int) -> int:
    middle = max(Fraction(g1, 2) + 2 ** (k - 2), Fraction(g1))
    return math.ceil(min(Fraction(2**k), middle, Fraction(g2)))


def thm4_mid_value(g1: int, g2: int, k: int) -> int:
    return min(2**k, g1 + 2 ** (k - 2), g2 + 1)


def thm6_value(g1: int, g2: int, k: int) -> int:
    return min(2**k, g1 + 2 ** (k - 2) + 1, g2 + 1)


def thm3_lower_bound(g: Graph, k: int, gammas: GammaCache | None = None) -> int:
    """min(γ_{k-1}, 2^k); a lower bound on both optimal numbers, k >= 2."""
    if k < 2:
        raise BoundDomainError("k must be at least 2")
    gam = _gammas(g, gammas)
    return thm3_value(gam(k - 1), k)


def thm5_rubbling_lower_bound(g: Graph, k: int, gammas: GammaCache | None = None) -> int:
    """min(2^k, max(γ_{k-1}/2 + 2^{k-2}, γ_{k-1}), γ_{k-2}), rounded up, k >= 2."""
    if k < 2:
        raise BoundDomainError("k must be at least 2")
    gam = _gammas(g, gammas)
    return thm5_value(gam(k - 1), gam(k - 2), k)


def _check_pebbling_domain(g: Graph, k: int) -> None:
    if k < 3:
        raise BoundDomainError("k must be at least 3")
    if g.num_edges == 0:
        raise BoundDomainError("graph needs at least one edge")


def thm4_mid_lower_bound(g: Graph, k: int, gammas: GammaCache | None = None) -> int:
    """min(2^k, γ_{k-1} + 2^{k-2}, γ_{k-2} + 1) on the optimal pebbling number."""
    _check_pebbling_domain(g, k)
    gam = _gammas(g, gammas)
    return thm4_mid_value(gam(k - 1), gam(k - 2), k)


def thm6_pebbling_lower_bound(g: Graph, k: int, gammas: GammaCache | None = None) -> int:
    """min(2^k, γ_{k-1} + 2^{k-2} + 1, γ_{k-2} + 1) on the optimal pebbling number."""
    _check_pebbling_domain(g, k)
    gam = _gammas(g, gammas)
    return thm6_value(gam(k - 1), gam(k - 2), k)


RUBBLING_BOUNDS = ("thm3", "thm5")
PEBBLING_BOUNDS = ("thm3", "thm5", "thm4_mid", "thm6")


@dataclass
class BoundRow:
    k: int
    gamma_k_minus_1: int
    gamma_k_minus_2: int
    thm3: int
    thm5: int
    thm4_mid: int | None = None
    thm6: int | None = None

    def values(self, names: Iterable[str]) -> dict[str, int]:
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "gamma_k_minus_1": self.gamma_k_minus_1,
            "gamma_k_minus_2": self.gamma_k_minus_2,
            "thm3_rubbling_lb": self.thm3,
            "thm5_rubbling_lb": self.thm5,
            "thm4_mid_pebbling_lb": self.thm4_mid,
            "thm6_pebbling_lb": self.thm6,
        }


@dataclass
class BestBound:
    value: int
    k: int | None
    name: str | None

    def to_json(self) -> dict:
        return {"value": self.value, "k": self.k, "theorem": self.name}


@dataclass
class BoundReport:
    graph_id: str
    diameter: int
    diameter_ub: int
    rows: list[BoundRow] = field(default_factory=list)
    best_rubbling_lb: BestBound = field(default_factory=lambda: BestBound(1, None, None))
    best_pebbling_lb: BestBound = field(default_factory=lambda: BestBound(1, None, None))

    def to_json(self) -> dict:
        return {
            "graph": self.graph_id,
            "diameter": self.diameter,
            "diameter_ub": self.diameter_ub,
            "rounding": "ceil",
            "rows": [r.to_json() for r in self.rows],
            "best_rubbling_lb": self.best_rubbling_lb.to_json(),
            "best_pebbling_lb": self.best_pebbling_lb.to_json(),
        }


def _best(rows: list[BoundRow], names: tuple[str, ...]) -> BestBound:
    best = BestBound(1, None, None)
    for row in rows:
        for name, value in row.values(names).items():
            if value > best.value:
                best = BestBound(value, row.k, name)
    return best


def best_bounds(
    g: Graph,
    k_range: Iterable[int] | None = None,
    graph_id: str = "",
    gammas: GammaCache | None = None,
) -> BoundReport:
    """Evaluate every applicable bound for each k and keep the best.

    ``k_range`` defaults to ``2 .. diam + 1``; values below 2 are skipped.
    Ties keep the smallest k and the earliest theorem.
    """
    gam = _gammas(g, gammas)
    if k_range is None:
        k_range = range(2, g.diameter + 2)
    report = BoundReport(graph_id or g.name, g.diameter, diameter_upper_bound(g))
    for k in sorted(set(k_range)):
        if k < 2:
            continue
        row = BoundRow(
            k,
            gam(k - 1),
            gam(k - 2),
            thm3_lower_bound(g, k, gam),
            thm5_rubbling_lower_bound(g, k, gam),
        )
        if k >= 3 and g.num_edges > 0:
            row.thm4_mid = thm4_mid_lower_bound(g, k, gam)
            row.thm6 = thm6_pebbling_lower_bound(g, k, gam)
        report.rows.append(row)
    report.best_rubbling_lb = _best(report.rows, RUBBLING_BOUNDS)
    report.best_pebbling_lb = _best(report.rows, PEBBLING_BOUNDS)
    return report
