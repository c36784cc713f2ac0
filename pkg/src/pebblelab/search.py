"""Exact optimal pebbling and rubbling numbers.

The search scans distribution sizes upward from the best available lower
bound.  Each size is enumerated stars-and-bars style and every surviving
distribution is tested for solvability; the first solvable one settles the
value.  Cheap upper bounds (a big stack on a central vertex, doubled stacks
on dominating sets) are tried first so the scan has a ceiling and often
never runs at all.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator

from pebblelab.bounds import best_bounds
from pebblelab.domination import GammaCache, iter_dominating_sets
from pebblelab.engine import (
    BudgetExhausted,
    Distribution,
    MoveSystem,
    QueryBudget,
    SolveResult,
    solvable,
)
from pebblelab.graphs import Graph, build_complete, cartesian_product

log = logging.getLogger(__name__)

# cap on dominating sets tried per radius while seeding the upper bound
SEED_SET_LIMIT = 20000


class InconclusiveError(RuntimeError):
    """The query budget ran out before the bracket closed."""

    def __init__(self, lb: int, ub: int, witness: Distribution | None = None):
        self.lb = lb
        self.ub = ub
        self.witness = witness
        super().__init__(f"inconclusive: optimum lies in [{lb}, {ub}]")


@dataclass
class EnumerationStats:
    raw: int = 0
    weight_filtered: int = 0
    support_filtered: int = 0

    @property
    def passed(self) -> int:
        return self.raw - self.weight_filtered - self.support_filtered


def enumerate_distributions(
    g: Graph,
    size: int,
    system: MoveSystem | None = None,
    filters: bool = True,
    stats: EnumerationStats | None = None,
) -> Iterator[Distribution]:
    """Every multiset of ``size`` pebbles on the vertices, each exactly once.

    Order: the count on vertex 0 descends from ``size`` to 0, then vertex 1,
    and so on.  With ``filters`` two classes of distributions that can never
    be solvable are dropped:

    * weight filter: some vertex has weight below one;
    * support filter (pebbling only): no vertex holds two pebbles yet some
      vertex is empty, so no move is possible.

    Whole subtrees are skipped when the pebbles still to be placed cannot
    lift every vertex to weight one; ``stats.raw`` still counts the raw
    distributions those subtrees contained.
    """
    if size < 0:
        raise ValueError("size must be nonnegative")
    n = g.n
    if stats is None:
        stats = EnumerationStats()
    diam = g.diameter
    threshold = 1 << diam
    # unit[v][u]: scaled weight one pebble on v adds at u
    unit = [[1 << (diam - g.dist[v][u]) for u in range(n)] for v in range(n)]
    # best[i][u]: most weight one pebble on a vertex >= i can add at u
    best = [[0] * n for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        best[i] = [max(a, b) for a, b in zip(best[i + 1], unit[i])]
    support_filter = filters and system is MoveSystem.PEBBLING
    counts = [0] * n
    weights = [0] * n

    def rec(i: int, remaining: int) -> Iterator[Distribution]:
        if i == n - 1:
            counts[i] = remaining
            stats.raw += 1
            ok = True
            if filters:
                row = unit[i]
                if any(w + remaining * row[u] < threshold for u, w in enumerate(weights)):
                    stats.weight_filtered += 1
                    ok = False
            if ok and support_filter and max(counts) <= 1 and size < n:
                stats.support_filtered += 1
                ok = False
            if ok:
                yield Distribution(tuple(counts))
            counts[i] = 0
            return
        if filters:
            cap = best[i]
            if any(w + remaining * cap[u] < threshold for u, w in enumerate(weights)):
                dropped = _multichoose(n - i, remaining)
                stats.raw += dropped
                stats.weight_filtered += dropped
                return
        row = unit[i]
        for c in range(remaining, -1, -1):
            counts[i] = c
            if c:
                for u in range(n):
                    weights[u] += c * row[u]
            yield from rec(i + 1, remaining - c)
            if c:
                for u in range(n):
                    weights[u] -= c * row[u]
        counts[i] = 0

    if n == 0:
        return
    yield from rec(0, size)


def _multichoose(slots: int, items: int) -> int:
    return math.comb(items + slots - 1, items)


@dataclass
class ExhaustRecord:
    size: int
    system: MoveSystem
    filters: bool
    raw: int
    tested: int
    solvable_found: Distribution | None

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "system": self.system.value,
            "filters": self.filters,
            "raw_distributions": self.raw,
            "tested": self.tested,
            "solvable_found": None if self.solvable_found is None else self.solvable_found.to_json(),
        }


def exhaust_size(
    g: Graph,
    size: int,
    system: MoveSystem,
    filters: bool = True,
    budget: QueryBudget | None = None,
) -> ExhaustRecord:
    """Search all distributions of one size for a solvable one."""
    stats = EnumerationStats()
    tested = 0
    for p in enumerate_distributions(g, size, system, filters, stats):
        tested += 1
        if solvable(g, p, system, budget).solvable:
            return ExhaustRecord(size, system, filters, stats.raw, tested, p)
    return ExhaustRecord(size, system, filters, stats.raw, tested, None)


@dataclass
class OptimumCertificate:
    system: MoveSystem
    value: int
    witness: Distribution
    solutions: SolveResult
    lower_bound_evidence: dict
    exhausted: list[ExhaustRecord] = field(default_factory=list)
    queries: int = 0
    brackets: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "system": self.system.value,
            "value": self.value,
            "witness_distribution": self.witness.to_json(),
            "witness_solutions": self.solutions.to_json()["vertices"],
            "lower_bound_evidence": self.lower_bound_evidence,
            "exhausted": [r.to_json() for r in self.exhausted],
            "reachability_queries": self.queries,
        }


def upper_bound_seed(
    g: Graph,
    system: MoveSystem,
    gammas: GammaCache | None = None,
    stop_at: int = 0,
    budget: QueryBudget | None = None,
) -> Distribution:
    """Smallest solvable distribution among a few structured candidates.

    Candidates: ``2**ecc`` pebbles on a central vertex (always solvable), then
    ``2**i`` pebbles on every vertex of a minimum distance-j dominating set
    for ``1 <= i <= j``.  Stops once a candidate of size ``stop_at`` or less
    is found.
    """
    gammas = gammas or GammaCache(g)
    centre = min(range(g.n), key=lambda v: (g.eccentricity(v), v))
    best = Distribution.from_mapping(g.n, {centre: 2 ** g.eccentricity(centre)})
    families = sorted(
        (gammas(j) * 2**i, j, i) for j in range(1, g.radius) for i in range(1, j + 1)
    )
    for size, j, i in families:
        if size >= best.size or best.size <= stop_at:
            break
        for dom in itertools.islice(iter_dominating_sets(g, j, gammas(j)), SEED_SET_LIMIT):
            p = Distribution.from_mapping(g.n, {v: 2**i for v in dom})
            if solvable(g, p, system, budget).solvable:
                best = p
                break
    return best


def optimal_number(
    g: Graph,
    system: MoveSystem,
    budget: int | None = None,
    use_theorems: bool = True,
    filters: bool = True,
    k_range=None,
    seed: bool = True,
) -> OptimumCertificate:
    """Exact optimal pebbling (PEBBLING) or rubbling (RUBBLING) number.

    ``budget`` caps the number of reachability queries; when it runs out an
    :class:`InconclusiveError` carrying the current bracket is raised.  With
    ``use_theorems=False`` and ``seed=False`` this is a plain brute-force
    scan from size 1.
    """
    queries = QueryBudget(budget)
    gammas = GammaCache(g)

    lb, evidence = 1, None
    if use_theorems and g.n > 1:
        report = best_bounds(g, k_range, gammas=gammas)
        best = report.best_pebbling_lb if system is MoveSystem.PEBBLING else report.best_rubbling_lb
        if best.value > lb:
            lb = best.value
            evidence = {"kind": "theorem-bound", "name": best.name, "k": best.k}
    log.debug("lower bound %d", lb)

    ub = 2**g.radius
    brackets: list[tuple[int, int]] = []
    records: list[ExhaustRecord] = []
    try:
        if seed:
            ub_dist = upper_bound_seed(g, system, gammas, stop_at=lb, budget=queries)
        else:
            centre = min(range(g.n), key=lambda v: (g.eccentricity(v), v))
            ub_dist = Distribution.from_mapping(g.n, {centre: 2 ** g.eccentricity(centre)})
        ub = ub_dist.size
        if lb > ub:
            raise RuntimeError(f"lower bound {lb} exceeds solvable size {ub}")
        brackets.append((lb, ub))

        witness = ub_dist
        for size in range(lb, ub):
            rec = exhaust_size(g, size, system, filters, queries)
            records.append(rec)
            if rec.solvable_found is not None:
                witness = rec.solvable_found
                brackets.append((size, size))
                break
            brackets.append((size + 1, ub))
        else:
            brackets.append((ub, ub))
    except BudgetExhausted:
        lo, hi = brackets[-1] if brackets else (lb, ub)
        raise InconclusiveError(lo, hi) from None

    value = witness.size
    if value > lb or evidence is None:
        evidence = {
            "kind": "exhausted-all-smaller",
            "size": value - 1,
            "filters": filters,
        }
    solutions = solvable(g, witness, system, short_circuit=False)
    assert solutions.solvable
    return OptimumCertificate(
        system, value, witness, solutions, evidence, records, queries.used, brackets
    )


def lift_through_product(
    g: Graph, p: Distribution, n: int, system: MoveSystem = MoveSystem.PEBBLING
) -> Distribution:
    """Double a solvable distribution of ``g`` onto layer 0 of g□K_n.

    The result lives on ``cartesian_product(g, build_complete(n))``, where
    vertex ``(v, 0)`` has index ``v * n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not solvable(g, p, system).solvable:
        raise ValueError("lift needs a solvable distribution")
    return Distribution.from_mapping(g.n * n, {v * n: 2 * c for v, c in enumerate(p.counts) if c})


def lifted_graph(g: Graph, n: int) -> Graph:
    return cartesian_product(g, build_complete(n))
