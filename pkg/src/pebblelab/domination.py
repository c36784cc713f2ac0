"""Exact distance-k domination numbers.

Domination is treated as set cover: vertex ``v`` covers its distance-k ball,
stored as an integer bitset.  The optimum is found by iterative deepening on
the set size with a branch-and-bound feasibility test, then a second,
lexicographic search picks the canonical (lexicographically smallest)
certificate of that size.
"""

from __future__ import annotations

from dataclasses import dataclass

from pebblelab.graphs import Graph, from_bitset, to_bitset


@dataclass
class DominationCertificate:
    k: int
    vertices: list[int]
    optimal: bool
    lower_bound_proof: str  # "exhausted-all-smaller" or "none"
    nodes: int = 0

    @property
    def gamma(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "gamma": self.gamma,
            "set": self.vertices,
            "proved_optimal": self.optimal,
            "lower_bound_proof": self.lower_bound_proof,
        }


def is_distance_k_dominating(g: Graph, s: int, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be nonnegative")
    members = from_bitset(s)
    return all(any(g.dist[v][u] <= k for u in members) for v in range(g.n))


def balls(g: Graph, k: int) -> list[int]:
    return [g.ball(v, k) for v in range(g.n)]


class _Search:
    def __init__(self, g: Graph, k: int):
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.balls = balls(g, k)
        # by closed-ball size, largest first
        self.order = sorted(range(g.n), key=lambda v: (-self.balls[v].bit_count(), v))
        self.nodes = 0

    def _hopeless(self, undominated: int, left: int, candidates=None) -> bool:
        need = undominated.bit_count()
        pool = self.order if candidates is None else candidates
        gains = sorted(((self.balls[v] & undominated).bit_count() for v in pool), reverse=True)
        return sum(gains[:left]) < need

    def cover(self, size: int) -> list[int] | None:
        """Some dominating set of at most ``size`` vertices, or None if none exists."""

        def rec(covered: int, left: int) -> list[int] | None:
            self.nodes += 1
            undominated = self.full & ~covered
            if not undominated:
                return []
            if left == 0 or self._hopeless(undominated, left):
                return None
            # branch on the undominated vertex with the fewest dominators
            pick = min(from_bitset(undominated), key=lambda u: (self.balls[u].bit_count(), u))
            options = from_bitset(self.balls[pick])
            options.sort(key=lambda v: (-(self.balls[v] & undominated).bit_count(), v))
            for v in options:
                sub = rec(covered | self.balls[v], left - 1)
                if sub is not None:
                    return [v] + sub
            return None

        return rec(0, size)

    def lex_sets(self, size: int):
        """Dominating sets of exactly ``size`` vertices in lexicographic order."""
        n = self.n
        # last index able to dominate each vertex
        last_dominator = [max(from_bitset(b)) for b in self.balls]

        def rec(start: int, covered: int, left: int):
            self.nodes += 1
            undominated = self.full & ~covered
            if left == 0:
                if not undominated:
                    yield []
                return
            if undominated:
                deadline = min(last_dominator[u] for u in from_bitset(undominated))
                if self._hopeless(undominated, left, range(start, n)):
                    return
            else:
                deadline = n - 1
            for v in range(start, min(deadline, n - left) + 1):
                for rest in rec(v + 1, covered | self.balls[v], left - 1):
                    yield [v] + rest

        return rec(0, 0, size)

    def lex_first(self, size: int) -> list[int] | None:
        return next(self.lex_sets(size), None)


def iter_dominating_sets(g: Graph, k: int, size: int):
    """Yield every distance-k dominating set of exactly ``size`` vertices, lexicographically."""
    return _Search(g, k).lex_sets(size)


def exists_dominating_set(g: Graph, k: int, size: int) -> tuple[list[int] | None, int]:
    """Branch-and-bound test for a distance-k dominating set of at most ``size``.

    Returns the set found (or None) and the number of search nodes visited.
    """
    search = _Search(g, k)
    found = search.cover(size)
    return found, search.nodes


def gamma(g: Graph, k: int) -> tuple[int, DominationCertificate]:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return g.n, DominationCertificate(0, list(range(g.n)), True, "exhausted-all-smaller")
    if k >= g.radius:
        centre = min(v for v in range(g.n) if g.eccentricity(v) <= k)
        return 1, DominationCertificate(k, [centre], True, "exhausted-all-smaller")
    search = _Search(g, k)
    size = 1
    while search.cover(size) is None:
        size += 1
    canonical = search.lex_first(size)
    assert canonical is not None and is_distance_k_dominating(g, to_bitset(canonical), k)
    return size, DominationCertificate(k, canonical, True, "exhausted-all-smaller", search.nodes)


class GammaCache:
    """Memoised γ_k values for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self._values: dict[int, tuple[int, DominationCertificate]] = {}

    def certificate(self, k: int) -> DominationCertificate:
        if k not in self._values:
            self._values[k] = gamma(self.g, k)
        return self._values[k][1]

    def __call__(self, k: int) -> int:
        return self.certificate(k).gamma
