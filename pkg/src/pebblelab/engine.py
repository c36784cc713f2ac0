"""Pebble distributions, pebbling/rubbling moves, weights and reachability."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from pebblelab.dyadic import Dyadic
from pebblelab.graphs import Graph, from_bitset, to_bitset

MAX_SEARCH_PEBBLES = 255


class MoveSystem(enum.Enum):
    PEBBLING = "pebbling"
    RUBBLING = "rubbling"


class InvalidMoveError(ValueError):
    """The move does not fit the graph (non-adjacent endpoints, repeated source)."""


class MoveNotAllowedError(ValueError):
    """The move is well formed but the distribution lacks the pebbles for it."""


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class PebblingMove:
    src: int
    dst: int

    def to_json(self) -> dict:
        return {"type": "pebbling", "from": self.src, "to": self.dst}


@dataclass(frozen=True)
class RubblingMove:
    src1: int
    src2: int
    dst: int

    def to_json(self) -> dict:
        return {"type": "rubbling", "from1": self.src1, "from2": self.src2, "to": self.dst}


Move = Union[PebblingMove, RubblingMove]


def move_from_json(rec: dict) -> Move:
    if rec["type"] == "pebbling":
        return PebblingMove(rec["from"], rec["to"])
    if rec["type"] == "rubbling":
        return RubblingMove(rec["from1"], rec["from2"], rec["to"])
    raise ValueError(f"unknown move type {rec['type']!r}")


@dataclass(frozen=True)
class Distribution:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("pebble counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def empty(cls, n: int) -> Distribution:
        return cls((0,) * n)

    @classmethod
    def from_mapping(cls, n: int, pebbles: dict[int, int]) -> Distribution:
        counts = [0] * n
        for v, c in pebbles.items():
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for {n} vertices")
            counts[v] += c
        return cls(tuple(counts))

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return sum(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def add(self, v: int, count: int = 1) -> Distribution:
        counts = list(self.counts)
        counts[v] += count
        return Distribution(tuple(counts))

    def to_json(self) -> dict:
        return {"n": self.n, "counts": list(self.counts)}


def support(p: Distribution) -> int:
    """Bitset of vertices holding at least one pebble."""
    return to_bitset(v for v, c in enumerate(p.counts) if c > 0)


def restrict(p: Distribution, s: int) -> Distribution:
    return Distribution(tuple(c if s >> v & 1 else 0 for v, c in enumerate(p.counts)))


def check_move(g: Graph, m: Move) -> None:
    """Raise :class:`InvalidMoveError` unless ``m`` is a legal move shape on ``g``."""
    if isinstance(m, PebblingMove):
        ends = (m.src, m.dst)
    else:
        ends = (m.src1, m.src2, m.dst)
    if not all(0 <= v < g.n for v in ends):
        raise InvalidMoveError(f"{m} references a vertex outside the graph")
    if isinstance(m, PebblingMove):
        if not g.adjacent(m.src, m.dst):
            raise InvalidMoveError(f"{m.src} and {m.dst} are not adjacent")
    else:
        if m.src1 == m.src2:
            raise InvalidMoveError("strict rubbling move needs two distinct sources")
        if not (g.adjacent(m.src1, m.dst) and g.adjacent(m.src2, m.dst)):
            raise InvalidMoveError(f"{m.dst} is not a common neighbour of {m.src1} and {m.src2}")


def is_allowed(g: Graph, p: Distribution, m: Move, system: MoveSystem) -> bool:
    check_move(g, m)
    if isinstance(m, PebblingMove):
        return p[m.src] >= 2
    return system is MoveSystem.RUBBLING and p[m.src1] >= 1 and p[m.src2] >= 1


def apply_move(
    g: Graph, p: Distribution, m: Move, system: MoveSystem = MoveSystem.RUBBLING
) -> Distribution:
    if not is_allowed(g, p, m, system):
        raise MoveNotAllowedError(f"{m} is not allowed under the current distribution")
    counts = list(p.counts)
    if isinstance(m, PebblingMove):
        counts[m.src] -= 2
    else:
        counts[m.src1] -= 1
        counts[m.src2] -= 1
    counts[m.dst] += 1
    return Distribution(tuple(counts))


def replay(
    g: Graph, p: Distribution, moves: Iterable[Move], system: MoveSystem
) -> Distribution:
    for m in moves:
        p = apply_move(g, p, m, system)
    return p


def weight(g: Graph, p: Distribution, u: int) -> Dyadic:
    """Exact sum of p(v) * 2**-d(u, v) over all vertices."""
    return Dyadic(_scaled_weight(g, p.counts, u), g.diameter)


def _scaled_weight(g: Graph, counts: Sequence[int], u: int) -> int:
    # weight * 2**diam, an integer
    diam = g.diameter
    row = g.dist[u]
    return sum(c << (diam - row[v]) for v, c in enumerate(counts) if c)


@lru_cache(maxsize=64)
def _common_neighbours(g: Graph) -> dict[tuple[int, int], tuple[int, ...]]:
    out: dict[tuple[int, int], tuple[int, ...]] = {}
    for a in range(g.n):
        for b in range(a + 1, g.n):
            common = g.masks[a] & g.masks[b]
            if common:
                out[(a, b)] = tuple(from_bitset(common))
    return out


@dataclass
class ReachResult:
    target: int
    reachable: bool
    witness: list[Move] | None = None
    reason: str | None = None
    states: int = 0

    def to_json(self) -> dict:
        out = {"target": self.target, "reachable": self.reachable}
        if self.reachable:
            out["witness"] = [m.to_json() for m in self.witness or []]
        else:
            out["reason"] = self.reason
        return out


@dataclass
class QueryBudget:
    """Counts reachability queries; ``limit=None`` means unlimited."""

    limit: int | None = None
    used: int = 0

    def spend(self, amount: int = 1) -> None:
        if self.limit is not None and self.used + amount > self.limit:
            raise BudgetExhausted(f"query budget of {self.limit} exhausted")
        self.used += amount


def reachable(
    g: Graph,
    p: Distribution,
    target: int,
    system: MoveSystem,
    budget: QueryBudget | None = None,
    prune: bool = True,
) -> ReachResult:
    """Decide whether some executable move sequence puts a pebble on ``target``.

    Depth-first search over distributions with a visited set; every move
    lowers the pebble total, so the state space is a finite DAG.  With
    ``prune`` the search abandons any state whose weight at the target is
    below one.
    """
    if p.n != g.n:
        raise ValueError(f"distribution has {p.n} entries, graph has {g.n} vertices")
    if budget is not None:
        budget.spend()
    if p[target] >= 1:
        return ReachResult(target, True, [], None, 0)
    if p.size > MAX_SEARCH_PEBBLES:
        raise ValueError(f"distribution of size {p.size} exceeds {MAX_SEARCH_PEBBLES} pebbles")

    diam = g.diameter
    threshold = 1 << diam
    w0 = _scaled_weight(g, p.counts, target)
    if prune and w0 < threshold:
        return ReachResult(target, False, None, "weight-pruned", 0)

    tdist = g.dist[target]
    unit = [1 << (diam - tdist[v]) for v in range(g.n)]
    adj = g.adj
    rubbling = system is MoveSystem.RUBBLING
    common = _common_neighbours(g) if rubbling else {}
    seen: set[bytes] = set()
    n = g.n

    def dfs(state: bytearray, w: int) -> list[Move] | None:
        key = bytes(state)
        if key in seen:
            return None
        seen.add(key)
        for u in range(n):
            if state[u] < 2:
                continue
            for v in adj[u]:
                if v == target:
                    return [PebblingMove(u, v)]
                nw = w - 2 * unit[u] + unit[v]
                if prune and nw < threshold:
                    continue
                state[u] -= 2
                state[v] += 1
                sub = dfs(state, nw)
                state[u] += 2
                state[v] -= 1
                if sub is not None:
                    return [PebblingMove(u, v)] + sub
        if not rubbling:
            return None
        occupied = [u for u in range(n) if state[u]]
        for i, a in enumerate(occupied):
            for b in occupied[i + 1 :]:
                for v in common.get((a, b), ()):
                    if v == target:
                        return [RubblingMove(a, b, v)]
                    nw = w - unit[a] - unit[b] + unit[v]
                    if prune and nw < threshold:
                        continue
                    state[a] -= 1
                    state[b] -= 1
                    state[v] += 1
                    sub = dfs(state, nw)
                    state[a] += 1
                    state[b] += 1
                    state[v] -= 1
                    if sub is not None:
                        return [RubblingMove(a, b, v)] + sub
        return None

    witness = dfs(bytearray(p.counts), w0)
    if witness is None:
        return ReachResult(target, False, None, "search-exhausted", len(seen))
    return ReachResult(target, True, witness, None, len(seen))


@dataclass
class SolveResult:
    solvable: bool
    table: dict[int, ReachResult] = field(default_factory=dict)

    @property
    def failed(self) -> list[int]:
        return sorted(v for v, r in self.table.items() if not r.reachable)

    def to_json(self) -> dict:
        return {
            "solvable": self.solvable,
            "vertices": [self.table[v].to_json() for v in sorted(self.table)],
        }


def query_order(g: Graph, p: Distribution) -> list[int]:
    """Vertices by descending distance from the support's heaviest vertex.

    Far vertices are the likeliest to be unreachable, so testing them first
    lets :func:`solvable` fail fast.
    """
    supp = from_bitset(support(p))
    if not supp:
        return list(range(g.n))
    anchor = max(supp, key=lambda v: (_scaled_weight(g, p.counts, v), -v))
    row = g.dist[anchor]
    return sorted(range(g.n), key=lambda v: (-row[v], v))


def solvable(
    g: Graph,
    p: Distribution,
    system: MoveSystem,
    budget: QueryBudget | None = None,
    short_circuit: bool = True,
    prune: bool = True,
) -> SolveResult:
    """Check that every vertex is reachable.

    With ``short_circuit`` the table stops at the first unreachable vertex;
    otherwise every vertex is decided.
    """
    result = SolveResult(True)
    for v in query_order(g, p):
        r = reachable(g, p, v, system, budget, prune)
        result.table[v] = r
        if not r.reachable:
            result.solvable = False
            if short_circuit:
                break
    return result


# ---------------------------------------------------------------------------
# text / JSON formats


def load_distribution(text: str) -> Distribution:
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        counts = data["counts"]
        if "n" in data and data["n"] != len(counts):
            raise ValueError(f"'n' is {data['n']} but counts has {len(counts)} entries")
        return Distribution(tuple(counts))
    n: int | None = None
    counts: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "dist" and len(parts) == 2 and n is None:
                n = int(parts[1])
                counts = [0] * n
            elif parts[0] == "pebbles" and len(parts) == 3 and n is not None:
                v, c = int(parts[1]), int(parts[2])
                if not 0 <= v < n or c < 0:
                    raise ValueError
                counts[v] += c
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    if n is None:
        raise ValueError("missing 'dist <n>' header")
    return Distribution(tuple(counts))


def save_distribution(p: Distribution) -> str:
    lines = [f"dist {p.n}"]
    lines.extend(f"pebbles {v} {c}" for v, c in enumerate(p.counts) if c)
    return "\n".join(lines) + "\n"
