"""Simple connected graphs with a precomputed distance table.

Vertices are dense 0-based indices; labels are display-only.  Besides the
plain builders this module knows the families used throughout the package
(complete graphs, paths, cycles, Hamming graphs) and Cartesian products.
"""

from __future__ import annotations

import itertools
import string
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_VERTEX_BUDGET = 4096


class GraphError(ValueError):
    """Base class for invalid graph input."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NonSimpleGraphError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class GraphSizeError(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple connected graph.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``, ``dist[u][v]`` the
    shortest-path edge count, and ``masks[v]`` the neighbourhood of ``v`` as an
    integer bitset.  Use :func:`from_edges` (or a builder) rather than calling
    the constructor directly.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    dist: tuple[tuple[int, ...], ...]
    name: str = ""
    masks: tuple[int, ...] = field(repr=False, default=())

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def diameter(self) -> int:
        return max(max(row) for row in self.dist)

    @property
    def radius(self) -> int:
        return min(self.eccentricity(v) for v in range(self.n))

    def eccentricity(self, v: int) -> int:
        return max(self.dist[v])

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degree_sequence(self) -> list[int]:
        return sorted(len(a) for a in self.adj)

    def distance_histogram(self) -> dict[int, int]:
        """Counts of ordered vertex pairs by distance."""
        return dict(sorted(Counter(d for row in self.dist for d in row).items()))

    def ball(self, v: int, k: int) -> int:
        """Bitset of vertices within distance ``k`` of ``v``."""
        row = self.dist[v]
        return sum(1 << u for u in range(self.n) if row[u] <= k)

    def same_structure(self, other: Graph) -> bool:
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels


def _bfs(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    n = len(adj)
    d = [-1] * n
    d[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if d[v] < 0:
                d[v] = d[u] + 1
                queue.append(v)
    return d


def from_edges(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
    name: str = "",
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Self-loops and repeated edges raise :class:`NonSimpleGraphError`; a graph
    with more than one component raises :class:`DisconnectedGraphError`.
    """
    if n < 1:
        raise GraphError("graph needs at least one vertex")
    if n > vertex_budget:
        raise GraphSizeError(f"{n} vertices exceeds the vertex budget of {vertex_budget}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise NonSimpleGraphError(f"non-simple: self-loop at vertex {u}")
        if v in nbrs[u]:
            raise NonSimpleGraphError(f"non-simple: repeated edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adj = tuple(tuple(sorted(s)) for s in nbrs)
    dist = []
    for s in range(n):
        row = _bfs(adj, s)
        if -1 in row:
            raise DisconnectedGraphError(
                f"disconnected: vertex {row.index(-1)} unreachable from vertex {s}"
            )
        dist.append(tuple(row))
    if labels is None:
        labels = [str(i) for i in range(n)]
    elif len(labels) != n:
        raise GraphError(f"expected {n} labels, got {len(labels)}")
    masks = tuple(sum(1 << v for v in a) for a in adj)
    return Graph(n, adj, tuple(labels), tuple(dist), name, masks)


def build_complete(m: int) -> Graph:
    if m < 1:
        raise GraphError("complete graph needs m >= 1")
    return from_edges(m, itertools.combinations(range(m), 2), name=f"K{m}")


def build_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return from_edges(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def build_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)), name=f"C{n}")


def _split_label(label: str) -> list[str]:
    if label.startswith("(") and label.endswith(")"):
        return label[1:-1].split(",")
    return [label]


def cartesian_product(
    g: Graph, h: Graph, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> Graph:
    """G□H with vertex ``(a, b)`` at index ``a * h.n + b``.

    Labels flatten left-associatively, so a triple product reads ``(a,b,c)``.
    """
    n = g.n * h.n
    if n > vertex_budget:
        raise GraphSizeError(f"{n} vertices exceeds the vertex budget of {vertex_budget}")
    edges = []
    for a in range(g.n):
        for b, b2 in h.edges:
            edges.append((a * h.n + b, a * h.n + b2))
    for a, a2 in g.edges:
        for b in range(h.n):
            edges.append((a * h.n + b, a2 * h.n + b))
    labels = [
        "(" + ",".join(_split_label(la) + _split_label(lb)) + ")"
        for la in g.labels
        for lb in h.labels
    ]
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return from_edges(n, edges, labels, name, vertex_budget)


def product_of(factors: Sequence[Graph], vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    result = factors[0]
    for f in factors[1:]:
        result = cartesian_product(result, f, vertex_budget)
    return result


def build_hamming(m: int, k: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """Words of length ``k`` over an ``m``-letter alphabet, adjacent at Hamming distance one.

    Words are indexed in lexicographic order (first letter most significant),
    which coincides with the index layout of the k-fold product of K_m.
    """
    if m < 1 or k < 1:
        raise GraphError("hamming graph needs m >= 1 and k >= 1")
    if m**k > vertex_budget:
        raise GraphSizeError(f"{m}^{k} vertices exceeds the vertex budget of {vertex_budget}")
    alphabet = string.ascii_lowercase if m <= 26 else None
    words = list(itertools.product(range(m), repeat=k))
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for w in words:
        for pos in range(k):
            for c in range(w[pos] + 1, m):
                other = w[:pos] + (c,) + w[pos + 1 :]
                edges.append((index[w], index[other]))
    if alphabet:
        labels = ["".join(alphabet[c] for c in w) for w in words]
    else:
        labels = ["(" + ",".join(map(str, w)) + ")" for w in words]
    return from_edges(len(words), edges, labels, f"H({m},{k})", vertex_budget)


# Vertex sets are int bitsets throughout the package.

def to_bitset(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_bitset(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def closed_neighborhood(g: Graph, s: int) -> int:
    result = s
    for v in from_bitset(s):
        result |= g.masks[v]
    return result


def open_neighborhood(g: Graph, s: int) -> int:
    return closed_neighborhood(g, s) & ~s


# ---------------------------------------------------------------------------
# text format

FAMILY_ARITY = {"complete": 1, "path": 1, "cycle": 1, "hamming": 2}


def build_family(tokens: Sequence[str], vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """Expand ``hamming 3 2`` / ``product complete 3 complete 5`` style specs."""
    if not tokens:
        raise GraphParseError("empty family specification")
    head, rest = tokens[0], list(tokens[1:])
    if head == "product":
        factors = []
        while rest:
            name = rest.pop(0)
            if name not in FAMILY_ARITY:
                raise GraphParseError(f"unknown family {name!r}")
            arity = FAMILY_ARITY[name]
            if len(rest) < arity:
                raise GraphParseError(f"family {name!r} needs {arity} parameter(s)")
            factors.append(build_family([name] + rest[:arity], vertex_budget))
            del rest[:arity]
        if not factors:
            raise GraphParseError("product needs at least one factor")
        total = 1
        for f in factors:
            total *= f.n
        if total > vertex_budget:
            raise GraphSizeError(
                f"{total} vertices exceeds the vertex budget of {vertex_budget}"
            )
        return product_of(factors, vertex_budget)
    if head not in FAMILY_ARITY:
        raise GraphParseError(f"unknown family {head!r}")
    if len(rest) != FAMILY_ARITY[head]:
        raise GraphParseError(f"family {head!r} needs {FAMILY_ARITY[head]} parameter(s)")
    try:
        params = [int(x) for x in rest]
    except ValueError as exc:
        raise GraphParseError(f"non-integer parameter in {' '.join(tokens)!r}") from exc
    if head == "complete":
        g = build_complete(params[0])
    elif head == "path":
        g = build_path(params[0])
    elif head == "cycle":
        g = build_cycle(params[0])
    else:
        g = build_hamming(params[0], params[1], vertex_budget)
    if g.n > vertex_budget:
        raise GraphSizeError(f"{g.n} vertices exceeds the vertex budget of {vertex_budget}")
    return g


def load_graph(text: str, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    n: int | None = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    family: Graph | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key == "family":
            if n is not None or family is not None:
                raise GraphParseError("family line must be the only graph definition", lineno)
            try:
                family = build_family(parts[1:], vertex_budget)
            except GraphParseError as exc:
                raise GraphParseError(str(exc), lineno) from exc
            continue
        if family is not None:
            raise GraphParseError(f"unexpected {key!r} after family line", lineno)
        try:
            if key == "graph":
                if n is not None:
                    raise GraphParseError("duplicate graph header", lineno)
                if len(parts) != 2:
                    raise GraphParseError("expected 'graph <n>'", lineno)
                n = int(parts[1])
                if n > vertex_budget:
                    raise GraphSizeError(
                        f"{n} vertices exceeds the vertex budget of {vertex_budget}"
                    )
            elif n is None:
                raise GraphParseError(f"{key!r} before 'graph <n>' header", lineno)
            elif key == "label":
                if len(parts) < 3:
                    raise GraphParseError("expected 'label <i> <string>'", lineno)
                i = int(parts[1])
                if not 0 <= i < n:
                    raise GraphParseError(f"label index {i} out of range", lineno)
                labels[i] = line.split(None, 2)[2]
            elif key == "edge":
                if len(parts) != 3:
                    raise GraphParseError("expected 'edge <u> <v>'", lineno)
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphParseError(f"edge ({u}, {v}) out of range", lineno)
                edges.append((u, v))
            else:
                raise GraphParseError(f"unknown directive {key!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphParseError(f"bad integer in {line!r}", lineno) from exc
    if family is not None:
        return family
    if n is None:
        raise GraphParseError("missing 'graph <n>' header")
    label_list = [labels.get(i, str(i)) for i in range(n)]
    return from_edges(n, edges, label_list, vertex_budget=vertex_budget)


def save_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    for i, label in enumerate(g.labels):
        if label != str(i):
            lines.append(f"label {i} {label}")
    lines.extend(f"edge {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_stats(g: Graph) -> dict:
    return {
        "n": g.n,
        "m": g.num_edges,
        "diameter": g.diameter,
        "degree_histogram": {str(d): c for d, c in sorted(Counter(g.degree_sequence()).items())},
    }


def random_connected_graph(rng, n: int, edge_prob: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges; ``rng`` is a ``random.Random``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < edge_prob:
            edges.add((u, v))
    return from_edges(n, sorted(edges), name=f"random{n}")
