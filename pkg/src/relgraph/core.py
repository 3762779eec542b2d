"""Core value types: graphs, binary relations, partitions, weighted graphs.

Vertices are dense integers ``0..n-1``; external vertex names live only in
an optional label table used by the I/O layer. Graphs are undirected and
may carry loops, stored as normalized ``(min, max)`` pairs. Every type is
an immutable value and every operation is a pure function, so everything
here is safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations


class UniverseMismatchError(ValueError):
    """Relation and graph universes do not line up."""


class ImageNotFullError(ValueError):
    """Composition needs every target vertex to have a pre-image."""


class LoopsNotAllowedError(ValueError):
    """Operation is only defined for simple (loop-free) graphs."""


class CapExceededError(ValueError):
    """Input exceeds the configured exhaustive-search cap."""


def _normalize_edges(edges) -> frozenset[tuple[int, int]]:
    return frozenset((u, v) if u <= v else (v, u) for u, v in edges)


@dataclass(frozen=True, eq=False)
class Graph:
    """Finite undirected graph with loops allowed.

    ``edges`` must hold normalized pairs ``(u, v)`` with ``u <= v``; use
    :func:`graph_from_edges` for arbitrary input. Equality and hashing
    ignore ``labels`` (they are I/O metadata, not graph identity).
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range or not normalized")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table size must match vertex count")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks; a loop puts a vertex in its own mask."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def neighbors(self, v: int) -> frozenset[int]:
        """Open neighborhood N(v); contains v itself exactly when v has a loop."""
        mask = self.adjacency[v]
        return frozenset(u for u in range(self.n) if mask >> u & 1)

    def closed_neighbors(self, v: int) -> frozenset[int]:
        """Closed neighborhood N[v] = N(v) plus v."""
        return self.neighbors(v) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    @property
    def is_simple(self) -> bool:
        return not any(u == v for u, v in self.edges)

    def loop_vertices(self) -> list[int]:
        return sorted(u for u, v in self.edges if u == v)

    def isolated_vertices(self) -> list[int]:
        """Vertices with no incident edge at all. A loop vertex is not isolated."""
        return [v for v in range(self.n) if self.adjacency[v] == 0]

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def graph_from_edges(n: int, edges, labels=None) -> Graph:
    """Build a graph from an arbitrary iterable of (u, v) pairs."""
    return Graph(n, _normalize_edges(edges), tuple(labels) if labels else None)


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    """Path on n vertices 0-1-...-(n-1)."""
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return graph_from_edges(n, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = set(g.edges)
    edges.update((u + g.n, v + g.n) for u, v in h.edges)
    return Graph(g.n + h.n, frozenset(edges))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph on ``vertices``, densely renumbered.

    The result's labels record the original vertex names so callers can
    trace dense indices back to the input graph.
    """
    kept = sorted(set(vertices))
    if any(v < 0 or v >= g.n for v in kept):
        raise ValueError("subgraph vertices out of range")
    index = {v: i for i, v in enumerate(kept)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    return Graph(len(kept), edges, tuple(g.label_of(v) for v in kept))


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, ordered by smallest member."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            mask = g.adjacency[v]
            for u in range(g.n):
                if mask >> u & 1 and not seen[u]:
                    seen[u] = True
                    stack.append(u)
        out.append(frozenset(comp))
    return out


def distance_matrix(g: Graph) -> list[list[float]]:
    """All-pairs shortest path lengths; ``math.inf`` for disconnected pairs."""
    dist = [[math.inf] * g.n for _ in range(g.n)]
    for s in range(g.n):
        row = dist[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                mask = g.adjacency[v]
                for u in range(g.n):
                    if mask >> u & 1 and row[u] == math.inf:
                        row[u] = d
                        nxt.append(u)
            frontier = nxt
    return dist


def eccentricities(g: Graph) -> list[float]:
    dist = distance_matrix(g)
    return [max(row) if row else 0 for row in dist]


def radius(g: Graph) -> float:
    ecc = eccentricities(g)
    return min(ecc) if ecc else 0


def diameter(g: Graph) -> float:
    ecc = eccentricities(g)
    return max(ecc) if ecc else 0


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def complement(g: Graph) -> Graph:
    """Complement of a simple graph (swap adjacency on distinct pairs)."""
    if not g.is_simple:
        raise LoopsNotAllowedError("complement is defined for simple graphs only")
    edges = frozenset(
        (u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)
    )
    return Graph(g.n, edges)


def path_length_of(g: Graph) -> int | None:
    """Length (edge count) if g is a path graph, else None. K1 counts as length 0."""
    if not g.is_simple or g.n == 0 or not is_connected(g):
        return None
    if g.n == 1:
        return 0
    degs = sorted(g.degree(v) for v in range(g.n))
    if g.n == 2:
        return 1 if len(g.edges) == 1 else None
    if degs[:2] == [1, 1] and all(d == 2 for d in degs[2:]):
        return g.n - 1
    return None


def is_complete(g: Graph) -> bool:
    return g.is_simple and len(g.edges) == g.n * (g.n - 1) // 2


def _degeneracy_order(g: Graph) -> list[int]:
    remaining = set(range(g.n))
    deg = {v: g.degree(v) for v in remaining}
    order = []
    while remaining:
        v = min(remaining, key=lambda x: (deg[x], x))
        order.append(v)
        remaining.remove(v)
        for u in remaining:
            if g.has_edge(u, v):
                deg[u] -= 1
    return order


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by branch and bound over a degeneracy order."""
    if not g.is_simple:
        raise LoopsNotAllowedError("chromatic number is defined for simple graphs")
    if g.n == 0:
        return 0
    if not g.edges:
        return 1
    # Color in reverse degeneracy order: most constrained vertices first.
    order = _degeneracy_order(g)[::-1]
    adj = g.adjacency
    pos_mask = [0] * g.n
    for i, v in enumerate(order):
        for j in range(i):
            if adj[v] >> order[j] & 1:
                pos_mask[i] |= 1 << j
    n = g.n
    colors = [0] * n
    best = n  # trivial upper bound

    def extend(i: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if i == n:
            best = used
            return
        taken = 0
        m = pos_mask[i]
        j = 0
        while m:
            if m & 1:
                taken |= 1 << colors[j]
            m >>= 1
            j += 1
        for c in range(used):
            if not taken >> c & 1:
                colors[i] = c
                extend(i + 1, used)
        if used + 1 < best:
            colors[i] = used
            extend(i + 1, used + 1)

    extend(0, 0)
    return best


@dataclass(frozen=True, eq=False)
class Relation:
    """Set of ordered pairs between two dense vertex universes."""

    domain_size: int
    image_size: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.domain_size < 0 or self.image_size < 0:
            raise ValueError("universe sizes must be non-negative")
        for x, b in self.pairs:
            if not (0 <= x < self.domain_size and 0 <= b < self.image_size):
                raise ValueError(f"pair ({x}, {b}) outside declared universes")

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return (
            self.domain_size == other.domain_size
            and self.image_size == other.image_size
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.domain_size, self.image_size, self.pairs))

    def __repr__(self):
        return (
            f"Relation({self.domain_size}x{self.image_size}, "
            f"{sorted(self.pairs)})"
        )

    def image_of(self, x: int) -> frozenset[int]:
        return frozenset(b for a, b in self.pairs if a == x)

    def preimage_of(self, b: int) -> frozenset[int]:
        return frozenset(a for a, c in self.pairs if c == b)

    @cached_property
    def domain_set(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.pairs)

    @cached_property
    def image_set(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    @property
    def has_full_domain(self) -> bool:
        return len(self.domain_set) == self.domain_size

    @property
    def has_full_image(self) -> bool:
        return len(self.image_set) == self.image_size

    @property
    def is_functional(self) -> bool:
        return len(self.domain_set) == len(self.pairs)

    @property
    def is_injective(self) -> bool:
        return len(self.image_set) == len(self.pairs)

    def column_masks(self) -> list[int]:
        """Pre-image bitmask for each target vertex."""
        cols = [0] * self.image_size
        for x, b in self.pairs:
            cols[b] |= 1 << x
        return cols

    def row_masks(self) -> list[int]:
        """Image bitmask for each source vertex."""
        rows = [0] * self.domain_size
        for x, b in self.pairs:
            rows[x] |= 1 << b
        return rows

    def transpose(self) -> Relation:
        return Relation(
            self.image_size,
            self.domain_size,
            frozenset((b, x) for x, b in self.pairs),
        )

    def compose(self, other: Relation) -> Relation:
        """Relational composition self followed by ``other``."""
        if self.image_size != other.domain_size:
            raise UniverseMismatchError(
                f"cannot compose {self.image_size}-image with "
                f"{other.domain_size}-domain relation"
            )
        rows = other.row_masks()
        pairs = set()
        for x, b in self.pairs:
            mask = rows[b]
            z = 0
            while mask:
                if mask & 1:
                    pairs.add((x, z))
                mask >>= 1
                z += 1
        return Relation(self.domain_size, other.image_size, frozenset(pairs))

    def union(self, other: Relation) -> Relation:
        if (self.domain_size, self.image_size) != (other.domain_size, other.image_size):
            raise UniverseMismatchError("union requires matching universes")
        return Relation(self.domain_size, self.image_size, self.pairs | other.pairs)


def relation_from_pairs(domain_size: int, image_size: int, pairs) -> Relation:
    return Relation(domain_size, image_size, frozenset(tuple(p) for p in pairs))


def identity_relation(n: int) -> Relation:
    return Relation(n, n, frozenset((x, x) for x in range(n)))


def transpose(rel: Relation) -> Relation:
    return rel.transpose()


def compose_rel(first: Relation, *rest: Relation) -> Relation:
    out = first
    for r in rest:
        out = out.compose(r)
    return out


@dataclass(frozen=True, eq=False)
class Partition:
    """Disjoint nonempty classes covering ``0..universe_size-1``."""

    universe_size: int
    classes: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("partition classes must be nonempty")
            if cls & seen:
                raise ValueError("partition classes must be disjoint")
            seen |= cls
        if seen != set(range(self.universe_size)):
            raise ValueError("partition classes must cover the universe")

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe_size == other.universe_size and set(self.classes) == set(
            other.classes
        )

    def __hash__(self):
        return hash((self.universe_size, frozenset(self.classes)))

    def class_of(self, v: int) -> int:
        for i, cls in enumerate(self.classes):
            if v in cls:
                return i
        raise ValueError(f"vertex {v} not in partition")


def partition_from_classes(universe_size: int, classes) -> Partition:
    """Normalize class order by smallest member."""
    ordered = tuple(sorted((frozenset(c) for c in classes), key=min))
    return Partition(universe_size, ordered)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Symmetric rational edge weights; absent entries weigh zero."""

    n: int
    weights: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        for u, v, w in self.weights:
            if not (0 <= u <= v < self.n):
                raise ValueError(f"weight entry ({u}, {v}) out of range")
            if w == 0:
                raise ValueError("zero weights must be omitted")

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and set(self.weights) == set(other.weights)

    def __hash__(self):
        return hash((self.n, frozenset(self.weights)))

    @cached_property
    def _table(self) -> dict[tuple[int, int], Fraction]:
        return {(u, v): w for u, v, w in self.weights}

    def weight(self, u: int, v: int) -> Fraction:
        key = (u, v) if u <= v else (v, u)
        return self._table.get(key, Fraction(0))

    def to_graph(self) -> Graph:
        """Boolean collapse: positive weight becomes an edge."""
        return Graph(self.n, frozenset((u, v) for u, v, w in self.weights if w > 0))


def weighted_graph(n: int, entries) -> WeightedGraph:
    """Build from a {(u, v): weight} mapping or iterable of (u, v, w)."""
    if hasattr(entries, "items"):
        entries = [(u, v, w) for (u, v), w in entries.items()]
    table: dict[tuple[int, int], Fraction] = {}
    for u, v, w in entries:
        key = (u, v) if u <= v else (v, u)
        w = Fraction(w)
        table[key] = table.get(key, Fraction(0)) + w
    items = tuple(
        sorted((u, v, w) for (u, v), w in table.items() if w != 0)
    )
    return WeightedGraph(n, items)


def unit_weights(g: Graph) -> WeightedGraph:
    return weighted_graph(g.n, {(u, v): Fraction(1) for u, v in g.edges})
