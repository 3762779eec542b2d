"""Thinness, relational equivalence, and minimum representatives.

Two graphs are strongly equivalent when one relation maps each onto the
other in both directions (the backward trip uses the transpose); this holds
exactly when their quotients by the equal-neighborhood relation are
isomorphic. The weak variant allows unrelated relations in the two
directions; its minimum-order representatives ("reduced forms") are
computed by a polynomial deletion algorithm and cross-checked against an
exhaustive search over candidate graphs and relation pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import apply_strong
from .core import (
    CapExceededError,
    Graph,
    Partition,
    Relation,
    compose_rel,
    disjoint_union,
    empty_graph,
    identity_relation,
    induced_subgraph,
    partition_from_classes,
)
from .generate import all_graphs, canonical_key, graph_of
from .solver import relation_exists


@dataclass(frozen=True)
class ThinQuotient:
    """Quotient of a graph by the equal-open-neighborhood relation.

    ``class_relation`` maps each vertex to its class; applying the quotient
    graph through its transpose reconstructs the source exactly, which the
    constructor path asserts.
    """

    source: Graph
    partition: Partition
    thin_graph: Graph
    class_relation: Relation


def thin_quotient(g: Graph) -> ThinQuotient:
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adjacency[v], []).append(v)
    classes = sorted((frozenset(vs) for vs in groups.values()), key=min)
    partition = partition_from_classes(g.n, classes)
    index = {}
    for i, cls in enumerate(partition.classes):
        for v in cls:
            index[v] = i
    k = len(partition.classes)
    edges = set()
    for u, v in g.edges:
        a, b = index[u], index[v]
        edges.add((a, b) if a <= b else (b, a))
    thin = Graph(k, frozenset(edges))
    rel = Relation(g.n, k, frozenset((v, index[v]) for v in range(g.n)))
    out = ThinQuotient(g, partition, thin, rel)
    assert apply_strong(thin, rel.transpose()) == g
    assert is_thin(thin)
    return out


def is_thin(g: Graph) -> bool:
    """No two vertices share an open neighborhood."""
    return len({g.adjacency[v] for v in range(g.n)}) == g.n


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """A vertex bijection preserving adjacency both ways, or None.

    Deterministic backtracking: source vertices in index order, candidate
    images in index order, pruned by (loop, degree) invariants.
    """
    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    n = g.n
    ga, ha = g.adjacency, h.adjacency

    def sig(adj, v):
        return (adj[v] >> v & 1, bin(adj[v]).count("1"))

    if sorted(sig(ga, v) for v in range(n)) != sorted(sig(ha, v) for v in range(n)):
        return None
    image = [-1] * n
    used = [False] * n

    def place(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or sig(ga, v) != sig(ha, w):
                continue
            ok = True
            for u in range(v):
                if bool(ga[v] >> u & 1) != bool(ha[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if place(v + 1):
                    return True
                used[w] = False
        return False

    return tuple(image) if place(0) else None


@dataclass(frozen=True)
class EquivalenceWitness:
    """Relations realizing an equivalence; strong witnesses are transposes."""

    kind: str  # strong | weak
    forward: Relation
    backward: Relation


def strongly_equivalent(g: Graph, h: Graph) -> EquivalenceWitness | None:
    """Witness with h = g*forward, g = h*transpose(forward), or None.

    Decided through the thin quotients; the witness threads the two class
    relations through an isomorphism of the quotients and is re-validated
    by application before being returned.
    """
    tq_g, tq_h = thin_quotient(g), thin_quotient(h)
    iso = find_isomorphism(tq_g.thin_graph, tq_h.thin_graph)
    if iso is None:
        return None
    k = tq_g.thin_graph.n
    iso_rel = Relation(k, k, frozenset((i, iso[i]) for i in range(k)))
    forward = compose_rel(tq_g.class_relation, iso_rel, tq_h.class_relation.transpose())
    backward = forward.transpose()
    assert apply_strong(g, forward) == h
    assert apply_strong(h, backward) == g
    return EquivalenceWitness("strong", forward, backward)


def _deletable(nbhd: dict[int, int], i: int, alive: list[int]) -> tuple[bool, list[int], int | None]:
    """Deletion test for the reduced-form algorithm on neighborhood masks.

    Vertex i goes when (1) its neighborhood is the union of the contained
    neighborhoods of other live vertices and (2) some other live vertex's
    neighborhood contains it. Returns (deletable, contributors, container).
    """
    ni = nbhd[i]
    union = 0
    contributors = []
    container = None
    for j in alive:
        if j == i:
            continue
        nj = nbhd[j]
        if nj & ~ni == 0:
            union |= nj
            contributors.append(j)
        if ni & ~nj == 0 and container is None:
            container = j
    return union == ni and container is not None, contributors, container


def _rcore_literal(g: Graph) -> list[int]:
    """Single ascending pass over the original neighborhood table.

    Deleted vertices get empty neighborhoods but linger inside other
    vertices' stale sets, exactly as the one-pass formulation reads.
    """
    alive = list(range(g.n))
    nbhd = {v: g.adjacency[v] for v in range(g.n)}
    for i in range(g.n):
        ok, _, _ = _deletable(nbhd, i, alive)
        if ok:
            alive.remove(i)
            nbhd[i] = 0
    return alive


def rcore(g: Graph, mode: str = "fixpoint") -> Graph:
    """Minimum-order representative of the weak equivalence class.

    Isolated vertices are split off first and re-attached as a single
    isolated vertex. ``mode="literal"`` runs the one-pass variant with
    stale neighborhoods instead of the recomputed fixpoint.
    """
    if mode == "fixpoint":
        core, _, _ = rcore_with_witness(g)
        return core
    if mode != "literal":
        raise ValueError(f"unknown mode {mode!r}")
    if g.n == 0:
        return g
    isolated = set(g.isolated_vertices())
    if not isolated:
        return induced_subgraph(g, _rcore_literal(g))
    rest = induced_subgraph(g, set(range(g.n)) - isolated)
    if rest.n == 0:
        return empty_graph(1)
    alive = _rcore_literal(rest)
    return disjoint_union(induced_subgraph(rest, alive), empty_graph(1))


def rcore_with_witness(g: Graph) -> tuple[Graph, Relation, Relation]:
    """Reduced form plus full-domain relations to and from it.

    Returns (core, forward, backward) with core = g*forward and
    g = core*backward; both directions are asserted before returning.
    """
    if g.n == 0:
        empty = Relation(0, 0, frozenset())
        return g, empty, empty

    isolated = set(g.isolated_vertices())
    live = sorted(set(range(g.n)) - isolated)
    base = induced_subgraph(g, live)
    core_part, fwd, bwd = _rcore_witness_no_isolated(base)

    if not isolated:
        assert apply_strong(g, fwd) == core_part
        assert apply_strong(core_part, bwd) == g
        return core_part, fwd, bwd

    # Re-attach a single isolated vertex; all stripped vertices collapse
    # onto it and it fans back out over them.
    core = disjoint_union(core_part, empty_graph(1))
    iso_core = core_part.n
    fwd_pairs = {(live[x], b) for x, b in fwd.pairs}
    fwd_pairs |= {(v, iso_core) for v in isolated}
    bwd_pairs = {(a, live[y]) for a, y in bwd.pairs}
    bwd_pairs |= {(iso_core, v) for v in isolated}
    forward = Relation(g.n, core.n, frozenset(fwd_pairs))
    backward = Relation(core.n, g.n, frozenset(bwd_pairs))
    assert apply_strong(g, forward) == core
    assert apply_strong(core, backward) == g
    return core, forward, backward


def _rcore_witness_no_isolated(g: Graph) -> tuple[Graph, Relation, Relation]:
    if g.n == 0:
        empty = Relation(0, 0, frozenset())
        return g, empty, empty
    alive = list(range(g.n))
    current = g
    forward = identity_relation(g.n)
    backward = identity_relation(g.n)
    changed = True
    while changed:
        changed = False
        for orig in list(alive):
            i = alive.index(orig)
            nbhd = {v: current.adjacency[v] for v in range(current.n)}
            ok, contributors, container = _deletable(
                nbhd, i, list(range(current.n))
            )
            if not ok:
                continue
            smaller = induced_subgraph(current, set(range(current.n)) - {i})
            dense = lambda w: w - 1 if w > i else w
            shrink = Relation(
                current.n,
                smaller.n,
                frozenset(
                    {(w, dense(w)) for w in range(current.n) if w != i}
                    | {(i, dense(container))}
                ),
            )
            grow = Relation(
                smaller.n,
                current.n,
                frozenset(
                    {(dense(w), w) for w in range(current.n) if w != i}
                    | {(dense(y), i) for y in contributors}
                ),
            )
            assert apply_strong(current, shrink) == smaller
            assert apply_strong(smaller, grow) == current
            forward = forward.compose(shrink)
            backward = grow.compose(backward)
            current = smaller
            alive.pop(i)
            changed = True
    return current, forward, backward


def rcore_oracle(g: Graph, cap: int = 7) -> Graph:
    """Exhaustive minimum-order weak-equivalence representative.

    Scans candidate graphs by increasing order (canonical generation order
    within each size, loops allowed only when the input has them) and
    returns the first admitting full-domain relations in both directions.
    Independent of the deletion algorithm: existence is decided by the
    equation solver.
    """
    if g.n > cap:
        raise CapExceededError(f"oracle capped at {cap} vertices, got {g.n}")
    if g.n == 0:
        return g
    loops = not g.is_simple
    for k in range(1, g.n):
        for cand in all_graphs(k, loops=loops):
            if relation_exists(g, cand, full_domain=True) and relation_exists(
                cand, g, full_domain=True
            ):
                return cand
    # No strictly smaller representative: the input itself (trivially
    # equivalent to itself) has minimum order; return its canonical form.
    return graph_of(canonical_key(g))


def weakly_equivalent(g: Graph, h: Graph) -> EquivalenceWitness | None:
    """Witness with h = g*forward and g = h*backward, or None.

    Decided through isomorphism of the reduced forms; the witnesses are
    composed from the deletion traces of both graphs and re-validated.
    """
    core_g, fwd_g, bwd_g = rcore_with_witness(g)
    core_h, fwd_h, bwd_h = rcore_with_witness(h)
    iso = find_isomorphism(core_g, core_h)
    if iso is None:
        return None
    k = core_g.n
    iso_rel = Relation(k, k, frozenset((i, iso[i]) for i in range(k)))
    forward = compose_rel(fwd_g, iso_rel, bwd_h)
    backward = compose_rel(fwd_h, iso_rel.transpose(), bwd_g)
    assert apply_strong(g, forward) == h
    assert apply_strong(h, backward) == g
    return EquivalenceWitness("weak", forward, backward)
