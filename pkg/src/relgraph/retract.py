"""Retraction-style relations with identity restriction, and their fixpoints.

A retraction maps a graph onto an induced subgraph through a relation
containing the identity on that subgraph; the minimal targets coincide with
classical graph cores. Reversing direction (growing a graph out of a
subgraph) yields the coretract structure: the minimal generating subgraph
is unique up to isomorphism and computable greedily from the neighborhood
set system. Brute-force searches double-check both constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import apply_strong
from .core import (
    CapExceededError,
    Graph,
    Relation,
    disjoint_union,
    empty_graph,
    identity_relation,
    induced_subgraph,
)
from .solver import SolveQuery, search_with_pinned_columns, solve


def property_n(g: Graph) -> bool:
    """No vertex's open neighborhood is contained in another's."""
    adj = g.adjacency
    for x in range(g.n):
        for y in range(g.n):
            if x != y and adj[x] & ~adj[y] == 0:
                return False
    return True


def property_n_star(g: Graph) -> bool:
    """No neighborhood is a union of other vertices' neighborhoods.

    Greedy test: the union of all neighborhoods contained in N(x) is the
    largest candidate union, so comparing it against N(x) is exact. The
    covering family must be nonempty; a lone isolated vertex does not
    defeat itself.
    """
    adj = g.adjacency
    for x in range(g.n):
        union = 0
        any_contained = False
        for y in range(g.n):
            if y != x and adj[y] & ~adj[x] == 0:
                union |= adj[y]
                any_contained = True
        if any_contained and union == adj[x]:
            return False
    return True


def _identity_within(sub: list[int], rel: Relation) -> bool:
    return all((x, x) in rel.pairs for x in sub)


def is_retraction(g: Graph, sub, rel: Relation) -> bool:
    """Whether ``rel`` maps g onto its induced subgraph fixing that subgraph.

    ``rel`` lives on the full universe with pairs landing inside ``sub``;
    it must have full domain, contain the identity on ``sub``, and produce
    exactly the induced subgraph.
    """
    vs = sorted(set(sub))
    if any(v < 0 or v >= g.n for v in vs):
        raise ValueError("subgraph vertices out of range")
    if rel.domain_size != g.n or rel.image_size != g.n:
        raise ValueError("retraction relations live on the graph's own universe")
    inside = set(vs)
    if any(b not in inside for _, b in rel.pairs):
        return False
    if not rel.has_full_domain or not _identity_within(vs, rel):
        return False
    index = {v: i for i, v in enumerate(vs)}
    dense = Relation(g.n, len(vs), frozenset((x, index[b]) for x, b in rel.pairs))
    if not dense.has_full_image:
        return False
    return apply_strong(g, dense) == induced_subgraph(g, vs)


def is_coretraction(g: Graph, sub, rel: Relation) -> bool:
    """Whether ``rel`` grows g back out of its induced subgraph.

    Pairs run from ``sub`` over the full universe, the identity on ``sub``
    is contained, and applying the subgraph through ``rel`` reproduces g.
    """
    vs = sorted(set(sub))
    if any(v < 0 or v >= g.n for v in vs):
        raise ValueError("subgraph vertices out of range")
    if rel.domain_size != g.n or rel.image_size != g.n:
        raise ValueError("coretraction relations live on the graph's own universe")
    inside = set(vs)
    if any(x not in inside for x, _ in rel.pairs):
        return False
    if not _identity_within(vs, rel):
        return False
    index = {v: i for i, v in enumerate(vs)}
    dense = Relation(len(vs), g.n, frozenset((index[x], b) for x, b in rel.pairs))
    if not dense.has_full_image:
        return False
    return apply_strong(induced_subgraph(g, vs), dense) == g


@dataclass(frozen=True)
class RetractionWitness:
    """A verified retraction or coretraction onto/from ``sub``."""

    direction: str  # retraction | coretraction
    sub: frozenset[int]
    relation: Relation


def _functional_retraction(g: Graph, sub: tuple[int, ...]) -> dict[int, int] | None:
    """Identity-on-sub homomorphism g -> g[sub], by backtracking."""
    inside = set(sub)
    outside = [v for v in range(g.n) if v not in inside]
    image: dict[int, int] = {v: v for v in sub}

    def consistent(v: int, c: int) -> bool:
        if g.has_edge(v, v) and not g.has_edge(c, c):
            return False
        for u, w in image.items():
            if g.has_edge(v, u) and not g.has_edge(c, w):
                return False
        return True

    def place(i: int) -> bool:
        if i == len(outside):
            return True
        v = outside[i]
        for c in sub:
            if consistent(v, c):
                image[v] = c
                if place(i + 1):
                    return True
                del image[v]
        return False

    return dict(image) if place(0) else None


def graph_core(g: Graph, cap: int = 10) -> Graph:
    core, _ = graph_core_with_witness(g, cap=cap)
    return core


def graph_core_with_witness(
    g: Graph, cap: int = 10
) -> tuple[Graph, RetractionWitness]:
    """Smallest induced subgraph reachable by a retraction, with witness.

    Tries target vertex sets by increasing size then lexicographic order;
    minimal retractions are functional, so the search runs over
    identity-fixing homomorphisms. A loop vertex shortcuts the search:
    everything retracts onto it.
    """
    if g.n > cap:
        raise CapExceededError(f"core search capped at {cap} vertices, got {g.n}")
    loops = g.loop_vertices()
    if loops:
        o = loops[0]
        rel = Relation(g.n, g.n, frozenset((x, o) for x in range(g.n)))
        witness = RetractionWitness("retraction", frozenset({o}), rel)
        assert is_retraction(g, [o], rel)
        return induced_subgraph(g, [o]), witness
    if g.n == 0:
        return g, RetractionWitness(
            "retraction", frozenset(), Relation(0, 0, frozenset())
        )
    for size in range(1, g.n + 1):
        for sub in combinations(range(g.n), size):
            mapping = _functional_retraction(g, sub)
            if mapping is None:
                continue
            rel = Relation(
                g.n, g.n, frozenset((v, c) for v, c in sorted(mapping.items()))
            )
            assert rel.is_functional
            assert is_retraction(g, sub, rel)
            witness = RetractionWitness("retraction", frozenset(sub), rel)
            return induced_subgraph(g, sub), witness
    raise AssertionError("identity retraction must succeed at full size")


def _cocore_literal(g: Graph) -> list[int]:
    """One ascending pass; neighborhoods frozen, deleted entries zeroed.

    A vertex is dropped when its (original) neighborhood equals the union
    of the still-live contained neighborhoods.
    """
    alive = list(range(g.n))
    nbhd = {v: g.adjacency[v] for v in range(g.n)}
    for i in range(g.n):
        ni = nbhd[i]
        union = 0
        for j in alive:
            if j != i and nbhd[j] & ~ni == 0:
                union |= nbhd[j]
        if union == ni:
            alive.remove(i)
            nbhd[i] = 0
    return alive


def _cocore_fixpoint(g: Graph) -> list[int]:
    """Cleaned variant: neighborhoods recomputed inside the survivors,
    sweeps repeated until stable."""
    alive = list(range(g.n))
    changed = True
    while changed:
        changed = False
        for i in list(alive):
            mask = 0
            for v in alive:
                mask |= 1 << v
            nbhd = {v: g.adjacency[v] & mask for v in alive}
            ni = nbhd[i]
            union = 0
            for j in alive:
                if j != i and nbhd[j] & ~ni == 0:
                    union |= nbhd[j]
            if union == ni:
                alive.remove(i)
                changed = True
    return alive


def cocore(g: Graph, mode: str = "literal") -> Graph:
    if mode == "literal":
        core, _ = cocore_with_witness(g)
        return core
    if mode != "fixpoint":
        raise ValueError(f"unknown mode {mode!r}")
    if g.n == 0:
        return g
    isolated = set(g.isolated_vertices())
    if not isolated:
        return induced_subgraph(g, _cocore_fixpoint(g))
    rest = induced_subgraph(g, set(range(g.n)) - isolated)
    if rest.n == 0:
        return empty_graph(1)
    return disjoint_union(induced_subgraph(rest, _cocore_fixpoint(rest)), empty_graph(1))


def cocore_with_witness(g: Graph) -> tuple[Graph, RetractionWitness]:
    """Minimal generating subgraph plus a verified coretraction witness.

    Every deleted vertex's neighborhood is a union of surviving ones, so
    the witness relates each survivor to the deleted vertices whose
    neighborhoods contain its own, on top of the identity. Isolated
    vertices are split off and re-attached as one isolated vertex.
    """
    if g.n == 0:
        return g, RetractionWitness(
            "coretraction", frozenset(), Relation(0, 0, frozenset())
        )
    isolated = set(g.isolated_vertices())
    live = sorted(set(range(g.n)) - isolated)
    if not live:
        # all isolated: a single isolated vertex regenerates them
        keep = [0]
        pairs = {(0, v) for v in range(g.n)}
        rel = Relation(g.n, g.n, frozenset(pairs))
        core = induced_subgraph(g, keep)
        assert is_coretraction(g, keep, rel)
        return core, RetractionWitness("coretraction", frozenset(keep), rel)

    rest = induced_subgraph(g, live)
    alive_dense = _cocore_literal(rest)
    keep = sorted(live[i] for i in alive_dense)
    if isolated:
        keep.append(min(isolated))
    deleted = [v for v in range(g.n) if v not in set(keep)]
    adj = g.adjacency
    pairs = {(x, x) for x in keep}
    for d in deleted:
        if d in isolated:
            anchor = min(isolated)
            pairs.add((anchor, d))
            continue
        for y in keep:
            if y not in isolated and adj[y] and adj[y] & ~adj[d] == 0:
                pairs.add((y, d))
    rel = Relation(g.n, g.n, frozenset(pairs))
    core = induced_subgraph(g, keep)
    assert is_coretraction(g, keep, rel), "coretraction witness failed to validate"
    return core, RetractionWitness("coretraction", frozenset(keep), rel)


def cocore_oracle(g: Graph, cap: int = 7) -> Graph:
    """Exhaustive minimal coretract: scan induced subgraphs by size and
    lexicographic vertex set, deciding each by pinned-column search."""
    if g.n > cap:
        raise CapExceededError(f"oracle capped at {cap} vertices, got {g.n}")
    if g.n == 0:
        return g
    for size in range(1, g.n):
        for sub in combinations(range(g.n), size):
            index = {v: i for i, v in enumerate(sub)}
            required = [0] * g.n
            universe = [(1 << size) - 1] * g.n
            for v in sub:
                required[v] = 1 << index[v]
            found = search_with_pinned_columns(
                induced_subgraph(g, sub), g, required, universe=universe
            )
            if found is not None:
                return induced_subgraph(g, sub)
    return g  # the graph itself qualifies via the identity


def is_automorphism_relation(g: Graph, rel: Relation) -> bool:
    """Whether the relation is the graph of an adjacency-preserving bijection."""
    if rel.domain_size != g.n or rel.image_size != g.n:
        return False
    if not (
        rel.is_functional
        and rel.is_injective
        and rel.has_full_domain
        and rel.has_full_image
    ):
        return False
    image = dict(rel.pairs)
    return all(
        g.has_edge(u, v) == g.has_edge(image[u], image[v])
        for u in range(g.n)
        for v in range(u, g.n)
    )


def all_self_relations_are_automorphisms(
    g: Graph, verify: bool = False, enumeration_cap: int = 6
) -> bool:
    """Whether every self-solution of the graph's own equation is an
    automorphism; equivalent to containment-free neighborhoods.

    With ``verify=True`` the answer is cross-checked against the solver:
    positively by enumerating all self-solutions (the set is then just the
    automorphism group), negatively by exhibiting a non-functional
    solution built from a containment pair.
    """
    answer = property_n(g)
    if not verify:
        return answer
    if g.n > enumeration_cap:
        raise CapExceededError(
            f"verification capped at {enumeration_cap} vertices, got {g.n}"
        )
    if answer:
        solutions, _ = solve(SolveQuery(g, g, enumeration="all"))
        bad = [r for r in solutions.solutions if not is_automorphism_relation(g, r)]
        if bad:
            raise AssertionError(
                f"containment-free graph admits non-automorphism solution {bad[0]}"
            )
    else:
        pair = next(
            (x, y)
            for x in range(g.n)
            for y in range(g.n)
            if x != y and g.adjacency[x] & ~g.adjacency[y] == 0
        )
        rel = identity_relation(g.n).union(
            Relation(g.n, g.n, frozenset({pair}))
        )
        if apply_strong(g, rel) != g or is_automorphism_relation(g, rel):
            raise AssertionError("constructed counterexample failed to validate")
    return answer
