"""Shared test oracles, independent of the library's algorithms.

The naive solver filters every one of the 2^(n*m) relation bitmasks through
tables built by direct edge scans; the isomorphism oracle tries all vertex
permutations. These deliberately re-derive everything from definitions so
they can stand as the second route in every dual-route check.
"""

from __future__ import annotations

import random
from itertools import permutations

import numpy as np

import relgraph as rg


def naive_neighbor_table(g: rg.Graph) -> np.ndarray:
    tab = [0] * (1 << g.n)
    for mask in range(1 << g.n):
        acc = 0
        for u, v in g.edges:
            if mask >> u & 1:
                acc |= 1 << v
            if mask >> v & 1:
                acc |= 1 << u
        tab[mask] = acc
    return np.array(tab, dtype=np.int64)


def naive_solution_masks(g: rg.Graph, h: rg.Graph, weak: bool):
    """All solution bitmasks (bit b*n+x set for pair (x, b)) and the
    full-domain subset, by exhaustive filtering."""
    n, m = g.n, h.n
    if weak and not h.is_simple:
        empty = np.array([], dtype=np.int64)
        return empty, empty
    total = 1 << (n * m)
    rels = np.arange(total, dtype=np.int64)
    colmask = (1 << n) - 1
    cols = [(rels >> (b * n)) & colmask for b in range(m)]
    nbr = naive_neighbor_table(g)
    ok = np.ones(total, dtype=bool)
    for b in range(m):
        ok &= cols[b] != 0
    for b in range(m):
        for c in range(b, m):
            if b == c and weak:
                continue
            generated = (nbr[cols[b]] & cols[c]) != 0
            ok &= generated == h.has_edge(b, c)
    union = np.zeros(total, dtype=np.int64)
    for b in range(m):
        union |= cols[b]
    full = (union == colmask) if n else np.ones(total, dtype=bool)
    return rels[ok], rels[ok & full]


def relation_to_mask(rel: rg.Relation) -> int:
    acc = 0
    for x, b in rel.pairs:
        acc |= 1 << (b * rel.domain_size + x)
    return acc


def brute_isomorphic(g: rg.Graph, h: rg.Graph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    for perm in permutations(range(g.n)):
        if all(
            h.has_edge(perm[u], perm[v]) == g.has_edge(u, v)
            for u in range(g.n)
            for v in range(u, g.n)
        ):
            return True
    return False


def brute_hom_exists(g: rg.Graph, h: rg.Graph) -> bool:
    if g.n == 0:
        return True
    if h.n == 0:
        return False
    for images in _all_maps(g.n, h.n):
        if all(h.has_edge(images[u], images[v]) for u, v in g.edges):
            return True
    return False


def brute_surjective_hom_exists(g: rg.Graph, h: rg.Graph) -> bool:
    """Vertex- and edge-surjective homomorphism existence by brute force."""
    if g.n == 0:
        return h.n == 0
    target_edges = set(h.edges)
    for images in _all_maps(g.n, h.n):
        hit = set()
        ok = True
        for u, v in g.edges:
            a, b = images[u], images[v]
            if not h.has_edge(a, b):
                ok = False
                break
            hit.add((a, b) if a <= b else (b, a))
        if ok and len(set(images)) == h.n and hit == target_edges:
            return True
    return False


def _all_maps(n: int, m: int):
    images = [0] * n
    while True:
        yield tuple(images)
        i = 0
        while i < n:
            images[i] += 1
            if images[i] < m:
                break
            images[i] = 0
            i += 1
        if i == n:
            return


def random_graph(rng: random.Random, n: int, p: float = 0.5, loops: bool = False) -> rg.Graph:
    edges = []
    for u in range(n):
        for v in range(u if loops else u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return rg.graph_from_edges(n, edges)


def random_image_full_relation(rng: random.Random, n: int, m: int, extra: float = 0.25) -> rg.Relation:
    """Every target vertex gets at least one pre-image; extra pairs sprinkled."""
    pairs = set()
    for b in range(m):
        pairs.add((rng.randrange(n), b))
    for x in range(n):
        for b in range(m):
            if rng.random() < extra:
                pairs.add((x, b))
    return rg.relation_from_pairs(n, m, pairs)


def random_full_relation(rng: random.Random, n: int, m: int, extra: float = 0.25) -> rg.Relation:
    """Full domain and full image."""
    rel = random_image_full_relation(rng, n, m, extra)
    pairs = set(rel.pairs)
    for x in range(n):
        pairs.add((x, rng.randrange(m)))
    return rg.relation_from_pairs(n, m, pairs)

